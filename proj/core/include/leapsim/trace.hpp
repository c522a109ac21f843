#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace leapsim {

/// Largest valid page number. Pages fit in 63 bits so that any delta
/// between two pages is representable as a signed 64-bit value.
inline constexpr std::uint64_t kMaxPageId = (std::uint64_t{1} << 63) - 1;

enum class AccessKind : std::uint8_t { read, write };

/// One page fault: logical time, owning process, page number.
struct PageAccessEvent {
    std::uint64_t tick = 0;
    std::uint64_t process_id = 0;
    std::uint64_t page_id = 0;
    AccessKind kind = AccessKind::read;

    bool operator==(const PageAccessEvent&) const = default;
};

/// Provenance of a trace. For generated traces, params holds the canonical
/// generator spec string, so replaying the metadata regenerates the trace
/// byte for byte.
struct TraceMetadata {
    std::string name;                     // "sequential", "stride", ..., or "file"
    std::string params;                   // canonical generator spec, empty for files
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> segments;  // mixed-trace boundaries (event indices)

    bool operator==(const TraceMetadata&) const = default;
};

struct Trace {
    std::vector<PageAccessEvent> events;
    TraceMetadata meta;

    bool operator==(const Trace&) const = default;
};

/// Parse failure with the offending line attached.
class TraceParseError : public std::runtime_error {
public:
    TraceParseError(std::size_t line_number, std::string line, const std::string& what);
    std::size_t line_number() const { return line_number_; }
    const std::string& line() const { return line_; }

private:
    std::size_t line_number_;
    std::string line_;
};

/// Reads the line-oriented trace format:
///   tick,process_id,page_id[,kind]
/// Unsigned fields accept a 0x prefix for hex. Lines starting with '#' are
/// comments (metadata header lines "# name=", "# params=", "# seed=" and
/// "# segments=" are recognized and restored); blank lines are ignored.
/// Throws TraceParseError on malformed lines, tick regression, or page ids
/// beyond kMaxPageId.
Trace parse_trace(std::istream& in);
Trace parse_trace_file(const std::string& path);

/// Emits the same format with a '#'-prefixed metadata header.
/// parse_trace(write_trace(t)) == t for every generated trace.
void write_trace(const Trace& trace, std::ostream& out);
void write_trace_file(const Trace& trace, const std::string& path);

// --- Synthetic workload generators -------------------------------------

Trace gen_sequential(std::uint64_t n, std::uint64_t start, std::uint64_t pid);
Trace gen_stride(std::uint64_t n, std::uint64_t start, std::int64_t stride, std::uint64_t pid);
Trace gen_random(std::uint64_t n, std::uint64_t page_range, std::uint64_t seed,
                 std::uint64_t pid = 1);

struct InterleavedStream {
    std::uint64_t start = 0;
    std::int64_t stride = 1;
    std::uint64_t pid = 1;
};

/// Round-robin interleave of per-stream stride sequences. Requires at
/// least two streams.
Trace gen_interleaved(const std::vector<InterleavedStream>& streams, std::uint64_t n_total);

struct SequentialSpec {
    std::uint64_t n = 0;
    std::uint64_t start = 0;
    std::uint64_t pid = 1;
};
struct StrideSpec {
    std::uint64_t n = 0;
    std::uint64_t start = 0;
    std::int64_t stride = 1;
    std::uint64_t pid = 1;
};
struct RandomSpec {
    std::uint64_t n = 0;
    std::uint64_t page_range = 0;
    std::uint64_t seed = 0;
    std::uint64_t pid = 1;
};
using SegmentSpec = std::variant<SequentialSpec, StrideSpec, RandomSpec>;

/// Concatenates segments with continuous ticks. Metadata records the
/// segment boundaries.
Trace gen_mixed(const std::vector<SegmentSpec>& segments);

/// Builds a trace from the generator spec mini-language:
///   seq:n=N[,start=S][,pid=P]
///   stride:n=N,k=K[,start=S][,pid=P]
///   random:n=N,range=R[,seed=S][,pid=P]
///   interleave:n=N,streams=START:K:PID[|START:K:PID...]
///   mixed:SPEC+SPEC[+SPEC...]          (segments may be seq/stride/random)
/// Throws std::invalid_argument on malformed specs.
Trace generate_from_spec(const std::string& spec);

/// Replays metadata (name, params, seed) back into the identical trace.
Trace regenerate(const TraceMetadata& meta);

// --- Pattern classification ---------------------------------------------

/// Aggregate window classification over the per-process fault sequences.
struct PatternBreakdown {
    unsigned window_length = 0;
    double sequential_frac = 0.0;
    double stride_frac = 0.0;
    double other_frac = 0.0;
    std::uint64_t windows = 0;  // total windows classified
};

/// Slides windows of X consecutive faults over each process's subsequence.
/// A window is sequential when all consecutive deltas are +1, stride when
/// all deltas equal some constant d other than +1, other otherwise.
/// Requires X >= 2; throws std::invalid_argument("insufficient events")
/// when no process has at least X events.
PatternBreakdown classify_patterns(const Trace& trace, unsigned x);

}  // namespace leapsim
