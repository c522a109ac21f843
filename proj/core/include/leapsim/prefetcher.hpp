#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "leapsim/access_history.hpp"
#include "leapsim/trace.hpp"
#include "leapsim/trend.hpp"

namespace leapsim {

/// What a prefetcher wants brought in alongside one demand fault.
/// Candidates are ordered, contain no duplicates, never contain the demand
/// page, and never exceed window_size_used entries.
struct PrefetchDecision {
    std::uint64_t demand_page = 0;
    std::vector<std::uint64_t> candidates;
    unsigned window_size_used = 0;
};

// --- Leap: majority-trend prefetcher -------------------------------------

/// Per-process adaptive-window state.
///
/// The window starts at pw_max so that a fresh process ramps down smoothly
/// on patternless traffic instead of never issuing a first prefetch.
struct LeapState {
    unsigned pw_max;
    unsigned pw_prev;  // last prefetch window size
    std::uint64_t c_hit = 0;
    std::optional<Delta> last_trend;  // most recent nonzero majority delta

    explicit LeapState(unsigned pw_max_ = 8) : pw_max(pw_max_), pw_prev(pw_max_) {}
};

/// Window sizing: with no hits since the last decision the window is 1 when
/// the fault follows the current trend and 0 otherwise; with hits it is
/// c_hit+1 rounded up to a power of two. The result is capped at pw_max and
/// never drops below half the previous window. Resets c_hit and records the
/// result as pw_prev.
unsigned leap_window_size(LeapState& state, bool follows_trend);

/// One fault decision. Precondition: record(history, page) has already been
/// applied for this fault, so the newest delta belongs to it.
///
/// Trend detection runs on every fault, including ones whose window size is
/// zero; prefetching stays suspended until a new trend shows up, but the
/// trend cache keeps tracking pattern shifts so it can resume. With a
/// nonzero majority the candidates step along it; otherwise they step
/// speculatively along the last known trend (+1 when none was ever seen).
/// Candidates outside [0, kMaxPageId] are dropped.
PrefetchDecision leap_on_fault(LeapState& state, const AccessHistory& history,
                               std::uint64_t page, unsigned n_split);

/// Credits one prefetched-cache hit toward the next window decision.
void leap_on_prefetch_hit(LeapState& state);

// --- Baselines ------------------------------------------------------------

/// Next-N-Line: the N pages following the faulted one, every time.
PrefetchDecision next_n_line(std::uint64_t page, unsigned n);

/// Stride baseline with confidence-doubling depth.
struct StrideState {
    std::optional<std::uint64_t> last_page;
    std::optional<Delta> last_stride;
    unsigned depth = 0;
    unsigned depth_max = 8;
};

/// Depth doubles (from 1) when the stride repeats and halves when it
/// breaks; candidates follow the current stride for depth steps.
PrefetchDecision stride_baseline(StrideState& state, std::uint64_t page);

/// Read-ahead baseline modeled on block-granular readahead: window doubles
/// (2..8) while faults stay consecutive and resets otherwise.
struct ReadaheadState {
    std::optional<std::uint64_t> prev_page;
    unsigned window = 0;
    static constexpr unsigned kBlockPages = 8;
    static constexpr unsigned kWindowMax = 8;
};

/// Candidates are the remainder of the 8-aligned block holding the faulted
/// page, capped at the current window. A fault that breaks the consecutive
/// run resets the window but still reads at minimum granularity (one page
/// of its block), mirroring block-unit fills on the slow path.
PrefetchDecision readahead_baseline(ReadaheadState& state, std::uint64_t page);

// --- Uniform interface for the simulator ----------------------------------

class Prefetcher {
public:
    virtual ~Prefetcher() = default;
    virtual PrefetchDecision on_fault(std::uint64_t process_id, std::uint64_t page,
                                      std::uint64_t tick) = 0;
    virtual void on_prefetch_hit(std::uint64_t process_id, std::uint64_t page) = 0;
    virtual std::string_view name() const = 0;
};

enum class PrefetcherKind { leap, readahead, next_n_line, stride, none };

std::string_view to_string(PrefetcherKind kind);
std::optional<PrefetcherKind> prefetcher_from_string(std::string_view name);

struct PrefetcherConfig {
    PrefetcherKind kind = PrefetcherKind::leap;
    std::size_t h_size = AccessHistory::kDefaultCapacity;
    unsigned n_split = 2;
    unsigned pw_max = 8;
    unsigned next_n = 8;
};

/// All implementations keep their state per process id.
std::unique_ptr<Prefetcher> make_prefetcher(const PrefetcherConfig& config);

}  // namespace leapsim
