#include "leapsim/trace.hpp"

#include "leapsim/access_history.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

namespace leapsim {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out, base);
    return ec == std::errc{} && ptr == last;
}

bool parse_i64(std::string_view text, std::int64_t& out) {
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (begin <= s.size()) {
        const std::size_t end = s.find(sep, begin);
        if (end == std::string_view::npos) {
            parts.push_back(s.substr(begin));
            break;
        }
        parts.push_back(s.substr(begin, end - begin));
        begin = end + 1;
    }
    return parts;
}

void check_page_bound(std::uint64_t page) {
    if (page > kMaxPageId) {
        throw std::invalid_argument("page id exceeds the 63-bit bound");
    }
}

std::uint64_t stride_page_at(std::uint64_t start, std::int64_t stride, std::uint64_t i) {
    const __int128 page = static_cast<__int128>(start) + static_cast<__int128>(stride) * i;
    if (page < 0 || page > static_cast<__int128>(kMaxPageId)) {
        throw std::invalid_argument("stride walks outside the valid page range");
    }
    return static_cast<std::uint64_t>(page);
}

}  // namespace

TraceParseError::TraceParseError(std::size_t line_number, std::string line,
                                 const std::string& what)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + what + " [" + line + "]"),
      line_number_(line_number),
      line_(std::move(line)) {}

Trace parse_trace(std::istream& in) {
    Trace trace;
    trace.meta.name = "file";
    std::string line;
    std::size_t line_no = 0;
    bool have_tick = false;
    std::uint64_t prev_tick = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (body.front() == '#') {
            std::string_view rest = trim(body.substr(1));
            auto header = [&](std::string_view key) -> std::optional<std::string_view> {
                if (rest.substr(0, key.size()) == key) {
                    return trim(rest.substr(key.size()));
                }
                return std::nullopt;
            };
            if (auto v = header("name=")) {
                trace.meta.name = std::string(*v);
            } else if (auto v = header("params=")) {
                trace.meta.params = std::string(*v);
            } else if (auto v = header("seed=")) {
                if (!parse_u64(*v, trace.meta.seed)) {
                    throw TraceParseError(line_no, line, "bad seed header");
                }
            } else if (auto v = header("segments=")) {
                for (auto part : split(*v, ',')) {
                    std::uint64_t b = 0;
                    if (!parse_u64(part, b)) {
                        throw TraceParseError(line_no, line, "bad segments header");
                    }
                    trace.meta.segments.push_back(b);
                }
            }
            continue;
        }
        auto fields = split(body, ',');
        if (fields.size() < 3 || fields.size() > 4) {
            throw TraceParseError(line_no, line, "expected tick,process_id,page_id[,kind]");
        }
        PageAccessEvent ev;
        if (!parse_u64(fields[0], ev.tick)) {
            throw TraceParseError(line_no, line, "bad tick");
        }
        if (!parse_u64(fields[1], ev.process_id)) {
            throw TraceParseError(line_no, line, "bad process_id");
        }
        if (!parse_u64(fields[2], ev.page_id)) {
            throw TraceParseError(line_no, line, "bad page_id");
        }
        if (ev.page_id > kMaxPageId) {
            throw TraceParseError(line_no, line, "page_id out of range");
        }
        if (fields.size() == 4) {
            const std::string_view kind = trim(fields[3]);
            if (kind == "r" || kind == "read") {
                ev.kind = AccessKind::read;
            } else if (kind == "w" || kind == "write") {
                ev.kind = AccessKind::write;
            } else {
                throw TraceParseError(line_no, line, "bad kind (want r/read/w/write)");
            }
        }
        if (have_tick && ev.tick < prev_tick) {
            throw TraceParseError(line_no, line, "tick regression");
        }
        prev_tick = ev.tick;
        have_tick = true;
        trace.events.push_back(ev);
    }
    return trace;
}

Trace parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open trace file: " + path);
    }
    return parse_trace(in);
}

void write_trace(const Trace& trace, std::ostream& out) {
    out << "# name=" << trace.meta.name << '\n';
    out << "# params=" << trace.meta.params << '\n';
    out << "# seed=" << trace.meta.seed << '\n';
    if (!trace.meta.segments.empty()) {
        out << "# segments=";
        for (std::size_t i = 0; i < trace.meta.segments.size(); ++i) {
            out << (i ? "," : "") << trace.meta.segments[i];
        }
        out << '\n';
    }
    for (const auto& ev : trace.events) {
        out << ev.tick << ',' << ev.process_id << ',' << ev.page_id;
        if (ev.kind == AccessKind::write) {
            out << ",w";
        }
        out << '\n';
    }
}

void write_trace_file(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    write_trace(trace, out);
}

// --- Generators ------------------------------------------------------------

Trace gen_sequential(std::uint64_t n, std::uint64_t start, std::uint64_t pid) {
    if (n == 0) {
        throw std::invalid_argument("gen_sequential: n must be at least 1");
    }
    check_page_bound(start);
    stride_page_at(start, 1, n - 1);  // bound check for the last page
    Trace trace;
    trace.events.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        trace.events.push_back({i, pid, start + i, AccessKind::read});
    }
    std::ostringstream spec;
    spec << "seq:n=" << n << ",start=" << start << ",pid=" << pid;
    trace.meta = {"sequential", spec.str(), 0, {}};
    return trace;
}

Trace gen_stride(std::uint64_t n, std::uint64_t start, std::int64_t stride, std::uint64_t pid) {
    if (n == 0) {
        throw std::invalid_argument("gen_stride: n must be at least 1");
    }
    if (stride == 0) {
        throw std::invalid_argument("gen_stride: stride must be nonzero");
    }
    check_page_bound(start);
    Trace trace;
    trace.events.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        trace.events.push_back({i, pid, stride_page_at(start, stride, i), AccessKind::read});
    }
    std::ostringstream spec;
    spec << "stride:n=" << n << ",start=" << start << ",k=" << stride << ",pid=" << pid;
    trace.meta = {"stride", spec.str(), 0, {}};
    return trace;
}

Trace gen_random(std::uint64_t n, std::uint64_t page_range, std::uint64_t seed,
                 std::uint64_t pid) {
    if (n == 0) {
        throw std::invalid_argument("gen_random: n must be at least 1");
    }
    if (page_range == 0) {
        throw std::invalid_argument("gen_random: page_range must be nonzero");
    }
    check_page_bound(page_range - 1);
    Trace trace;
    trace.events.reserve(n);
    std::mt19937_64 engine(seed);
    for (std::uint64_t i = 0; i < n; ++i) {
        trace.events.push_back({i, pid, engine() % page_range, AccessKind::read});
    }
    std::ostringstream spec;
    spec << "random:n=" << n << ",range=" << page_range << ",seed=" << seed << ",pid=" << pid;
    trace.meta = {"random", spec.str(), seed, {}};
    return trace;
}

Trace gen_interleaved(const std::vector<InterleavedStream>& streams, std::uint64_t n_total) {
    if (streams.size() < 2) {
        throw std::invalid_argument("gen_interleaved: need at least two streams");
    }
    if (n_total == 0) {
        throw std::invalid_argument("gen_interleaved: n_total must be at least 1");
    }
    Trace trace;
    trace.events.reserve(n_total);
    for (std::uint64_t i = 0; i < n_total; ++i) {
        const auto& s = streams[i % streams.size()];
        const std::uint64_t step = i / streams.size();
        trace.events.push_back({i, s.pid, stride_page_at(s.start, s.stride, step),
                                AccessKind::read});
    }
    std::ostringstream spec;
    spec << "interleave:n=" << n_total << ",streams=";
    for (std::size_t i = 0; i < streams.size(); ++i) {
        spec << (i ? "|" : "") << streams[i].start << ':' << streams[i].stride << ':'
             << streams[i].pid;
    }
    trace.meta = {"interleaved", spec.str(), 0, {}};
    return trace;
}

Trace gen_mixed(const std::vector<SegmentSpec>& segments) {
    if (segments.empty()) {
        throw std::invalid_argument("gen_mixed: need at least one segment");
    }
    Trace trace;
    std::vector<std::string> parts;
    for (const auto& seg : segments) {
        Trace piece = std::visit(
            [](const auto& s) -> Trace {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, SequentialSpec>) {
                    return gen_sequential(s.n, s.start, s.pid);
                } else if constexpr (std::is_same_v<T, StrideSpec>) {
                    return gen_stride(s.n, s.start, s.stride, s.pid);
                } else {
                    return gen_random(s.n, s.page_range, s.seed, s.pid);
                }
            },
            seg);
        const std::uint64_t base = trace.events.size();
        if (base > 0) {
            trace.meta.segments.push_back(base);
        }
        for (auto ev : piece.events) {
            ev.tick += base;
            trace.events.push_back(ev);
        }
        parts.push_back(piece.meta.params);
    }
    std::ostringstream spec;
    spec << "mixed:";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        spec << (i ? "+" : "") << parts[i];
    }
    trace.meta.name = "mixed";
    trace.meta.params = spec.str();
    trace.meta.seed = 0;
    return trace;
}

// --- Generator spec mini-language -------------------------------------------

namespace {

std::map<std::string, std::string, std::less<>> parse_kv(std::string_view body,
                                                         const std::string& spec) {
    std::map<std::string, std::string, std::less<>> kv;
    if (trim(body).empty()) {
        return kv;
    }
    for (auto part : split(body, ',')) {
        part = trim(part);
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw std::invalid_argument("bad generator spec (want key=value): " + spec);
        }
        kv[std::string(trim(part.substr(0, eq)))] = std::string(trim(part.substr(eq + 1)));
    }
    return kv;
}

std::uint64_t kv_u64(const std::map<std::string, std::string, std::less<>>& kv,
                     std::string_view key, std::optional<std::uint64_t> fallback,
                     const std::string& spec) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) {
            return *fallback;
        }
        throw std::invalid_argument("generator spec missing " + std::string(key) + ": " + spec);
    }
    std::uint64_t v = 0;
    if (!parse_u64(it->second, v)) {
        throw std::invalid_argument("bad value for " + std::string(key) + ": " + spec);
    }
    return v;
}

std::int64_t kv_i64(const std::map<std::string, std::string, std::less<>>& kv,
                    std::string_view key, std::optional<std::int64_t> fallback,
                    const std::string& spec) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) {
            return *fallback;
        }
        throw std::invalid_argument("generator spec missing " + std::string(key) + ": " + spec);
    }
    std::int64_t v = 0;
    if (!parse_i64(it->second, v)) {
        throw std::invalid_argument("bad value for " + std::string(key) + ": " + spec);
    }
    return v;
}

SegmentSpec parse_segment(std::string_view text, const std::string& full) {
    text = trim(text);
    const std::size_t colon = text.find(':');
    const std::string_view kind = colon == std::string_view::npos ? text : text.substr(0, colon);
    const std::string_view body =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto kv = parse_kv(body, full);
    if (kind == "seq") {
        return SequentialSpec{kv_u64(kv, "n", std::nullopt, full),
                              kv_u64(kv, "start", 0, full), kv_u64(kv, "pid", 1, full)};
    }
    if (kind == "stride") {
        return StrideSpec{kv_u64(kv, "n", std::nullopt, full), kv_u64(kv, "start", 0, full),
                          kv_i64(kv, "k", std::nullopt, full), kv_u64(kv, "pid", 1, full)};
    }
    if (kind == "random") {
        return RandomSpec{kv_u64(kv, "n", std::nullopt, full),
                          kv_u64(kv, "range", std::nullopt, full), kv_u64(kv, "seed", 0, full),
                          kv_u64(kv, "pid", 1, full)};
    }
    throw std::invalid_argument("unknown segment generator '" + std::string(kind) + "': " + full);
}

}  // namespace

Trace generate_from_spec(const std::string& spec) {
    const std::string_view text = trim(spec);
    const std::size_t colon = text.find(':');
    const std::string_view kind = colon == std::string_view::npos ? text : text.substr(0, colon);
    const std::string_view body =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "mixed") {
        std::vector<SegmentSpec> segments;
        for (auto part : split(body, '+')) {
            segments.push_back(parse_segment(part, spec));
        }
        return gen_mixed(segments);
    }
    if (kind == "interleave") {
        auto kv = parse_kv(body, spec);
        const std::uint64_t n = kv_u64(kv, "n", std::nullopt, spec);
        auto it = kv.find("streams");
        if (it == kv.end()) {
            throw std::invalid_argument("interleave spec missing streams: " + spec);
        }
        std::vector<InterleavedStream> streams;
        for (auto part : split(it->second, '|')) {
            auto fields = split(part, ':');
            InterleavedStream s;
            if (fields.size() != 3 || !parse_u64(fields[0], s.start) ||
                !parse_i64(fields[1], s.stride) || !parse_u64(fields[2], s.pid)) {
                throw std::invalid_argument("bad interleave stream (want start:k:pid): " + spec);
            }
            streams.push_back(s);
        }
        return gen_interleaved(streams, n);
    }
    if (kind == "seq" || kind == "stride" || kind == "random") {
        return std::visit([](const auto& s) -> Trace {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SequentialSpec>) {
                return gen_sequential(s.n, s.start, s.pid);
            } else if constexpr (std::is_same_v<T, StrideSpec>) {
                return gen_stride(s.n, s.start, s.stride, s.pid);
            } else {
                return gen_random(s.n, s.page_range, s.seed, s.pid);
            }
        }, parse_segment(text, spec));
    }
    throw std::invalid_argument("unknown generator '" + std::string(kind) + "': " + spec);
}

Trace regenerate(const TraceMetadata& meta) {
    if (meta.params.empty()) {
        throw std::invalid_argument("metadata has no generator params to replay");
    }
    return generate_from_spec(meta.params);
}

// --- Pattern classification --------------------------------------------------

PatternBreakdown classify_patterns(const Trace& trace, unsigned x) {
    if (x < 2) {
        throw std::invalid_argument("classify_patterns: window length must be at least 2");
    }
    // Per-process delta sequences, in fault order.
    std::map<std::uint64_t, std::vector<Delta>> deltas;
    std::map<std::uint64_t, std::uint64_t> last_page;
    std::map<std::uint64_t, std::uint64_t> counts;
    for (const auto& ev : trace.events) {
        auto it = last_page.find(ev.process_id);
        if (it != last_page.end()) {
            deltas[ev.process_id].push_back(static_cast<Delta>(ev.page_id) -
                                            static_cast<Delta>(it->second));
            it->second = ev.page_id;
        } else {
            last_page.emplace(ev.process_id, ev.page_id);
        }
        ++counts[ev.process_id];
    }

    std::uint64_t sequential = 0;
    std::uint64_t stride = 0;
    std::uint64_t other = 0;
    const std::size_t span = x - 1;  // deltas per window
    for (const auto& [pid, ds] : deltas) {
        if (counts[pid] < x) {
            continue;
        }
        for (std::size_t i = 0; i + span <= ds.size(); ++i) {
            bool all_plus_one = true;
            bool constant = true;
            for (std::size_t j = 0; j < span; ++j) {
                if (ds[i + j] != 1) {
                    all_plus_one = false;
                }
                if (ds[i + j] != ds[i]) {
                    constant = false;
                }
            }
            if (all_plus_one) {
                ++sequential;
            } else if (constant) {
                ++stride;
            } else {
                ++other;
            }
        }
    }

    const std::uint64_t total = sequential + stride + other;
    if (total == 0) {
        throw std::invalid_argument("insufficient events");
    }
    PatternBreakdown out;
    out.window_length = x;
    out.windows = total;
    out.sequential_frac = static_cast<double>(sequential) / static_cast<double>(total);
    out.stride_frac = static_cast<double>(stride) / static_cast<double>(total);
    out.other_frac = static_cast<double>(other) / static_cast<double>(total);
    return out;
}

}  // namespace leapsim
