#include "leapsim/prefetcher.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace leapsim {
namespace {

// page + i*stride when it lands inside [0, kMaxPageId].
std::optional<std::uint64_t> offset_page(std::uint64_t page, Delta stride, unsigned i) {
    const __int128 p = static_cast<__int128>(page) + static_cast<__int128>(stride) * i;
    if (p < 0 || p > static_cast<__int128>(kMaxPageId)) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(p);
}

void push_stride_candidates(PrefetchDecision& d, std::uint64_t page, Delta stride,
                            unsigned count) {
    for (unsigned i = 1; i <= count; ++i) {
        if (auto p = offset_page(page, stride, i)) {
            d.candidates.push_back(*p);
        }
    }
}

}  // namespace

unsigned leap_window_size(LeapState& state, bool follows_trend) {
    std::uint64_t raw = 0;
    if (state.c_hit == 0) {
        raw = follows_trend ? 1 : 0;
    } else {
        raw = std::bit_ceil(state.c_hit + 1);
    }
    unsigned size = static_cast<unsigned>(std::min<std::uint64_t>(raw, state.pw_max));
    if (size < state.pw_prev / 2) {
        size = state.pw_prev / 2;  // shrink smoothly instead of suspending outright
    }
    state.c_hit = 0;
    state.pw_prev = size;
    return size;
}

PrefetchDecision leap_on_fault(LeapState& state, const AccessHistory& history,
                               std::uint64_t page, unsigned n_split) {
    PrefetchDecision decision{page, {}, 0};
    const Delta current = history.empty() ? 0 : history.at_from_head(0);
    const bool follows = state.last_trend && current == *state.last_trend;
    const unsigned size = leap_window_size(state, follows);
    decision.window_size_used = size;

    // Detection runs even while prefetching is suspended; otherwise a shift
    // to a new pattern could never be noticed and prefetching would never
    // resume.
    const TrendResult found = find_trend(history, n_split);
    const bool have_trend = found.trend.has_value() && *found.trend != 0;
    if (have_trend) {
        state.last_trend = *found.trend;
    }
    if (size == 0) {
        return decision;
    }
    // A zero majority (page repeats) generates nothing useful; fall back to
    // the last known trend, or +1 if none was ever seen.
    const Delta stride = have_trend ? *found.trend : state.last_trend.value_or(1);
    push_stride_candidates(decision, page, stride, size);
    return decision;
}

void leap_on_prefetch_hit(LeapState& state) { ++state.c_hit; }

PrefetchDecision next_n_line(std::uint64_t page, unsigned n) {
    if (n == 0) {
        throw std::invalid_argument("next_n_line: n must be at least 1");
    }
    PrefetchDecision decision{page, {}, n};
    push_stride_candidates(decision, page, 1, n);
    return decision;
}

PrefetchDecision stride_baseline(StrideState& state, std::uint64_t page) {
    PrefetchDecision decision{page, {}, 0};
    if (state.last_page) {
        const Delta stride = static_cast<Delta>(page) - static_cast<Delta>(*state.last_page);
        if (state.last_stride && stride == *state.last_stride) {
            state.depth = state.depth == 0 ? 1 : std::min(state.depth * 2, state.depth_max);
        } else {
            state.depth /= 2;
        }
        state.last_stride = stride;
        decision.window_size_used = state.depth;
        if (stride != 0) {
            push_stride_candidates(decision, page, stride, state.depth);
        }
    }
    state.last_page = page;
    return decision;
}

PrefetchDecision readahead_baseline(ReadaheadState& state, std::uint64_t page) {
    PrefetchDecision decision{page, {}, 0};
    if (state.prev_page && page == *state.prev_page + 1) {
        state.window = std::min(std::max(state.window * 2, 2u), ReadaheadState::kWindowMax);
    } else {
        state.window = 0;
    }
    state.prev_page = page;

    // Reads stay confined to the block holding the fault; a broken run
    // still pulls the minimum one-page granule of its block.
    const unsigned cap = std::max(state.window, 1u);
    decision.window_size_used = cap;
    const std::uint64_t block_end =
        (page / ReadaheadState::kBlockPages + 1) * ReadaheadState::kBlockPages;
    for (std::uint64_t p = page + 1;
         p < block_end && p <= kMaxPageId && decision.candidates.size() < cap; ++p) {
        decision.candidates.push_back(p);
    }
    return decision;
}

// --- Interface wrappers -----------------------------------------------------

namespace {

class LeapPrefetcher final : public Prefetcher {
public:
    LeapPrefetcher(std::size_t h_size, unsigned n_split, unsigned pw_max)
        : h_size_(h_size), n_split_(n_split), pw_max_(pw_max) {}

    PrefetchDecision on_fault(std::uint64_t pid, std::uint64_t page, std::uint64_t) override {
        auto& proc = process(pid);
        proc.history.record(page);  // the fault's own delta joins detection
        return leap_on_fault(proc.state, proc.history, page, n_split_);
    }

    void on_prefetch_hit(std::uint64_t pid, std::uint64_t) override {
        leap_on_prefetch_hit(process(pid).state);
    }

    std::string_view name() const override { return "leap"; }

private:
    struct PerProcess {
        AccessHistory history;
        LeapState state;
        PerProcess(std::size_t h_size, unsigned pw_max) : history(h_size), state(pw_max) {}
    };

    PerProcess& process(std::uint64_t pid) {
        auto it = procs_.find(pid);
        if (it == procs_.end()) {
            it = procs_.emplace(pid, PerProcess(h_size_, pw_max_)).first;
        }
        return it->second;
    }

    std::size_t h_size_;
    unsigned n_split_;
    unsigned pw_max_;
    std::unordered_map<std::uint64_t, PerProcess> procs_;
};

class ReadaheadPrefetcher final : public Prefetcher {
public:
    PrefetchDecision on_fault(std::uint64_t pid, std::uint64_t page, std::uint64_t) override {
        return readahead_baseline(states_[pid], page);
    }
    void on_prefetch_hit(std::uint64_t, std::uint64_t) override {}
    std::string_view name() const override { return "readahead"; }

private:
    std::unordered_map<std::uint64_t, ReadaheadState> states_;
};

class NextNLinePrefetcher final : public Prefetcher {
public:
    explicit NextNLinePrefetcher(unsigned n) : n_(n) {}
    PrefetchDecision on_fault(std::uint64_t, std::uint64_t page, std::uint64_t) override {
        return next_n_line(page, n_);
    }
    void on_prefetch_hit(std::uint64_t, std::uint64_t) override {}
    std::string_view name() const override { return "nextn"; }

private:
    unsigned n_;
};

class StridePrefetcher final : public Prefetcher {
public:
    explicit StridePrefetcher(unsigned depth_max) : depth_max_(depth_max) {}
    PrefetchDecision on_fault(std::uint64_t pid, std::uint64_t page, std::uint64_t) override {
        auto it = states_.find(pid);
        if (it == states_.end()) {
            StrideState fresh;
            fresh.depth_max = depth_max_;
            it = states_.emplace(pid, fresh).first;
        }
        return stride_baseline(it->second, page);
    }
    void on_prefetch_hit(std::uint64_t, std::uint64_t) override {}
    std::string_view name() const override { return "stride"; }

private:
    unsigned depth_max_;
    std::unordered_map<std::uint64_t, StrideState> states_;
};

class NonePrefetcher final : public Prefetcher {
public:
    PrefetchDecision on_fault(std::uint64_t, std::uint64_t page, std::uint64_t) override {
        return PrefetchDecision{page, {}, 0};
    }
    void on_prefetch_hit(std::uint64_t, std::uint64_t) override {}
    std::string_view name() const override { return "none"; }
};

}  // namespace

std::string_view to_string(PrefetcherKind kind) {
    switch (kind) {
        case PrefetcherKind::leap: return "leap";
        case PrefetcherKind::readahead: return "readahead";
        case PrefetcherKind::next_n_line: return "nextn";
        case PrefetcherKind::stride: return "stride";
        case PrefetcherKind::none: return "none";
    }
    return "?";
}

std::optional<PrefetcherKind> prefetcher_from_string(std::string_view name) {
    if (name == "leap") return PrefetcherKind::leap;
    if (name == "readahead") return PrefetcherKind::readahead;
    if (name == "nextn") return PrefetcherKind::next_n_line;
    if (name == "stride") return PrefetcherKind::stride;
    if (name == "none") return PrefetcherKind::none;
    return std::nullopt;
}

std::unique_ptr<Prefetcher> make_prefetcher(const PrefetcherConfig& config) {
    if (config.h_size == 0) {
        throw std::invalid_argument("prefetcher config: h_size must be at least 1");
    }
    if (config.n_split == 0) {
        throw std::invalid_argument("prefetcher config: n_split must be at least 1");
    }
    switch (config.kind) {
        case PrefetcherKind::leap:
            return std::make_unique<LeapPrefetcher>(config.h_size, config.n_split,
                                                    config.pw_max);
        case PrefetcherKind::readahead:
            return std::make_unique<ReadaheadPrefetcher>();
        case PrefetcherKind::next_n_line:
            return std::make_unique<NextNLinePrefetcher>(config.next_n);
        case PrefetcherKind::stride:
            return std::make_unique<StridePrefetcher>(config.pw_max);
        case PrefetcherKind::none:
            return std::make_unique<NonePrefetcher>();
    }
    throw std::invalid_argument("unknown prefetcher kind");
}

}  // namespace leapsim
