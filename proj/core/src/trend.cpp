#include "leapsim/trend.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace leapsim {
namespace {

// Boyer-Moore over n elements addressed through get(i). Candidate pass plus
// verification pass; every element read bumps the counter.
template <typename GetFn>
std::optional<Delta> majority_scan(std::size_t n, GetFn&& get, std::uint64_t& reads) {
    if (n == 0) {
        return std::nullopt;
    }
    Delta candidate = 0;
    std::size_t votes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Delta d = get(i);
        ++reads;
        if (votes == 0) {
            candidate = d;
            votes = 1;
        } else if (d == candidate) {
            ++votes;
        } else {
            --votes;
        }
    }
    // A true majority always leaves at least one surplus vote.
    if (votes == 0) {
        return std::nullopt;
    }
    std::size_t occurrences = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (get(i) == candidate) {
            ++occurrences;
        }
        ++reads;
    }
    if (occurrences >= n / 2 + 1) {
        return candidate;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Delta> majority(std::span<const Delta> window) {
    std::uint64_t reads = 0;
    return majority_scan(window.size(), [&](std::size_t i) { return window[i]; }, reads);
}

TrendResult find_trend(const AccessHistory& history, unsigned n_split) {
    if (n_split == 0) {
        throw std::invalid_argument("find_trend: n_split must be at least 1");
    }
    TrendResult result;
    const std::size_t count = history.size();
    if (count == 0) {
        return result;
    }
    const std::uint64_t budget = 4 * static_cast<std::uint64_t>(history.capacity());
    std::size_t w = std::max<std::size_t>(1, history.capacity() / n_split);
    for (;;) {
        std::size_t effective = std::min(w, count);
        // The full window always runs last, so an intermediate window that
        // would not leave room for it inside the linear scan budget is
        // skipped. Power-of-two capacities never trigger this.
        if (effective < count &&
            result.elements_scanned + 2 * static_cast<std::uint64_t>(effective + count) >
                budget) {
            effective = count;
        }
        auto m = majority_scan(
            effective, [&](std::size_t i) { return history.at_from_head(i); },
            result.elements_scanned);
        if (m) {
            result.trend = m;
            result.window_used = static_cast<unsigned>(effective);
            break;
        }
        if (effective == count) {
            break;  // the window already covered everything stored
        }
        w *= 2;
    }
    assert(result.elements_scanned <= budget);
    return result;
}

}  // namespace leapsim
