#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "leapsim/access_history.hpp"

namespace leapsim {

/// Outcome of a trend search over an access history.
struct TrendResult {
    /// Majority delta, when some window had one.
    std::optional<Delta> trend;
    /// Size of the window that produced the majority (0 when none).
    unsigned window_used = 0;
    /// Number of element reads this call performed. Bounded by
    /// 4 * capacity: every window is scanned at most twice and the window
    /// sizes form a doubling series that sums to less than 2 * capacity.
    std::uint64_t elements_scanned = 0;
};

/// Boyer-Moore majority vote over a window of deltas.
///
/// Returns the value occupying at least floor(w/2)+1 slots, if any.
/// One candidate pass plus one verification pass: at most 2w element reads
/// and constant auxiliary state. Empty windows yield nullopt.
std::optional<Delta> majority(std::span<const Delta> window);

/// Searches for a majority delta in windows anchored at the history head.
///
/// The first window holds capacity/n_split entries (floored, minimum 1);
/// each subsequent window doubles. Windows are clamped to the number of
/// stored entries, and the search stops after the first window that covers
/// everything stored has been ruled out. Returns the first verified
/// majority together with the window size that produced it.
TrendResult find_trend(const AccessHistory& history, unsigned n_split);

}  // namespace leapsim
