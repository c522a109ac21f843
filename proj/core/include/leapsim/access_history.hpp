#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leapsim {

/// Signed difference between two consecutive faulted page numbers.
using Delta = std::int64_t;

/// Per-process fixed-capacity ring of page-address deltas.
///
/// Each record() stores the delta between the new page and the previous one
/// (0 for the very first access). Once the ring is full the oldest delta is
/// overwritten. The head always points at the most recent entry.
class AccessHistory {
public:
    static constexpr std::size_t kDefaultCapacity = 32;

    explicit AccessHistory(std::size_t capacity = kDefaultCapacity);

    /// Appends the delta for page_id and returns it.
    Delta record(std::uint64_t page_id);

    std::size_t capacity() const { return slots_.size(); }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    std::optional<std::uint64_t> last_page() const { return last_page_; }
    std::uint64_t total_recorded() const { return total_; }

    /// i-th delta counting back from the newest entry (i = 0 is the newest).
    /// Precondition: i < size().
    Delta at_from_head(std::size_t i) const;

    /// Up to w deltas, newest first. Clamps w to size().
    std::vector<Delta> recent(std::size_t w) const;

    /// Debug dump, one "t<i>: <delta>" line per retained entry, oldest first.
    /// Indices are absolute record counts, so they keep advancing after the
    /// ring wraps.
    std::string dump() const;

private:
    std::vector<Delta> slots_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
    std::uint64_t total_ = 0;
    std::optional<std::uint64_t> last_page_;
};

}  // namespace leapsim
