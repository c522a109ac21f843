#include "leapsim/access_history.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace leapsim {

AccessHistory::AccessHistory(std::size_t capacity) : slots_(capacity) {
    if (capacity == 0) {
        throw std::invalid_argument("AccessHistory capacity must be at least 1");
    }
}

Delta AccessHistory::record(std::uint64_t page_id) {
    Delta delta = 0;
    if (last_page_) {
        delta = static_cast<Delta>(page_id) - static_cast<Delta>(*last_page_);
    }
    if (total_ > 0) {
        head_ = (head_ + 1) % slots_.size();
    }
    slots_[head_] = delta;
    if (count_ < slots_.size()) {
        ++count_;
    }
    ++total_;
    last_page_ = page_id;
    return delta;
}

Delta AccessHistory::at_from_head(std::size_t i) const {
    assert(i < count_);
    const std::size_t cap = slots_.size();
    return slots_[(head_ + cap - i) % cap];
}

std::vector<Delta> AccessHistory::recent(std::size_t w) const {
    std::vector<Delta> out;
    const std::size_t take = std::min(w, count_);
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back(at_from_head(i));
    }
    return out;
}

std::string AccessHistory::dump() const {
    std::ostringstream os;
    const std::uint64_t first = total_ - count_;
    for (std::size_t j = 0; j < count_; ++j) {
        os << 't' << (first + j) << ": " << at_from_head(count_ - 1 - j) << '\n';
    }
    return os.str();
}

}  // namespace leapsim
