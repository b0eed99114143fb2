#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "cca/rational.hpp"

namespace cca {

// A set of item indices, kept sorted and duplicate-free. The lexicographic
// order on the sorted sequences is the canonical total order used wherever a
// deterministic iteration or final tie-break is required.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<int> items) : items_(items) { canonicalize(); }
  explicit Bundle(std::vector<int> items) : items_(std::move(items)) { canonicalize(); }

  static Bundle single(int item) { return Bundle({item}); }

  const std::vector<int>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  bool contains(int item) const {
    return std::binary_search(items_.begin(), items_.end(), item);
  }

  bool intersects(const Bundle& o) const {
    auto a = items_.begin();
    auto b = o.items_.begin();
    while (a != items_.end() && b != o.items_.end()) {
      if (*a == *b) return true;
      if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
    return false;
  }

  bool subset_of(const Bundle& o) const {
    return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end());
  }

  int max_item() const { return items_.empty() ? -1 : items_.back(); }

  friend bool operator==(const Bundle& a, const Bundle& b) { return a.items_ == b.items_; }
  friend bool operator!=(const Bundle& a, const Bundle& b) { return !(a == b); }
  friend bool operator<(const Bundle& a, const Bundle& b) { return a.items_ < b.items_; }

 private:
  void canonicalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    if (!items_.empty() && items_.front() < 0) throw InputError("negative item index in bundle");
  }
  std::vector<int> items_;
};

using Prices = std::vector<Money>;

inline Money price_of(const Bundle& s, const Prices& prices) {
  Money total = 0;
  for (int j : s.items()) {
    if (j < 0 || static_cast<std::size_t>(j) >= prices.size())
      throw InputError("item index out of range in price lookup");
    total += prices[static_cast<std::size_t>(j)];
  }
  return total;
}

}  // namespace cca
