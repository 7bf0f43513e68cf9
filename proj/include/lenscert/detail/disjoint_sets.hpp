#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace lenscert::detail {

// Union-find with path halving. The smaller index always becomes the root,
// so find() returns the smallest member of a class.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const { return parent_.size(); }

  std::size_t count_classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace lenscert::detail
