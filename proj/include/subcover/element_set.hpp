#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace subcover {

// Subset of group elements as a fixed-width bitmask with cached size.
// Width is the order of the ambient group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int width)
      : width_(width), size_(0), blocks_((width + 63) / 64, 0) {}

  int width() const { return width_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(int i) const { return (blocks_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i) {
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(blocks_[i >> 6] & bit)) {
      blocks_[i >> 6] |= bit;
      ++size_;
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size_);
    for (int i = 0; i < width_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  ElementSet unite(const ElementSet& o) const {
    ElementSet r(width_);
    int count = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      r.blocks_[b] = blocks_[b] | o.blocks_[b];
      count += std::popcount(r.blocks_[b]);
    }
    r.size_ = count;
    return r;
  }

  ElementSet intersect(const ElementSet& o) const {
    ElementSet r(width_);
    int count = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      r.blocks_[b] = blocks_[b] & o.blocks_[b];
      count += std::popcount(r.blocks_[b]);
    }
    r.size_ = count;
    return r;
  }

  int union_size(const ElementSet& o) const {
    int count = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      count += std::popcount(blocks_[b] | o.blocks_[b]);
    return count;
  }

  bool subset_of(const ElementSet& o) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b] & ~o.blocks_[b]) return false;
    return true;
  }

  bool operator==(const ElementSet& o) const {
    return width_ == o.width_ && blocks_ == o.blocks_;
  }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }

  // Orders sets by their ascending member sequences (so {0,1} < {0,2}).
  // Total order used for canonical lattice ids.
  bool member_lex_less(const ElementSet& o) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b] == o.blocks_[b]) continue;
      std::uint64_t diff = blocks_[b] ^ o.blocks_[b];
      std::uint64_t low = diff & (~diff + 1);
      return blocks_[b] & low;  // the set holding the lowest differing element wins
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(width_);
    for (std::uint64_t b : blocks_)
      h = h * 1099511628211ULL + static_cast<std::size_t>(b);
    return h;
  }

 private:
  int width_ = 0;
  int size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace subcover
