#ifndef MAXDIM_BITSET_HPP
#define MAXDIM_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace maxdim {

// Dense bitmap over a fixed universe. This is the workhorse behind every
// subgroup membership set; intersections and popcounts dominate the search
// engines, so everything here stays word-wise.
class DenseBitset {
 public:
  DenseBitset() = default;

  explicit DenseBitset(std::size_t nbits, bool fill = false)
      : nbits_(nbits), words_((nbits + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
    if (fill) trim();
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    assert(i < nbits_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) {
    assert(i < nbits_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(std::size_t i) {
    assert(i < nbits_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  void fill() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  DenseBitset& operator&=(DenseBitset const& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  DenseBitset& operator|=(DenseBitset const& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }

  // this \ o
  DenseBitset& and_not(DenseBitset const& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend DenseBitset operator&(DenseBitset a, DenseBitset const& b) { return a &= b; }
  friend DenseBitset operator|(DenseBitset a, DenseBitset const& b) { return a |= b; }

  bool operator==(DenseBitset const& o) const {
    return nbits_ == o.nbits_ && words_ == o.words_;
  }
  bool operator!=(DenseBitset const& o) const { return !(*this == o); }

  bool subset_of(DenseBitset const& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  bool intersects(DenseBitset const& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  // Deterministic total order used for canonical sorting of subgroup sets.
  bool word_lex_less(DenseBitset const& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != o.words_[k]) return words_[k] < o.words_[k];
    return false;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t find_first() const { return find_next(0); }

  // first set bit with index >= from, or npos
  std::size_t find_next(std::size_t from) const {
    if (from >= nbits_) return npos;
    std::size_t k = from >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return npos;
      w = words_[k];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f((k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_ids() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ nbits_);
  }

 private:
  void trim() {
    if (nbits_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct DenseBitsetHash {
  std::size_t operator()(DenseBitset const& b) const { return b.hash(); }
};

}  // namespace maxdim

#endif  // MAXDIM_BITSET_HPP
