#ifndef MAXDIM_PERM_HPP
#define MAXDIM_PERM_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"

namespace maxdim {

using Point = std::uint16_t;

// Permutation of {0..degree-1}, stored as the image array.
// Products compose right to left: (a*b)(x) = a(b(x)), so groups of
// permutations act on points from the left.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    validate();
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> v(degree);
    std::iota(v.begin(), v.end(), Point{0});
    return Permutation(std::move(v));
  }

  std::size_t degree() const { return images_.size(); }

  Point operator[](std::size_t i) const { return images_[i]; }

  std::vector<Point> const& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(Permutation const& a, Permutation const& b) {
    std::vector<Point> v(a.degree());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.images_[b.images_[i]];
    Permutation p;
    p.images_ = std::move(v);
    return p;
  }

  Permutation inverse() const {
    std::vector<Point> v(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) v[images_[i]] = static_cast<Point>(i);
    Permutation p;
    p.images_ = std::move(v);
    return p;
  }

  bool operator==(Permutation const& o) const { return images_ == o.images_; }

 private:
  void validate() const {
    std::vector<bool> seen(images_.size(), false);
    for (auto p : images_) {
      if (p >= images_.size() || seen[p])
        throw InvalidPermutation("image array is not a bijection on the point set");
      seen[p] = true;
    }
  }

  std::vector<Point> images_;
};

}  // namespace maxdim

#endif  // MAXDIM_PERM_HPP
