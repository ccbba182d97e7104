#ifndef MAXDIM_GROUP_HPP
#define MAXDIM_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "maxdim/bitset.hpp"
#include "maxdim/errors.hpp"
#include "maxdim/perm.hpp"

namespace maxdim {

using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = static_cast<ElementId>(-1);

// A concretely enumerated finite permutation group.
//
// Elements are discovered by breadth-first search from the identity,
// multiplying on the right by the generators in the given order; the
// resulting ElementIds are therefore reproducible for a fixed generator
// list. Everything observable is immutable after construction, so groups
// can be shared freely across threads.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<Permutation> generators, std::uint32_t cap = 50'000)
      : gens_(std::move(generators)) {
    if (gens_.empty()) throw InvalidPermutation("generator list is empty");
    degree_ = static_cast<std::uint32_t>(gens_[0].degree());
    if (degree_ == 0) throw InvalidPermutation("degree zero");
    for (auto const& g : gens_)
      if (g.degree() != degree_) throw InvalidPermutation("generators have mixed degrees");
    enumerate(cap);
    build_inverses();
    build_orders();
    if (n_ <= kMulTableMaxOrder && std::uint64_t{n_} * n_ * degree_ <= (1ull << 31))
      build_mul_table();
  }

  FiniteGroup(FiniteGroup const&) = delete;
  FiniteGroup& operator=(FiniteGroup const&) = delete;

  std::uint32_t degree() const { return degree_; }
  std::uint32_t order() const { return n_; }
  ElementId identity() const { return 0; }
  std::size_t generator_count() const { return gens_.size(); }
  std::vector<Permutation> const& generators() const { return gens_; }
  ElementId generator_id(std::size_t j) const { return gen_ids_[j]; }
  std::vector<ElementId> const& generator_ids() const { return gen_ids_; }

  std::span<Point const> images(ElementId x) const {
    return {flat_.data() + std::size_t{x} * degree_, degree_};
  }

  Permutation permutation(ElementId x) const {
    auto im = images(x);
    return Permutation(std::vector<Point>(im.begin(), im.end()));
  }

  ElementId find(std::span<Point const> im) const { return probe(im.data()); }

  ElementId find(Permutation const& p) const {
    if (p.degree() != degree_) return kNoElement;
    return probe(p.images().data());
  }

  ElementId mul(ElementId a, ElementId b) const {
    if (!mul_table_.empty()) return mul_table_[std::size_t{a} * n_ + b];
    thread_local std::vector<Point> scratch;
    scratch.resize(degree_);
    Point const* pa = flat_.data() + std::size_t{a} * degree_;
    Point const* pb = flat_.data() + std::size_t{b} * degree_;
    for (std::uint32_t i = 0; i < degree_; ++i) scratch[i] = pa[pb[i]];
    return probe(scratch.data());
  }

  ElementId inv(ElementId a) const { return inv_[a]; }

  ElementId conj(ElementId g, ElementId x) const { return mul(mul(g, x), inv_[g]); }

  std::uint32_t element_order(ElementId x) const { return orders_[x]; }

  // BFS factorization: element = bfs_parent * generator(bfs_generator);
  // the identity has parent kNoElement.
  ElementId bfs_parent(ElementId x) const { return bfs_parent_[x]; }
  std::uint32_t bfs_generator(ElementId x) const { return bfs_gen_[x]; }

  DenseBitset all_bits() const { return DenseBitset(n_, true); }

  // Conjugacy classes, each sorted, ordered by smallest member; computed
  // once on demand (thread-safe via call_once).
  std::vector<std::vector<ElementId>> const& conjugacy_classes() const {
    std::call_once(classes_once_, [this] { compute_classes(); });
    return classes_;
  }

  std::uint32_t class_size_of(ElementId x) const {
    conjugacy_classes();
    return class_size_[x];
  }

  // id map x -> g x g^-1
  std::vector<ElementId> conjugation_map(ElementId g) const {
    std::vector<ElementId> m(n_);
    for (ElementId x = 0; x < n_; ++x) m[x] = conj(g, x);
    return m;
  }

 private:
  static constexpr std::uint32_t kMulTableMaxOrder = 2048;

  void enumerate(std::uint32_t cap) {
    if (cap < 1) throw CapExceeded("element cap must be >= 1");
    rehash(256);
    auto id = Permutation::identity(degree_);
    push_element(id.images().data());
    bfs_parent_.push_back(kNoElement);
    bfs_gen_.push_back(0);

    std::vector<Point> scratch(degree_);
    for (ElementId x = 0; x < n_; ++x) {
      for (std::uint32_t j = 0; j < gens_.size(); ++j) {
        Point const* px = flat_.data() + std::size_t{x} * degree_;
        Permutation const& g = gens_[j];
        for (std::uint32_t i = 0; i < degree_; ++i) scratch[i] = px[g[i]];
        if (probe(scratch.data()) == kNoElement) {
          if (n_ >= cap)
            throw CapExceeded("group order exceeds cap " + std::to_string(cap));
          push_element(scratch.data());
          bfs_parent_.push_back(x);
          bfs_gen_.push_back(j);
        }
      }
    }
    gen_ids_.resize(gens_.size());
    for (std::uint32_t j = 0; j < gens_.size(); ++j)
      gen_ids_[j] = probe(gens_[j].images().data());
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, -1);
    slots_mask_ = capacity - 1;
    for (ElementId x = 0; x < n_; ++x) {
      std::size_t k = hash_images(flat_.data() + std::size_t{x} * degree_) & slots_mask_;
      while (slots_[k] >= 0) k = (k + 1) & slots_mask_;
      slots_[k] = static_cast<std::int64_t>(x);
    }
  }

  void push_element(Point const* images) {
    if (2 * std::size_t{n_ + 1} > slots_.size()) rehash(slots_.size() * 4);
    std::size_t k = hash_images(images) & slots_mask_;
    while (slots_[k] >= 0) k = (k + 1) & slots_mask_;
    slots_[k] = static_cast<std::int64_t>(n_);
    flat_.insert(flat_.end(), images, images + degree_);
    ++n_;
  }

  ElementId probe(Point const* images) const {
    std::size_t k = hash_images(images) & slots_mask_;
    while (true) {
      std::int64_t s = slots_[k];
      if (s < 0) return kNoElement;
      Point const* cand = flat_.data() + static_cast<std::size_t>(s) * degree_;
      bool eq = true;
      for (std::uint32_t i = 0; i < degree_; ++i)
        if (cand[i] != images[i]) {
          eq = false;
          break;
        }
      if (eq) return static_cast<ElementId>(s);
      k = (k + 1) & slots_mask_;
    }
  }

  std::size_t hash_images(Point const* images) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t i = 0; i < degree_; ++i) {
      h ^= images[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  void build_inverses() {
    inv_.resize(n_);
    std::vector<Point> scratch(degree_);
    for (ElementId x = 0; x < n_; ++x) {
      Point const* px = flat_.data() + std::size_t{x} * degree_;
      for (std::uint32_t i = 0; i < degree_; ++i) scratch[px[i]] = static_cast<Point>(i);
      inv_[x] = probe(scratch.data());
    }
  }

  void build_orders() {
    orders_.assign(n_, 0);
    orders_[0] = 1;
    std::vector<Point> scratch(degree_);
    for (ElementId x = 1; x < n_; ++x) {
      if (orders_[x]) continue;
      std::vector<ElementId> chain;  // x, x^2, ... until identity
      ElementId y = x;
      while (y != 0) {
        chain.push_back(y);
        Point const* py = flat_.data() + std::size_t{y} * degree_;
        Point const* px = flat_.data() + std::size_t{x} * degree_;
        for (std::uint32_t i = 0; i < degree_; ++i) scratch[i] = py[px[i]];
        y = probe(scratch.data());
      }
      std::uint32_t o = static_cast<std::uint32_t>(chain.size()) + 1;
      for (std::uint32_t k = 0; k < chain.size(); ++k)
        if (!orders_[chain[k]]) orders_[chain[k]] = o / std::gcd(o, k + 1);
    }
  }

  void build_mul_table() {
    mul_table_.resize(std::size_t{n_} * n_);
    std::vector<Point> scratch(degree_);
    for (ElementId a = 0; a < n_; ++a) {
      Point const* pa = flat_.data() + std::size_t{a} * degree_;
      for (ElementId b = 0; b < n_; ++b) {
        Point const* pb = flat_.data() + std::size_t{b} * degree_;
        for (std::uint32_t i = 0; i < degree_; ++i) scratch[i] = pa[pb[i]];
        mul_table_[std::size_t{a} * n_ + b] = probe(scratch.data());
      }
    }
  }

  void compute_classes() const {
    std::vector<std::uint32_t> cls(n_, static_cast<std::uint32_t>(-1));
    std::vector<std::vector<ElementId>> classes;
    for (ElementId x = 0; x < n_; ++x) {
      if (cls[x] != static_cast<std::uint32_t>(-1)) continue;
      std::uint32_t c = static_cast<std::uint32_t>(classes.size());
      std::vector<ElementId> orbit{x};
      cls[x] = c;
      for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (auto g : gen_ids_) {
          ElementId y = conj(g, orbit[k]);
          if (cls[y] == static_cast<std::uint32_t>(-1)) {
            cls[y] = c;
            orbit.push_back(y);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      classes.push_back(std::move(orbit));
    }
    class_size_.resize(n_);
    for (auto const& cl : classes)
      for (auto x : cl) class_size_[x] = static_cast<std::uint32_t>(cl.size());
    classes_ = std::move(classes);
  }

  std::uint32_t degree_ = 0;
  std::uint32_t n_ = 0;
  std::vector<Permutation> gens_;
  std::vector<ElementId> gen_ids_;
  std::vector<Point> flat_;
  std::vector<std::int64_t> slots_;
  std::size_t slots_mask_ = 0;
  std::vector<ElementId> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<ElementId> bfs_parent_;
  std::vector<std::uint32_t> bfs_gen_;
  std::vector<std::uint32_t> mul_table_;

  mutable std::once_flag classes_once_;
  mutable std::vector<std::vector<ElementId>> classes_;
  mutable std::vector<std::uint32_t> class_size_;
};

using GroupPtr = std::shared_ptr<FiniteGroup const>;

inline GroupPtr group_from_generators(std::vector<Permutation> perms,
                                      std::uint32_t cap = 50'000) {
  return std::make_shared<FiniteGroup const>(std::move(perms), cap);
}

}  // namespace maxdim

#endif  // MAXDIM_GROUP_HPP
