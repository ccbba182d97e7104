#ifndef MAXDIM_HOMOMORPHISM_HPP
#define MAXDIM_HOMOMORPHISM_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

enum class MapKind { homomorphism, isomorphism, projection };

// Homomorphism given by generator images. The full element map is built by
// pushing images along the source's BFS tree and then verified on the whole
// element table: phi(x*g) == phi(x)*phi(g) for every x and generator g,
// which forces multiplicativity on all pairs.
class GroupMap {
 public:
  GroupMap(FiniteGroup const& source, FiniteGroup const& target,
           std::vector<ElementId> generator_images, MapKind kind = MapKind::homomorphism)
      : source_(&source), target_(&target), gen_images_(std::move(generator_images)),
        kind_(kind) {
    if (gen_images_.size() != source.generator_count())
      throw NotHomomorphism("generator image count mismatch");
    full_.resize(source.order());
    full_[source.identity()] = target.identity();
    for (ElementId x = 1; x < source.order(); ++x)
      full_[x] = target.mul(full_[source.bfs_parent(x)], gen_images_[source.bfs_generator(x)]);
    for (ElementId x = 0; x < source.order(); ++x)
      for (std::size_t j = 0; j < gen_images_.size(); ++j)
        if (full_[source.mul(x, source.generator_id(j))] != target.mul(full_[x], gen_images_[j]))
          throw NotHomomorphism("generator images do not define a homomorphism");
  }

  FiniteGroup const& source() const { return *source_; }
  FiniteGroup const& target() const { return *target_; }
  MapKind kind() const { return kind_; }
  std::vector<ElementId> const& generator_images() const { return gen_images_; }

  ElementId apply(ElementId x) const { return full_[x]; }
  std::vector<ElementId> const& element_map() const { return full_; }

  DenseBitset image_bits() const {
    DenseBitset b(target_->order());
    for (auto y : full_) b.set(y);
    return b;
  }

  DenseBitset image_of(DenseBitset const& sub) const {
    DenseBitset b(target_->order());
    sub.for_each([&](std::size_t x) { b.set(full_[x]); });
    return b;
  }

  DenseBitset preimage_of(DenseBitset const& sub) const {
    DenseBitset b(source_->order());
    for (ElementId x = 0; x < source_->order(); ++x)
      if (sub.test(full_[x])) b.set(x);
    return b;
  }

  SubgroupSet kernel() const {
    DenseBitset b(source_->order());
    for (ElementId x = 0; x < source_->order(); ++x)
      if (full_[x] == target_->identity()) b.set(x);
    return subgroup_from_bitmap(*source_, std::move(b));
  }

  bool is_surjective() const { return image_bits().count() == target_->order(); }

  bool is_bijective() const {
    return source_->order() == target_->order() && is_surjective();
  }

 private:
  FiniteGroup const* source_;
  FiniteGroup const* target_;
  std::vector<ElementId> gen_images_;
  MapKind kind_;
  std::vector<ElementId> full_;
};

// Quotient by a normal subgroup, realized as the permutation group on left
// cosets (g acting by xN -> gxN). The bundled shared_ptr keeps the quotient
// group alive for the projection map.
struct Quotient {
  GroupPtr group;
  std::unique_ptr<GroupMap> projection;  // source: the original group
};

inline Quotient quotient_group(FiniteGroup const& g, SubgroupSet const& n,
                               std::uint32_t cap = 50'000) {
  if (n.parent != &g || !is_normal(g, n)) throw NotNormal("subgroup is not normal");
  std::uint32_t const q = g.order() / n.order;
  std::vector<std::uint32_t> coset_of(g.order(), static_cast<std::uint32_t>(-1));
  std::vector<ElementId> reps;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (coset_of[x] != static_cast<std::uint32_t>(-1)) continue;
    auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    n.members.for_each([&](std::size_t m) {
      coset_of[g.mul(x, static_cast<ElementId>(m))] = c;
    });
  }
  std::vector<Permutation> qgens;
  qgens.reserve(g.generator_count());
  for (auto gid : g.generator_ids()) {
    std::vector<Point> im(q);
    for (std::uint32_t c = 0; c < q; ++c)
      im[c] = static_cast<Point>(coset_of[g.mul(gid, reps[c])]);
    qgens.emplace_back(std::move(im));
  }
  Quotient out;
  out.group = std::make_shared<FiniteGroup const>(std::move(qgens), cap);
  if (out.group->order() != q)
    throw std::logic_error("coset action order mismatch in quotient");
  std::vector<ElementId> gen_images;
  for (std::size_t j = 0; j < g.generator_count(); ++j)
    gen_images.push_back(out.group->generator_id(j));
  out.projection =
      std::make_unique<GroupMap>(g, *out.group, std::move(gen_images), MapKind::projection);
  return out;
}

namespace detail {

// Short deterministic generating sequence: greedily add the element that
// grows the closure most (ties to the smallest id). Keeps isomorphism
// backtracking shallow.
inline std::vector<ElementId> short_generating_sequence(FiniteGroup const& g) {
  std::vector<ElementId> gens;
  DenseBitset cl(g.order());
  cl.set(g.identity());
  while (cl.count() < g.order()) {
    ElementId best = kNoElement;
    std::size_t best_size = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (cl.test(x)) continue;
      auto cand = gens;
      cand.push_back(x);
      std::size_t sz = closure_bits(g, cand).count();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    gens.push_back(best);
    cl = closure_bits(g, gens);
  }
  if (gens.empty()) gens.push_back(g.identity());
  return gens;
}

struct Fingerprint {
  std::uint32_t order;
  std::uint32_t class_size;
  bool operator==(Fingerprint const&) const = default;
  auto operator<=>(Fingerprint const&) const = default;
};

inline Fingerprint fingerprint(FiniteGroup const& g, ElementId x) {
  return {g.element_order(x), g.class_size_of(x)};
}

}  // namespace detail

// Complete list of isomorphisms source -> target, deterministic order
// (lexicographic in the image tuple of a fixed short generating sequence).
// Candidates are pruned by (element order, class size) fingerprints; the
// partial map is validated on the subgroup generated so far at each level,
// so no invalid branch survives. Order-based matching alone would be
// unsound for simple groups (A8 vs PSL(3,4)), hence the full search.
inline std::vector<GroupMap> isomorphisms(FiniteGroup const& g, FiniteGroup const& h,
                                          std::uint64_t node_budget = 10'000'000) {
  std::vector<GroupMap> out;
  if (g.order() != h.order()) return out;
  // quick invariant: fingerprint multisets must agree
  std::map<detail::Fingerprint, std::uint32_t> fg, fh;
  for (ElementId x = 0; x < g.order(); ++x) ++fg[detail::fingerprint(g, x)];
  for (ElementId y = 0; y < h.order(); ++y) ++fh[detail::fingerprint(h, y)];
  if (fg != fh) return out;

  auto gens = detail::short_generating_sequence(g);
  std::vector<std::vector<ElementId>> level_sub_gens(gens.size());
  std::vector<DenseBitset> level_sub(gens.size(), DenseBitset(g.order()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    level_sub_gens[i].assign(gens.begin(), gens.begin() + i + 1);
    level_sub[i] = closure_bits(g, level_sub_gens[i]);
  }

  std::uint64_t nodes = 0;
  std::vector<ElementId> images(gens.size());
  std::vector<ElementId> phi;  // filled by partial_ok on success

  // Validates the partial assignment on the subgroup generated so far:
  // builds the induced map by BFS and rejects on any conflict or collision.
  auto partial_ok = [&](std::size_t level) -> bool {
    DenseBitset const& sub = level_sub[level];
    phi.assign(g.order(), kNoElement);
    phi[g.identity()] = h.identity();
    std::vector<ElementId> queue{g.identity()};
    DenseBitset himage(h.order());
    himage.set(h.identity());
    for (std::size_t k = 0; k < queue.size(); ++k) {
      ElementId x = queue[k];
      for (std::size_t j = 0; j <= level; ++j) {
        ElementId y = g.mul(x, gens[j]);
        ElementId fy = h.mul(phi[x], images[j]);
        if (phi[y] == kNoElement) {
          if (himage.test(fy)) return false;  // not injective on the subgroup
          phi[y] = fy;
          himage.set(fy);
          queue.push_back(y);
        } else if (phi[y] != fy) {
          return false;
        }
      }
    }
    return queue.size() == sub.count();
  };

  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (++nodes > node_budget)
      throw CapExceeded("isomorphism search exceeded node budget");
    if (level == gens.size()) {
      // read off images of the group's own generator list from phi
      std::vector<ElementId> orig_images;
      for (std::size_t j = 0; j < g.generator_count(); ++j)
        orig_images.push_back(phi[g.generator_id(j)]);
      GroupMap m(g, h, std::move(orig_images), MapKind::isomorphism);
      if (m.is_bijective()) out.push_back(std::move(m));
      return;
    }
    auto want = detail::fingerprint(g, gens[level]);
    for (ElementId y = 0; y < h.order(); ++y) {
      if (detail::fingerprint(h, y) != want) continue;
      images[level] = y;
      if (!partial_ok(level)) continue;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<GroupMap> automorphisms(FiniteGroup const& g,
                                           std::uint64_t node_budget = 10'000'000) {
  return isomorphisms(g, g, node_budget);
}

inline bool are_isomorphic(FiniteGroup const& g, FiniteGroup const& h,
                           std::uint64_t node_budget = 10'000'000) {
  return !isomorphisms(g, h, node_budget).empty();
}

// Nonabelian simple quotients are the quotients by maximal normal subgroups
// whose result is nonabelian; two groups "share" one when some pair is
// isomorphic. Returns the matched (index, index) pairs into the maximal
// normal lists.
struct CommonSimpleQuotient {
  bool found = false;
  std::vector<std::pair<std::size_t, std::size_t>> matches;
};

inline CommonSimpleQuotient common_nonabelian_simple_quotient(
    FiniteGroup const& g, FiniteGroup const& h, std::uint32_t lattice_cap = 2'000,
    std::uint64_t node_budget = 10'000'000) {
  CommonSimpleQuotient out;
  auto mg = maximal_normal_subgroups(g, lattice_cap);
  auto mh = maximal_normal_subgroups(h, lattice_cap);
  std::vector<std::pair<std::size_t, GroupPtr>> qg, qh;
  for (std::size_t i = 0; i < mg.size(); ++i) {
    auto q = quotient_group(g, mg[i]);
    if (!is_abelian(*q.group)) qg.emplace_back(i, q.group);
  }
  for (std::size_t j = 0; j < mh.size(); ++j) {
    auto q = quotient_group(h, mh[j]);
    if (!is_abelian(*q.group)) qh.emplace_back(j, q.group);
  }
  for (auto const& [i, qgi] : qg)
    for (auto const& [j, qhj] : qh)
      if (are_isomorphic(*qgi, *qhj, node_budget)) {
        out.found = true;
        out.matches.emplace_back(i, j);
      }
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_HOMOMORPHISM_HPP
