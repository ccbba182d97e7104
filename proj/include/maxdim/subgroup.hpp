#ifndef MAXDIM_SUBGROUP_HPP
#define MAXDIM_SUBGROUP_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "maxdim/bitset.hpp"
#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"

namespace maxdim {

// A subgroup of a FiniteGroup: dense membership bitmap over element ids
// plus a witness generating list. The witness always generates exactly the
// bitmap (checked where subgroups are assembled from raw bitmaps).
struct SubgroupSet {
  FiniteGroup const* parent = nullptr;
  DenseBitset members;
  std::vector<ElementId> generator_ids;
  std::uint32_t order = 0;

  bool contains(ElementId x) const { return members.test(x); }
  bool is_trivial() const { return order == 1; }
  bool is_whole_group() const { return parent && order == parent->order(); }
  bool proper() const { return parent && order < parent->order(); }

  bool operator==(SubgroupSet const& o) const {
    return parent == o.parent && members == o.members;
  }
};

// Smallest subgroup containing the seed. Finite, so closure under
// multiplication alone suffices; BFS from the identity keeps discovery
// order deterministic.
inline DenseBitset closure_bits(FiniteGroup const& g, std::vector<ElementId> const& seed) {
  DenseBitset bits(g.order());
  bits.set(g.identity());
  std::vector<ElementId> queue{g.identity()};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (auto s : seed) {
      ElementId y = g.mul(queue[k], s);
      if (!bits.test(y)) {
        bits.set(y);
        queue.push_back(y);
      }
    }
  }
  return bits;
}

inline SubgroupSet closure(FiniteGroup const& g, std::vector<ElementId> seed) {
  // drop duplicates and the identity from the witness list
  std::vector<ElementId> gens;
  for (auto s : seed)
    if (s != g.identity() && std::find(gens.begin(), gens.end(), s) == gens.end())
      gens.push_back(s);
  auto bits = closure_bits(g, gens);
  SubgroupSet sub;
  sub.parent = &g;
  sub.order = static_cast<std::uint32_t>(bits.count());
  sub.members = std::move(bits);
  sub.generator_ids = std::move(gens);
  return sub;
}

inline SubgroupSet trivial_subgroup(FiniteGroup const& g) { return closure(g, {}); }

inline SubgroupSet whole_group(FiniteGroup const& g) {
  SubgroupSet sub;
  sub.parent = &g;
  sub.members = g.all_bits();
  sub.order = g.order();
  sub.generator_ids = g.generator_ids();
  return sub;
}

// Rebuilds a witness generating list for a membership bitmap (greedy over
// ascending ids), verifying the bitmap really is a subgroup.
inline SubgroupSet subgroup_from_bitmap(FiniteGroup const& g, DenseBitset bits) {
  std::vector<ElementId> gens;
  DenseBitset cl(g.order());
  cl.set(g.identity());
  for (std::size_t i = bits.find_first(); i != DenseBitset::npos; i = bits.find_next(i + 1)) {
    if (cl.test(i)) continue;
    gens.push_back(static_cast<ElementId>(i));
    cl = closure_bits(g, gens);
  }
  if (cl != bits) throw std::logic_error("bitmap is not closed under multiplication");
  SubgroupSet sub;
  sub.parent = &g;
  sub.order = static_cast<std::uint32_t>(bits.count());
  sub.members = std::move(bits);
  sub.generator_ids = std::move(gens);
  return sub;
}

inline SubgroupSet centralizer(FiniteGroup const& g, std::vector<ElementId> const& elems) {
  DenseBitset bits(g.order());
  for (ElementId x = 0; x < g.order(); ++x) {
    bool commutes = true;
    for (auto e : elems)
      if (g.mul(x, e) != g.mul(e, x)) {
        commutes = false;
        break;
      }
    if (commutes) bits.set(x);
  }
  return subgroup_from_bitmap(g, std::move(bits));
}

inline SubgroupSet center(FiniteGroup const& g) { return centralizer(g, g.generator_ids()); }

inline SubgroupSet normalizer(FiniteGroup const& g, SubgroupSet const& sub) {
  DenseBitset bits(g.order());
  for (ElementId x = 0; x < g.order(); ++x) {
    bool normalizes = true;
    for (auto s : sub.generator_ids)
      if (!sub.members.test(g.conj(x, s))) {
        normalizes = false;
        break;
      }
    if (normalizes) bits.set(x);
  }
  return subgroup_from_bitmap(g, std::move(bits));
}

inline bool is_normal(FiniteGroup const& g, SubgroupSet const& sub) {
  for (auto x : g.generator_ids())
    for (auto s : sub.generator_ids)
      if (!sub.members.test(g.conj(x, s))) return false;
  return true;
}

inline bool is_abelian_subgroup(FiniteGroup const& g, SubgroupSet const& sub) {
  for (auto a : sub.generator_ids)
    for (auto b : sub.generator_ids)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline bool is_abelian(FiniteGroup const& g) { return is_abelian_subgroup(g, whole_group(g)); }

namespace detail {

// normal closure in <actors> of the subgroup generated by seed
inline DenseBitset normal_closure_bits(FiniteGroup const& g, std::vector<ElementId> seed,
                                       std::vector<ElementId> const& actors) {
  std::vector<ElementId> gens;
  for (auto s : seed)
    if (s != g.identity()) gens.push_back(s);
  DenseBitset bits = closure_bits(g, gens);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (auto a : actors) {
      ElementId y = g.conj(a, gens[k]);
      if (!bits.test(y)) {
        gens.push_back(y);
        bits = closure_bits(g, gens);
      }
    }
  }
  return bits;
}

}  // namespace detail

// [A, B] as a subgroup: normal closure (under both A and B) of the
// commutators of the witness generators.
inline SubgroupSet commutator_subgroup(FiniteGroup const& g, SubgroupSet const& a,
                                       SubgroupSet const& b) {
  std::vector<ElementId> seed;
  for (auto x : a.generator_ids)
    for (auto y : b.generator_ids) {
      ElementId c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
      if (c != g.identity()) seed.push_back(c);
    }
  std::vector<ElementId> actors = a.generator_ids;
  actors.insert(actors.end(), b.generator_ids.begin(), b.generator_ids.end());
  return subgroup_from_bitmap(g, detail::normal_closure_bits(g, std::move(seed), actors));
}

inline SubgroupSet derived_subgroup_of(FiniteGroup const& g, SubgroupSet const& sub) {
  return commutator_subgroup(g, sub, sub);
}

inline SubgroupSet derived_subgroup(FiniteGroup const& g) {
  return derived_subgroup_of(g, whole_group(g));
}

inline bool is_solvable_subgroup(FiniteGroup const& g, SubgroupSet sub) {
  while (!sub.is_trivial()) {
    SubgroupSet next = derived_subgroup_of(g, sub);
    if (next.order == sub.order) return false;
    sub = std::move(next);
  }
  return true;
}

inline bool is_solvable(FiniteGroup const& g) { return is_solvable_subgroup(g, whole_group(g)); }

// Lower central series of `sub` reaching the trivial subgroup.
inline bool is_nilpotent_subgroup(FiniteGroup const& g, SubgroupSet const& sub) {
  SubgroupSet gamma = commutator_subgroup(g, sub, sub);
  while (!gamma.is_trivial()) {
    SubgroupSet next = commutator_subgroup(g, gamma, sub);
    if (next.order == gamma.order) return false;
    gamma = std::move(next);
  }
  return true;
}

inline bool is_nilpotent(FiniteGroup const& g) {
  return is_nilpotent_subgroup(g, whole_group(g));
}

inline bool is_perfect(FiniteGroup const& g) {
  return derived_subgroup(g).order == g.order();
}

// All normal subgroups, via joins of conjugacy classes; sorted by
// (order, bitmap). Every normal subgroup is a union of classes and is
// reached by repeatedly adjoining one class, so the walk is complete.
inline std::vector<SubgroupSet> normal_subgroups(FiniteGroup const& g,
                                                 std::uint32_t lattice_cap = 2'000) {
  if (g.order() > lattice_cap)
    throw CapExceeded("normal subgroup enumeration: order " + std::to_string(g.order()) +
                      " exceeds lattice cap " + std::to_string(lattice_cap));
  auto const& classes = g.conjugacy_classes();
  std::vector<SubgroupSet> found;
  auto intern = [&](DenseBitset const& b) -> bool {
    for (auto const& f : found)
      if (f.members == b) return false;
    found.push_back(subgroup_from_bitmap(g, b));
    return true;
  };
  DenseBitset triv(g.order());
  triv.set(g.identity());
  intern(triv);
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (auto const& cl : classes) {
      if (found[k].members.test(cl[0])) continue;
      auto gens = found[k].generator_ids;
      gens.push_back(cl[0]);
      intern(detail::normal_closure_bits(g, std::move(gens), g.generator_ids()));
    }
  }
  std::vector<SubgroupSet> out = std::move(found);
  std::sort(out.begin(), out.end(), [](SubgroupSet const& a, SubgroupSet const& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.members.word_lex_less(b.members);
  });
  return out;
}

inline std::vector<SubgroupSet> maximal_normal_subgroups(FiniteGroup const& g,
                                                         std::uint32_t lattice_cap = 2'000) {
  auto normals = normal_subgroups(g, lattice_cap);
  std::vector<SubgroupSet> maximal;
  for (auto const& n : normals) {
    if (!n.proper()) continue;
    bool covered = false;
    for (auto const& m : normals) {
      if (!m.proper() || m.order <= n.order) continue;
      if (n.members.subset_of(m.members)) {
        covered = true;
        break;
      }
    }
    if (!covered) maximal.push_back(n);
  }
  return maximal;
}

// Intersection of the maximal normal subgroups ("rumpf"); the whole group
// when there are none (trivial group).
inline SubgroupSet rumpf(FiniteGroup const& g, std::uint32_t lattice_cap = 2'000) {
  auto maximal = maximal_normal_subgroups(g, lattice_cap);
  DenseBitset bits = g.all_bits();
  for (auto const& m : maximal) bits &= m.members;
  return subgroup_from_bitmap(g, std::move(bits));
}

inline bool is_simple(FiniteGroup const& g, std::uint32_t lattice_cap = 2'000) {
  return g.order() > 1 && normal_subgroups(g, lattice_cap).size() == 2;
}

}  // namespace maxdim

#endif  // MAXDIM_SUBGROUP_HPP
