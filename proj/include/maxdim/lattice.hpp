#ifndef MAXDIM_LATTICE_HPP
#define MAXDIM_LATTICE_HPP

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"
#include "maxdim/homomorphism.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

struct LatticeIndex {
  FiniteGroup const* parent = nullptr;
  std::vector<SubgroupSet> subgroups;  // sorted by (order, bitmap)
};

namespace detail {

// Generators of the cyclic subgroups of prime-power order within the
// ambient subgroup ("zuppos"). One representative bitmap per cyclic
// subgroup, sorted canonically.
inline std::vector<std::pair<DenseBitset, ElementId>> zuppos(FiniteGroup const& g,
                                                             DenseBitset const& ambient) {
  auto is_prime_power = [](std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        while (n % p == 0) n /= p;
        return n == 1;
      }
    return true;
  };
  std::unordered_map<DenseBitset, ElementId, DenseBitsetHash> seen;
  std::vector<std::pair<DenseBitset, ElementId>> out;
  ambient.for_each([&](std::size_t xi) {
    auto x = static_cast<ElementId>(xi);
    if (!is_prime_power(g.element_order(x))) return;
    DenseBitset c(g.order());
    ElementId y = g.identity();
    do {
      c.set(y);
      y = g.mul(y, x);
    } while (y != g.identity());
    if (seen.emplace(c, x).second) out.emplace_back(std::move(c), x);
  });
  std::sort(out.begin(), out.end(), [&](auto const& a, auto const& b) {
    auto ca = a.first.count(), cb = b.first.count();
    if (ca != cb) return ca < cb;
    return a.first.word_lex_less(b.first);
  });
  return out;
}

}  // namespace detail

// Complete subgroup enumeration of the ambient subgroup, by extending each
// known subgroup with prime-power cyclic generators. Every subgroup K shows
// up: it equals <M, z> for any maximal M < K (known by induction on order)
// and any prime-power part z of an element of K \ M.
inline LatticeIndex all_subgroups_within(FiniteGroup const& g, DenseBitset const& ambient,
                                         std::uint32_t lattice_cap = 2'000,
                                         std::size_t subgroup_cap = 500'000) {
  if (ambient.count() > lattice_cap)
    throw CapExceeded("subgroup lattice: ambient order " + std::to_string(ambient.count()) +
                      " exceeds lattice cap " + std::to_string(lattice_cap));
  auto zs = detail::zuppos(g, ambient);

  std::unordered_map<DenseBitset, std::size_t, DenseBitsetHash> index;
  std::vector<SubgroupSet> subs;
  auto intern = [&](SubgroupSet s) -> bool {
    auto [it, fresh] = index.emplace(s.members, subs.size());
    if (fresh) {
      if (subs.size() >= subgroup_cap) throw CapExceeded("subgroup lattice: too many subgroups");
      subs.push_back(std::move(s));
    }
    return fresh;
  };
  intern(trivial_subgroup(g));
  for (std::size_t k = 0; k < subs.size(); ++k) {
    for (auto const& [zbits, z] : zs) {
      if (zbits.subset_of(subs[k].members)) continue;
      auto gens = subs[k].generator_ids;
      gens.push_back(z);
      auto bits = closure_bits(g, gens);
      if (index.count(bits)) continue;
      SubgroupSet s;
      s.parent = &g;
      s.order = static_cast<std::uint32_t>(bits.count());
      s.members = std::move(bits);
      s.generator_ids = std::move(gens);
      intern(std::move(s));
    }
  }
  std::sort(subs.begin(), subs.end(), [](SubgroupSet const& a, SubgroupSet const& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.members.word_lex_less(b.members);
  });
  LatticeIndex out;
  out.parent = &g;
  out.subgroups = std::move(subs);
  return out;
}

inline LatticeIndex all_subgroups(FiniteGroup const& g, std::uint32_t lattice_cap = 2'000) {
  return all_subgroups_within(g, g.all_bits(), lattice_cap);
}

enum class MaximalProvenance { generic, standard_left, standard_right, pullback };

struct MaximalEntry {
  SubgroupSet subgroup;
  MaximalProvenance provenance = MaximalProvenance::generic;
  // pullback bookkeeping: indices into the maximal-normal lists and the
  // isomorphism list used to build the entry
  std::size_t pull_n = 0, pull_nprime = 0, pull_alpha = 0;
};

struct MaximalCatalog {
  FiniteGroup const* parent = nullptr;
  std::vector<MaximalEntry> entries;  // sorted by (order, bitmap)

  std::size_t size() const { return entries.size(); }
  SubgroupSet const& operator[](std::size_t i) const { return entries[i].subgroup; }
};

namespace detail {

inline void sort_catalog(MaximalCatalog& cat) {
  std::sort(cat.entries.begin(), cat.entries.end(), [](MaximalEntry const& a, MaximalEntry const& b) {
    if (a.subgroup.order != b.subgroup.order) return a.subgroup.order < b.subgroup.order;
    return a.subgroup.members.word_lex_less(b.subgroup.members);
  });
}

// Spot check: adding any element outside a catalog entry must generate the
// whole group. Exhaustive for order <= 500, sampled (seeded) above that.
inline void verify_maximality(MaximalCatalog const& cat, std::uint64_t seed) {
  auto const& g = *cat.parent;
  bool exhaustive = g.order() <= 500;
  std::mt19937_64 rng(seed);
  for (auto const& e : cat.entries) {
    std::vector<ElementId> outside;
    for (ElementId x = 0; x < g.order(); ++x)
      if (!e.subgroup.members.test(x)) outside.push_back(x);
    std::vector<ElementId> picks;
    if (exhaustive) {
      picks = outside;
    } else {
      for (int t = 0; t < 3 && !outside.empty(); ++t)
        picks.push_back(outside[rng() % outside.size()]);
    }
    for (auto x : picks) {
      auto gens = e.subgroup.generator_ids;
      gens.push_back(x);
      if (closure_bits(g, gens).count() != g.order())
        throw std::logic_error("catalog entry is not maximal");
    }
  }
}

}  // namespace detail

// Generic path: filter the full lattice by the covering relation.
inline MaximalCatalog maximal_subgroups(FiniteGroup const& g, std::uint32_t lattice_cap = 2'000,
                                        std::uint64_t seed = 0) {
  auto lat = all_subgroups(g, lattice_cap);
  MaximalCatalog cat;
  cat.parent = &g;
  for (auto const& h : lat.subgroups) {
    if (!h.proper()) continue;
    bool covered = false;
    for (auto const& k : lat.subgroups) {
      if (!k.proper() || k.order <= h.order || k.order % h.order != 0) continue;
      if (h.members.subset_of(k.members)) {
        covered = true;
        break;
      }
    }
    if (!covered) cat.entries.push_back({h, MaximalProvenance::generic, 0, 0, 0});
  }
  detail::sort_catalog(cat);
  detail::verify_maximality(cat, seed ^ 0x6d617864696dull);
  return cat;
}

// Frattini subgroup: intersection of all maximal subgroups.
inline SubgroupSet frattini(FiniteGroup const& g, MaximalCatalog const& cat) {
  DenseBitset bits = g.all_bits();
  for (auto const& e : cat.entries) bits &= e.subgroup.members;
  return subgroup_from_bitmap(g, std::move(bits));
}

inline SubgroupSet frattini(FiniteGroup const& g, std::uint32_t lattice_cap = 2'000) {
  return frattini(g, maximal_subgroups(g, lattice_cap));
}

inline bool is_frattini_free(FiniteGroup const& g, MaximalCatalog const& cat) {
  return frattini(g, cat).is_trivial();
}

struct FrattiniQuotient {
  SubgroupSet phi;
  Quotient quotient;
};

inline FrattiniQuotient frattini_quotient(FiniteGroup const& g,
                                          std::uint32_t lattice_cap = 2'000) {
  FrattiniQuotient out{frattini(g, lattice_cap), {}};
  out.quotient = quotient_group(g, out.phi);
  return out;
}

// Subgroups of `n` stable under every actor. Actors are either parent
// elements (acting by conjugation) or homomorphisms of the parent.
struct ActorSet {
  std::vector<ElementId> conjugators;
  std::vector<GroupMap const*> maps;
};

inline std::vector<SubgroupSet> invariant_subgroups(FiniteGroup const& g, SubgroupSet const& n,
                                                    ActorSet const& actors,
                                                    std::uint32_t lattice_cap = 2'000) {
  auto lat = all_subgroups_within(g, n.members, lattice_cap);
  std::vector<std::vector<ElementId>> conj_maps;
  for (auto a : actors.conjugators) conj_maps.push_back(g.conjugation_map(a));
  std::vector<SubgroupSet> out;
  for (auto& s : lat.subgroups) {
    bool ok = true;
    for (auto const& cm : conj_maps) {
      DenseBitset img(g.order());
      s.members.for_each([&](std::size_t x) { img.set(cm[x]); });
      if (img != s.members) {
        ok = false;
        break;
      }
    }
    for (auto const* m : actors.maps) {
      if (!ok) break;
      if (m->image_of(s.members) != s.members) ok = false;
    }
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

// Maximal proper members of the invariant family (no proper invariant
// overgroup inside n).
inline std::vector<SubgroupSet> maximal_invariant_subgroups(FiniteGroup const& g,
                                                            SubgroupSet const& n,
                                                            ActorSet const& actors,
                                                            std::uint32_t lattice_cap = 2'000) {
  auto inv = invariant_subgroups(g, n, actors, lattice_cap);
  std::vector<SubgroupSet> out;
  for (auto const& s : inv) {
    if (s.order >= n.order) continue;
    bool covered = false;
    for (auto const& t : inv) {
      if (t.order >= n.order || t.order <= s.order) continue;
      if (s.members.subset_of(t.members)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back(s);
  }
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_LATTICE_HPP
