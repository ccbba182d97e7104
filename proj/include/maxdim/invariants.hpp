#ifndef MAXDIM_INVARIANTS_HPP
#define MAXDIM_INVARIANTS_HPP

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/general_position.hpp"
#include "maxdim/group.hpp"
#include "maxdim/homomorphism.hpp"
#include "maxdim/lattice.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

struct DimResult {
  int value = 0;
  bool exact = true;
  MaximalFamily witness;
  std::vector<std::size_t> witness_indices;  // into the catalog
  std::uint64_t nodes = 0;
};

namespace detail {

// Orbit representatives (smallest catalog index per orbit) of the catalog
// under conjugation. Any family can be conjugated so its smallest-index
// member is a representative, so the search may anchor there.
inline std::vector<std::size_t> catalog_conjugacy_reps(FiniteGroup const& g,
                                                       MaximalCatalog const& cat) {
  std::unordered_map<DenseBitset, std::size_t, DenseBitsetHash> index;
  for (std::size_t i = 0; i < cat.size(); ++i) index.emplace(cat[i].members, i);
  std::vector<std::vector<ElementId>> conj;
  for (auto gid : g.generator_ids()) conj.push_back(g.conjugation_map(gid));
  std::vector<bool> seen(cat.size(), false);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(i);
    std::vector<std::size_t> orbit{i};
    seen[i] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (auto const& cm : conj) {
        DenseBitset img(g.order());
        cat[orbit[k]].members.for_each([&](std::size_t x) { img.set(cm[x]); });
        auto it = index.find(img);
        if (it == index.end())
          throw std::logic_error("catalog is not closed under conjugation");
        if (!seen[it->second]) {
          seen[it->second] = true;
          orbit.push_back(it->second);
        }
      }
    }
  }
  return reps;
}

inline DimResult to_dim_result(FiniteGroup const& g, MaximalCatalog const& cat,
                               GpSearchResult const& r) {
  DimResult out;
  out.value = r.value;
  out.exact = r.exact;
  out.nodes = r.nodes;
  out.witness_indices = r.witness;
  std::vector<SubgroupSet> members;
  for (auto i : r.witness) members.push_back(cat[i]);
  out.witness = MaximalFamily::of(g, std::move(members));
  return out;
}

}  // namespace detail

// MaxDim(G): exact maximum size of a general-position family of catalog
// entries, with one witness family.
inline DimResult max_dim(FiniteGroup const& g, MaximalCatalog const& cat,
                         std::uint64_t node_budget = 10'000'000) {
  std::vector<DenseBitset> cands;
  for (std::size_t i = 0; i < cat.size(); ++i) cands.push_back(cat[i].members);
  GpSearch search(std::move(cands), g.all_bits());
  search.restrict_first_level(detail::catalog_conjugacy_reps(g, cat));
  return detail::to_dim_result(g, cat, search.run(node_budget));
}

// MaxDim(G, H): families of maximal subgroups whose intersections with H
// are in general position as subgroups of H.
inline DimResult relative_maxdim(FiniteGroup const& g, SubgroupSet const& h,
                                 MaximalCatalog const& cat,
                                 std::uint64_t node_budget = 10'000'000) {
  std::vector<DenseBitset> cands;
  for (std::size_t i = 0; i < cat.size(); ++i) cands.push_back(cat[i].members & h.members);
  GpSearch search(std::move(cands), h.members);
  return detail::to_dim_result(g, cat, search.run(node_budget));
}

// MaxDim_H(N): general position over the maximal invariant subgroups.
struct UnderActionResult {
  int value = 0;
  bool exact = true;
  std::vector<SubgroupSet> witness;
  std::uint64_t nodes = 0;
};

inline UnderActionResult maxdim_under_action(SubgroupSet const& n,
                                             std::vector<SubgroupSet> const& invariant_catalog,
                                             std::uint64_t node_budget = 10'000'000) {
  std::vector<DenseBitset> cands;
  for (auto const& s : invariant_catalog) cands.push_back(s.members);
  GpSearch search(std::move(cands), n.members);
  auto r = search.run(node_budget);
  UnderActionResult out;
  out.value = r.value;
  out.exact = r.exact;
  out.nodes = r.nodes;
  for (auto i : r.witness) out.witness.push_back(invariant_catalog[i]);
  return out;
}

// Rearrangement of a general-position family along a normal subgroup:
// returns l, the reordered family (the chosen subfamily first), the
// radical R of the chosen subfamily, and the projected quotient family.
// The chosen subfamily B minimizes |intersection of {M cap N}| among all
// subfamilies whose intersections with N are in general position inside N
// (ties: lexicographically smallest index set). The guarantees that every
// other member's M cap N contains that minimal intersection and that
// {pi(R cap M_j)} is in general position in G/N are checked and a failure
// throws LemmaViolation.
struct WhistonSplit {
  std::size_t l = 0;
  std::vector<std::size_t> chosen;     // indices into the input family
  std::vector<std::size_t> remainder;  // the complement, in order
  SubgroupSet big_radical;             // R = intersection of chosen members (in G)
  Quotient quotient;                   // G/N with projection
  std::vector<SubgroupSet> quotient_family;  // pi(R cap M_j), j in remainder
};

inline WhistonSplit whiston_split(FiniteGroup const& g, MaximalFamily const& family,
                                  SubgroupSet const& n) {
  if (!is_general_position(family)) throw LemmaViolation("input family not in general position");
  std::size_t const k = family.size();
  if (k > 20) throw CapExceeded("whiston_split: family too large for subset sweep");

  std::vector<DenseBitset> cut;  // M_i cap N
  for (auto const& m : family.members) cut.push_back(m.members & n.members);

  std::uint64_t best_order = ~std::uint64_t{0};
  std::uint32_t best_mask = 0;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    DenseBitset inter = n.members;
    std::vector<DenseBitset const*> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        sub.push_back(&cut[i]);
        inter &= cut[i];
      }
    if (!is_general_position_bits(sub, n.members)) continue;
    std::uint64_t ord = inter.count();
    // ties: prefer the lexicographically smallest index set, i.e. the one
    // whose sorted index list compares smallest; masks enumerate in that
    // order for equal popcount but not across counts, so compare explicitly
    if (!found || ord < best_order ||
        (ord == best_order && [&] {
           auto ids = [](std::uint32_t m) {
             std::vector<std::size_t> v;
             for (std::size_t i = 0; i < 32; ++i)
               if (m & (1u << i)) v.push_back(i);
             return v;
           };
           return ids(mask) < ids(best_mask);
         }())) {
      found = true;
      best_order = ord;
      best_mask = mask;
    }
  }

  WhistonSplit out;
  DenseBitset min_inter = n.members;
  DenseBitset rbits = g.all_bits();
  for (std::size_t i = 0; i < k; ++i) {
    if (best_mask & (1u << i)) {
      out.chosen.push_back(i);
      min_inter &= cut[i];
      rbits &= family.members[i].members;
    } else {
      out.remainder.push_back(i);
    }
  }
  out.l = out.chosen.size();
  out.big_radical = subgroup_from_bitmap(g, std::move(rbits));

  // lemma guarantee 1: every remaining member's M cap N contains the
  // minimal intersection
  for (auto j : out.remainder)
    if (!min_inter.subset_of(cut[j]))
      throw LemmaViolation("remaining member does not contain the minimal intersection");

  // lemma guarantee 2: the projected family is in general position in G/N
  out.quotient = quotient_group(g, n);
  auto const& pi = *out.quotient.projection;
  std::vector<DenseBitset const*> qptrs;
  for (auto j : out.remainder) {
    DenseBitset rm = out.big_radical.members & family.members[j].members;
    out.quotient_family.push_back(
        subgroup_from_bitmap(*out.quotient.group, pi.image_of(rm)));
  }
  for (auto const& qs : out.quotient_family) qptrs.push_back(&qs.members);
  if (!is_general_position_bits(qptrs, out.quotient.group->all_bits()))
    throw LemmaViolation("projected family not in general position in the quotient");
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_INVARIANTS_HPP
