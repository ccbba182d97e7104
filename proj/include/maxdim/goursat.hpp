#ifndef MAXDIM_GOURSAT_HPP
#define MAXDIM_GOURSAT_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"
#include "maxdim/homomorphism.hpp"
#include "maxdim/lattice.hpp"
#include "maxdim/product.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

// Maximal subgroups of H x K without touching the product's lattice:
//   standard entries M x K and H x M' from the factors' catalogs, plus one
//   pullback {(x,y) : alpha(xN) = yN'} per maximal normal pair (N, N') with
//   isomorphic (necessarily simple) quotients and per isomorphism alpha.
// This is the designed fast path for products like A5 x A5 whose order is
// far beyond the generic lattice cap.
inline MaximalCatalog maximal_subgroups_of_product(DirectProduct const& dp,
                                                   MaximalCatalog const& left_cat,
                                                   MaximalCatalog const& right_cat,
                                                   std::uint32_t lattice_cap = 2'000,
                                                   std::uint64_t node_budget = 10'000'000,
                                                   std::uint64_t seed = 0) {
  auto const& prod = *dp.group;
  auto const& g = *dp.left;
  auto const& h = *dp.right;
  MaximalCatalog cat;
  cat.parent = &prod;
  std::unordered_set<DenseBitset, DenseBitsetHash> seen;

  auto add = [&](DenseBitset bits, MaximalProvenance prov, std::size_t n = 0,
                 std::size_t np = 0, std::size_t al = 0) {
    if (!seen.insert(bits).second) return;
    MaximalEntry e;
    e.subgroup = subgroup_from_bitmap(prod, std::move(bits));
    e.provenance = prov;
    e.pull_n = n;
    e.pull_nprime = np;
    e.pull_alpha = al;
    cat.entries.push_back(std::move(e));
  };

  for (auto const& e : left_cat.entries) {
    DenseBitset bits(prod.order());
    for (ElementId x = 0; x < prod.order(); ++x)
      if (e.subgroup.members.test(dp.left_part(x))) bits.set(x);
    add(std::move(bits), MaximalProvenance::standard_left);
  }
  for (auto const& e : right_cat.entries) {
    DenseBitset bits(prod.order());
    for (ElementId x = 0; x < prod.order(); ++x)
      if (e.subgroup.members.test(dp.right_part(x))) bits.set(x);
    add(std::move(bits), MaximalProvenance::standard_right);
  }

  auto mn_left = maximal_normal_subgroups(g, lattice_cap);
  auto mn_right = maximal_normal_subgroups(h, lattice_cap);
  for (std::size_t i = 0; i < mn_left.size(); ++i) {
    auto ql = quotient_group(g, mn_left[i]);
    for (std::size_t j = 0; j < mn_right.size(); ++j) {
      if (g.order() / mn_left[i].order != h.order() / mn_right[j].order) continue;
      auto qr = quotient_group(h, mn_right[j]);
      auto isos = isomorphisms(*ql.group, *qr.group, node_budget);
      for (std::size_t ai = 0; ai < isos.size(); ++ai) {
        DenseBitset bits(prod.order());
        for (ElementId x = 0; x < prod.order(); ++x) {
          ElementId xl = dp.left_part(x), xr = dp.right_part(x);
          if (isos[ai].apply(ql.projection->apply(xl)) == qr.projection->apply(xr))
            bits.set(x);
        }
        add(std::move(bits), MaximalProvenance::pullback, i, j, ai);
      }
    }
  }

  detail::sort_catalog(cat);
  detail::verify_maximality(cat, seed ^ 0x676f757273ull);
  return cat;
}

inline MaximalCatalog maximal_subgroups_of_product(DirectProduct const& dp,
                                                   std::uint32_t lattice_cap = 2'000,
                                                   std::uint64_t node_budget = 10'000'000,
                                                   std::uint64_t seed = 0) {
  auto lc = maximal_subgroups(*dp.left, lattice_cap, seed);
  auto rc = maximal_subgroups(*dp.right, lattice_cap, seed);
  return maximal_subgroups_of_product(dp, lc, rc, lattice_cap, node_budget, seed);
}

}  // namespace maxdim

#endif  // MAXDIM_GOURSAT_HPP
