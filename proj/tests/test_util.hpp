#ifndef MAXDIM_TEST_UTIL_HPP
#define MAXDIM_TEST_UTIL_HPP

#include <set>
#include <vector>

#include "maxdim/maxdim.hpp"

namespace testutil {

using namespace maxdim;

inline GroupPtr from_spec(std::string const& text) {
  return build_group(parse_group_spec(text)).group;
}

inline GroupPtr s3() { return from_spec("family: symmetric 3"); }
inline GroupPtr a4() { return from_spec("family: alternating 4"); }
inline GroupPtr a5() { return from_spec("family: alternating 5"); }
inline GroupPtr z(unsigned n) { return from_spec("family: cyclic " + std::to_string(n)); }

// Oracle: closure by repeated pairwise-product saturation, no BFS.
inline std::set<ElementId> saturation_closure(FiniteGroup const& g,
                                              std::vector<ElementId> const& seed) {
  std::set<ElementId> s(seed.begin(), seed.end());
  s.insert(g.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ElementId> cur(s.begin(), s.end());
    for (auto a : cur)
      for (auto b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return s;
}

// Oracle: all subgroups of a tiny group, as closures of every subset of a
// generating pool (complete because every subgroup has a generating set).
inline std::set<std::vector<std::uint32_t>> powerset_subgroups(FiniteGroup const& g) {
  std::set<std::vector<std::uint32_t>> out;
  std::uint32_t n = g.order();
  if (n > 16) throw std::logic_error("powerset oracle limited to order <= 16");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<ElementId> seed;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) seed.push_back(i);
    out.insert(closure_bits(g, seed).to_ids());
  }
  return out;
}

// Oracle: general position by direct evaluation of all subset intersections.
inline bool gp_oracle(FiniteGroup const& g, std::vector<DenseBitset> const& members) {
  std::size_t n = members.size();
  auto inter_of = [&](std::size_t mask) {
    DenseBitset b = g.all_bits();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) b &= members[i];
    return b;
  };
  DenseBitset full = inter_of((std::size_t{1} << n) - 1);
  for (std::size_t j = 0; j < n; ++j) {
    auto except = inter_of(((std::size_t{1} << n) - 1) & ~(std::size_t{1} << j));
    if (except == full) return false;
  }
  return true;
}

}  // namespace testutil

#endif
