#ifndef MAXDIM_PSL2_HPP
#define MAXDIM_PSL2_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/fp.hpp"
#include "maxdim/group.hpp"
#include "maxdim/lattice.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

enum class DicksonType { point_stab, dihedral_minus, dihedral_plus, exceptional_a4,
                         exceptional_s4, exceptional_a5 };

inline std::string dickson_name(DicksonType t) {
  switch (t) {
    case DicksonType::point_stab: return "pointStab";
    case DicksonType::dihedral_minus: return "dihedralMinus";
    case DicksonType::dihedral_plus: return "dihedralPlus";
    case DicksonType::exceptional_a4: return "A4";
    case DicksonType::exceptional_s4: return "S4";
    case DicksonType::exceptional_a5: return "A5";
  }
  return "?";
}

struct Psl2Catalog {
  std::uint32_t p = 0;
  GroupPtr group;  // acting on the p+1 points of the projective line
  MaximalCatalog maximals;
  std::vector<DicksonType> types;  // aligned with maximals.entries
};

namespace detail {

inline std::uint32_t smallest_primitive_root(std::uint32_t p) {
  for (std::uint32_t a = 2; a < p; ++a) {
    std::uint32_t x = a % p, ord = 1;
    while (x != 1) {
      x = static_cast<std::uint32_t>((std::uint64_t{x} * a) % p);
      ++ord;
    }
    if (ord == p - 1) return a;
  }
  throw std::logic_error("no primitive root");
}

// cyclic C of index 2 plus an involution inverting it
inline bool is_dihedral(FiniteGroup const& g, SubgroupSet const& sub) {
  if (sub.order % 2 != 0 || sub.order < 4) return false;
  std::uint32_t half = sub.order / 2;
  for (std::size_t ci = sub.members.find_first(); ci != DenseBitset::npos;
       ci = sub.members.find_next(ci + 1)) {
    auto c = static_cast<ElementId>(ci);
    if (g.element_order(c) != half) continue;
    // the cyclic part
    DenseBitset cyc(g.order());
    ElementId y = g.identity();
    do {
      cyc.set(y);
      y = g.mul(y, c);
    } while (y != g.identity());
    for (std::size_t ti = sub.members.find_first(); ti != DenseBitset::npos;
         ti = sub.members.find_next(ti + 1)) {
      auto t = static_cast<ElementId>(ti);
      if (cyc.test(t) || g.element_order(t) != 2) continue;
      if (g.conj(t, c) == g.inv(c)) return true;
    }
  }
  return false;
}

inline bool has_common_fixed_point(FiniteGroup const& g, SubgroupSet const& sub) {
  for (std::uint32_t pt = 0; pt < g.degree(); ++pt) {
    bool fixed = true;
    for (auto x : sub.generator_ids)
      if (g.images(x)[pt] != pt) {
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

}  // namespace detail

// PSL(2,p) on F_p u {infinity} via x -> x+1, x -> a^2 x (a the smallest
// primitive root) and x -> -1/x. Maximal subgroups are enumerated by the
// generic lattice walk and then classified; each maximal must land in
// exactly one Dickson type, with the per-type order invariants enforced.
inline Psl2Catalog build_psl2(std::uint32_t p, std::uint32_t lattice_cap = 2'000,
                              std::uint64_t seed = 0) {
  if (!is_prime(p) || p < 5 || p > 13)
    throw UnsupportedPrime("p must be a prime in [5, 13]");
  std::uint32_t const inf = p;  // point index of infinity
  auto mod_inv = [&](std::uint32_t x) { return fp_inv(x, p); };

  std::vector<Point> shift(p + 1), scale(p + 1), flip(p + 1);
  std::uint32_t a = detail::smallest_primitive_root(p);
  std::uint32_t a2 = static_cast<std::uint32_t>((std::uint64_t{a} * a) % p);
  for (std::uint32_t x = 0; x < p; ++x) {
    shift[x] = static_cast<Point>((x + 1) % p);
    scale[x] = static_cast<Point>((std::uint64_t{a2} * x) % p);
    flip[x] = (x == 0) ? static_cast<Point>(inf)
                       : static_cast<Point>((p - mod_inv(x)) % p);
  }
  shift[inf] = static_cast<Point>(inf);
  scale[inf] = static_cast<Point>(inf);
  flip[inf] = 0;

  Psl2Catalog cat;
  cat.p = p;
  cat.group = std::make_shared<FiniteGroup const>(
      std::vector<Permutation>{Permutation(shift), Permutation(scale), Permutation(flip)});
  std::uint32_t expected = p * (p * p - 1) / 2;
  if (cat.group->order() != expected)
    throw std::logic_error("PSL(2,p) order mismatch");

  cat.maximals = maximal_subgroups(*cat.group, lattice_cap, seed);
  auto const& g = *cat.group;
  for (auto const& e : cat.maximals.entries) {
    auto const& m = e.subgroup;
    std::vector<DicksonType> hits;
    if (detail::has_common_fixed_point(g, m)) hits.push_back(DicksonType::point_stab);
    if (!detail::has_common_fixed_point(g, m) && detail::is_dihedral(g, m)) {
      if (m.order == p - 1) hits.push_back(DicksonType::dihedral_minus);
      if (m.order == p + 1) hits.push_back(DicksonType::dihedral_plus);
    }
    if (m.order == 12 && derived_subgroup_of(g, m).order == 4)
      hits.push_back(DicksonType::exceptional_a4);
    if (m.order == 24 && derived_subgroup_of(g, m).order == 12)
      hits.push_back(DicksonType::exceptional_s4);
    if (m.order == 60 && derived_subgroup_of(g, m).order == 60)
      hits.push_back(DicksonType::exceptional_a5);
    if (hits.size() != 1)
      throw std::logic_error("maximal subgroup matches " + std::to_string(hits.size()) +
                             " Dickson types");
    // type invariants
    if (hits[0] == DicksonType::point_stab && m.order != p * (p - 1) / 2)
      throw std::logic_error("point stabilizer order mismatch");
    cat.types.push_back(hits[0]);
  }
  return cat;
}

// Small-group structure labels for the intersection tables (orders <= 6
// plus the Klein four group are all that occur).
inline std::string structure_label(FiniteGroup const& g, DenseBitset const& bits) {
  std::size_t n = bits.count();
  if (n == 1) return "1";
  if (n == 2) return "Z2";
  if (n == 3) return "Z3";
  if (n == 5) return "Z5";
  if (n == 4) {
    bool has4 = false;
    bits.for_each([&](std::size_t x) {
      if (g.element_order(static_cast<ElementId>(x)) == 4) has4 = true;
    });
    return has4 ? "Z4" : "V4";
  }
  // cyclic iff some element has full order
  bool cyclic = false;
  bool abelian = true;
  std::vector<ElementId> ids;
  bits.for_each([&](std::size_t x) { ids.push_back(static_cast<ElementId>(x)); });
  for (auto x : ids) {
    if (g.element_order(x) == n) cyclic = true;
    for (auto y : ids)
      if (g.mul(x, y) != g.mul(y, x)) abelian = false;
  }
  if (cyclic) return "Z" + std::to_string(n);
  if (n == 6 && !abelian) return "S3";
  return (abelian ? "Ab" : "NonAb") + std::to_string(n);
}

// Observed intersections among the first three Dickson types:
//   case 1: pairs of point stabilizers (all must be cyclic of order (p-1)/2)
//   case 2: triples of point stabilizers (all must be trivial)
//   case 3: point stabilizer vs pair stabilizer
//   case 4: pair stabilizer vs pair stabilizer
struct CollinsTable {
  std::uint32_t p = 0;
  bool case1_exact = true;
  bool case2_exact = true;
  std::map<std::string, std::uint64_t> case3_outcomes;
  std::map<std::string, std::uint64_t> case4_outcomes;
  std::vector<std::string> discrepancies;
};

inline CollinsTable collins_table(Psl2Catalog const& cat) {
  auto const& g = *cat.group;
  CollinsTable out;
  out.p = cat.p;
  std::vector<DenseBitset const*> stabs, dihedrals;
  for (std::size_t i = 0; i < cat.maximals.size(); ++i) {
    if (cat.types[i] == DicksonType::point_stab)
      stabs.push_back(&cat.maximals[i].members);
    else if (cat.types[i] == DicksonType::dihedral_minus ||
             cat.types[i] == DicksonType::dihedral_plus)
      dihedrals.push_back(&cat.maximals[i].members);
  }
  std::uint32_t half = (cat.p - 1) / 2;
  for (std::size_t i = 0; i < stabs.size(); ++i)
    for (std::size_t j = i + 1; j < stabs.size(); ++j) {
      DenseBitset inter = *stabs[i] & *stabs[j];
      std::string label = structure_label(g, inter);
      if (label != "Z" + std::to_string(half)) {
        out.case1_exact = false;
        out.discrepancies.push_back("case1: observed " + label);
      }
      for (std::size_t k = j + 1; k < stabs.size(); ++k) {
        DenseBitset triple = inter & *stabs[k];
        if (triple.count() != 1) {
          out.case2_exact = false;
          out.discrepancies.push_back("case2: order " + std::to_string(triple.count()));
        }
      }
    }
  for (auto const* s : stabs)
    for (auto const* d : dihedrals)
      ++out.case3_outcomes[structure_label(g, *s & *d)];
  for (std::size_t i = 0; i < dihedrals.size(); ++i)
    for (std::size_t j = i + 1; j < dihedrals.size(); ++j)
      ++out.case4_outcomes[structure_label(g, *dihedrals[i] & *dihedrals[j])];
  for (auto const& [label, count] : out.case3_outcomes)
    if (label != "1" && label != "Z2")
      out.discrepancies.push_back("case3: unexpected " + label + " x" + std::to_string(count));
  for (auto const& [label, count] : out.case4_outcomes)
    if (label != "V4")
      out.discrepancies.push_back("case4: observed " + label + " x" + std::to_string(count) +
                                  " (stated value is V4)");
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_PSL2_HPP
