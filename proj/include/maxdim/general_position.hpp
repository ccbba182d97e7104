#ifndef MAXDIM_GENERAL_POSITION_HPP
#define MAXDIM_GENERAL_POSITION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "maxdim/bitset.hpp"
#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

// Family of subgroups used for general-position questions. Members keep
// selection order; the radical is their intersection.
struct MaximalFamily {
  FiniteGroup const* parent = nullptr;
  std::vector<SubgroupSet> members;
  SubgroupSet radical;

  static MaximalFamily of(FiniteGroup const& g, std::vector<SubgroupSet> members) {
    MaximalFamily f;
    f.parent = &g;
    DenseBitset bits = g.all_bits();
    for (auto const& m : members) {
      if (m.parent != &g) throw MixedParents("family members have different parents");
      bits &= m.members;
    }
    f.radical = subgroup_from_bitmap(g, std::move(bits));
    f.members = std::move(members);
    return f;
  }

  std::size_t size() const { return members.size(); }
};

// General position over an explicit ambient: dropping any one member must
// strictly enlarge the intersection, where the empty intersection is the
// ambient. The empty family qualifies; a singleton qualifies iff it is
// proper in the ambient.
inline bool is_general_position_bits(std::vector<DenseBitset const*> const& members,
                                     DenseBitset const& ambient) {
  std::size_t const n = members.size();
  if (n == 0) return true;
  std::vector<DenseBitset> prefix(n + 1, ambient), suffix(n + 1, ambient);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] & *members[i];
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] & *members[i];
  DenseBitset const& radical = prefix[n];
  for (std::size_t j = 0; j < n; ++j)
    if ((prefix[j] & suffix[j + 1]) == radical) return false;
  return true;
}

inline bool is_general_position(MaximalFamily const& family) {
  std::vector<DenseBitset const*> ptrs;
  for (auto const& m : family.members) {
    if (m.parent != family.parent) throw MixedParents("family members have different parents");
    ptrs.push_back(&m.members);
  }
  return is_general_position_bits(ptrs, family.parent->all_bits());
}

inline bool is_general_position(FiniteGroup const& g, std::vector<SubgroupSet> const& members) {
  return is_general_position(MaximalFamily::of(g, members));
}

namespace detail {

inline std::uint32_t omega(std::uint64_t n) {  // prime factors with multiplicity
  std::uint32_t c = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++c;
    }
  if (n > 1) ++c;
  return c;
}

// (a & b) == c, without materializing a & b. Assumes c subset of a & b is
// not required; pure word comparison.
inline bool and_equals(DenseBitset const& a, DenseBitset const& b, DenseBitset const& c) {
  DenseBitset t = a;  // small sets; one scratch copy is fine
  t &= b;
  return t == c;
}

}  // namespace detail

// Depth-first maximum search over general-position families drawn from a
// fixed candidate list.
//
// Family members enter in increasing candidate index; the first member may
// be restricted to conjugacy-orbit representatives when the candidate set
// is closed under conjugation. Each node keeps the running radical plus one
// "except-j" bitmap per chosen member, so candidate M extends the family
// iff the radical strictly drops and no except-j collapses onto the new
// radical -- exactly general position of the extended family.
//
// Prunes: remaining-candidate count, and depth + Omega(|radical|) (every
// further member divides the radical order), both against the best found.
// "Marked" candidates get a parallel best over families containing at
// least one marked member; pruning respects both tracks.
struct GpSearchResult {
  int value = 0;
  bool exact = true;
  std::vector<std::size_t> witness;  // candidate indices, increasing
  int value_with_marked = 0;
  std::vector<std::size_t> witness_with_marked;
  std::uint64_t nodes = 0;
};

class GpSearch {
 public:
  GpSearch(std::vector<DenseBitset> candidates, DenseBitset ambient)
      : cands_(std::move(candidates)), ambient_(std::move(ambient)) {
    marked_.assign(cands_.size(), false);
  }

  void mark(std::size_t i) {
    marked_[i] = true;
    any_marked_ = true;
  }

  void restrict_first_level(std::vector<std::size_t> reps) { first_ = std::move(reps); }

  GpSearchResult run(std::uint64_t node_budget) {
    res_ = {};
    budget_ = node_budget;
    std::vector<std::size_t> first = first_;
    if (first.empty())
      for (std::size_t i = 0; i < cands_.size(); ++i) first.push_back(i);
    try {
      std::vector<DenseBitset> no_excepts;
      for (auto idx : first) extend(idx, ambient_, no_excepts, 0);
    } catch (BudgetStop const&) {
      res_.exact = false;
    }
    return res_;
  }

 private:
  struct BudgetStop {};

  void extend(std::size_t idx, DenseBitset const& radical,
              std::vector<DenseBitset> const& excepts, std::uint32_t depth) {
    if (++res_.nodes > budget_) throw BudgetStop{};
    if (radical.subset_of(cands_[idx])) return;  // radical must strictly drop
    DenseBitset new_rad = radical & cands_[idx];
    for (auto const& e : excepts)
      if (detail::and_equals(e, cands_[idx], new_rad)) return;  // old member goes redundant

    path_.push_back(idx);
    bool marked_on_path = marked_count_ > 0 || marked_[idx];
    if (marked_[idx]) ++marked_count_;
    record(marked_on_path);

    std::uint32_t d = depth + 1;
    int potential = static_cast<int>(d + detail::omega(new_rad.count()));
    bool want_all = potential > res_.value;
    bool want_marked = any_marked_ && potential > res_.value_with_marked &&
                       (marked_on_path || marked_after(idx));
    if (want_all || want_marked) {
      std::vector<DenseBitset> new_excepts;
      new_excepts.reserve(excepts.size() + 1);
      for (auto const& e : excepts) new_excepts.push_back(e & cands_[idx]);
      new_excepts.push_back(radical);
      for (std::size_t next = idx + 1; next < cands_.size(); ++next) {
        bool improve_all = static_cast<int>(d + (cands_.size() - next)) > res_.value;
        bool improve_marked =
            any_marked_ && static_cast<int>(d + (cands_.size() - next)) > res_.value_with_marked &&
            (marked_on_path || marked_after(next - 1));
        if (!improve_all && !improve_marked) break;
        extend(next, new_rad, new_excepts, d);
      }
    }

    if (marked_[idx]) --marked_count_;
    path_.pop_back();
  }

  bool marked_after(std::size_t idx) const {
    for (std::size_t i = idx + 1; i < marked_.size(); ++i)
      if (marked_[i]) return true;
    return false;
  }

  void record(bool marked_on_path) {
    int d = static_cast<int>(path_.size());
    if (d > res_.value) {
      res_.value = d;
      res_.witness = path_;
    }
    if (marked_on_path && d > res_.value_with_marked) {
      res_.value_with_marked = d;
      res_.witness_with_marked = path_;
    }
  }

  std::vector<DenseBitset> cands_;
  DenseBitset ambient_;
  std::vector<bool> marked_;
  bool any_marked_ = false;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> path_;
  std::uint32_t marked_count_ = 0;
  GpSearchResult res_;
  std::uint64_t budget_ = 0;
};

}  // namespace maxdim

#endif  // MAXDIM_GENERAL_POSITION_HPP
