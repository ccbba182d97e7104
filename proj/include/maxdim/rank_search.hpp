#ifndef MAXDIM_RANK_SEARCH_HPP
#define MAXDIM_RANK_SEARCH_HPP

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/general_position.hpp"
#include "maxdim/group.hpp"
#include "maxdim/lattice.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

// s is irredundant iff removing any element strictly shrinks the closure;
// with require_generating the closure must also be the whole group.
inline bool is_irredundant(FiniteGroup const& g, std::vector<ElementId> const& elems,
                           bool require_generating) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (elems[i] == elems[j]) return false;
  auto full = closure_bits(g, elems);
  if (require_generating && full.count() != g.order()) return false;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<ElementId> rest;
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (j != i) rest.push_back(elems[j]);
    if (closure_bits(g, rest) == full) return false;
  }
  return true;
}

struct RankResult {
  int m = 0;
  std::vector<ElementId> m_witness;
  int i = 0;
  std::vector<ElementId> i_witness;
  bool exact = true;
  std::uint64_t nodes = 0;
};

namespace detail {

// Subgroup interner: closures are memoized by (subgroup, adjoined element),
// so the DFS below re-derives co-closures with hash lookups instead of BFS.
class SubgroupInterner {
 public:
  explicit SubgroupInterner(FiniteGroup const& g) : g_(&g) {
    DenseBitset triv(g.order());
    triv.set(g.identity());
    trivial_ = intern(std::move(triv), {});
  }

  std::uint32_t trivial_id() const { return trivial_; }
  DenseBitset const& bits(std::uint32_t id) const { return bits_[id]; }
  std::uint32_t order(std::uint32_t id) const { return static_cast<std::uint32_t>(counts_[id]); }

  // id of <subgroup(id), x>
  std::uint32_t extend(std::uint32_t id, ElementId x) {
    std::uint64_t key = (std::uint64_t{id} << 32) | x;
    auto it = ext_memo_.find(key);
    if (it != ext_memo_.end()) return it->second;
    std::uint32_t result;
    if (bits_[id].test(x)) {
      result = id;
    } else {
      auto gens = gens_[id];
      gens.push_back(x);
      auto bits = closure_bits(*g_, gens);
      result = intern(std::move(bits), std::move(gens));
    }
    ext_memo_.emplace(key, result);
    return result;
  }

 private:
  std::uint32_t intern(DenseBitset bits, std::vector<ElementId> gens) {
    auto it = index_.find(bits);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(bits_.size());
    index_.emplace(bits, id);
    counts_.push_back(bits.count());
    bits_.push_back(std::move(bits));
    gens_.push_back(std::move(gens));
    return id;
  }

  FiniteGroup const* g_;
  std::uint32_t trivial_ = 0;
  std::vector<DenseBitset> bits_;
  std::vector<std::vector<ElementId>> gens_;
  std::vector<std::size_t> counts_;
  std::unordered_map<DenseBitset, std::uint32_t, DenseBitsetHash> index_;
  std::unordered_map<std::uint64_t, std::uint32_t> ext_memo_;
};

}  // namespace detail

// Exact m(G) and i(G) with witnesses, from one DFS over irredundant sets.
//
// Sets grow in increasing element id (subsets of irredundant sets stay
// irredundant, so the increasing-id tree visits every set once); the first
// element ranges over conjugacy class representatives only. Each node keeps
// the closure and the co-closures cl(S \ {h}); extending by x re-checks
// only the threatened memberships. A generating irredundant set cannot be
// extended, so generation is a leaf condition and m is read off at leaves.
inline RankResult rank_search(FiniteGroup const& g, std::uint64_t node_budget = 10'000'000) {
  RankResult res;
  if (g.order() == 1) return res;  // m = i = 0 via the empty set

  detail::SubgroupInterner interner(g);
  std::uint64_t nodes = 0;

  struct Frame {
    std::vector<ElementId> set;
    std::vector<std::uint32_t> co_closures;  // cl(S \ {h}) per position
    std::uint32_t closure;
  };

  auto record = [&](Frame const& f) {
    int d = static_cast<int>(f.set.size());
    if (d > res.i) {
      res.i = d;
      res.i_witness = f.set;
    }
    if (interner.order(f.closure) == g.order() && d > res.m) {
      res.m = d;
      res.m_witness = f.set;
    }
  };

  auto dfs = [&](auto&& self, Frame const& f) -> void {
    if (++nodes > node_budget) throw CapExceeded("rank search exceeded node budget");
    record(f);
    if (interner.order(f.closure) == g.order()) return;  // generating sets are leaves
    // bound: each extension multiplies |closure| by >= 2
    int potential = static_cast<int>(f.set.size()) +
                    static_cast<int>(detail::omega(g.order() / interner.order(f.closure)));
    if (potential <= res.m && potential <= res.i) return;
    for (ElementId x = f.set.back() + 1; x < g.order(); ++x) {
      if (interner.bits(f.closure).test(x)) continue;
      Frame next;
      next.set = f.set;
      next.set.push_back(x);
      next.closure = interner.extend(f.closure, x);
      bool ok = true;
      next.co_closures.reserve(f.set.size() + 1);
      for (std::size_t h = 0; h < f.set.size(); ++h) {
        std::uint32_t ext = interner.extend(f.co_closures[h], x);
        if (interner.bits(ext).test(f.set[h])) {
          ok = false;
          break;
        }
        next.co_closures.push_back(ext);
      }
      if (!ok) continue;
      next.co_closures.push_back(f.closure);
      self(self, next);
    }
  };

  try {
    for (auto const& cls : g.conjugacy_classes()) {
      ElementId rep = cls[0];
      if (rep == g.identity()) continue;
      Frame f;
      f.set = {rep};
      f.closure = interner.extend(interner.trivial_id(), rep);
      f.co_closures = {interner.trivial_id()};
      dfs(dfs, f);
    }
  } catch (CapExceeded const&) {
    res.exact = false;
  }
  res.nodes = nodes;
  return res;
}

// -------- Certificates (both directions) --------

enum class CertificateKind { family_from_generators, irredundant_from_family };

struct Certificate {
  CertificateKind kind;
  std::vector<ElementId> elements;
  MaximalFamily family;  // elements[i] paired with family.members[i]
};

// From an irredundant generating list, choose for each i the first catalog
// member containing <s \ {g_i}>; the resulting family is in general
// position and pairs off against the generators.
inline Certificate certify_family_from_generators(FiniteGroup const& g,
                                                  std::vector<ElementId> const& gens,
                                                  MaximalCatalog const& cat) {
  if (!is_irredundant(g, gens, true))
    throw std::invalid_argument("input is not an irredundant generating list");
  std::vector<SubgroupSet> members;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<ElementId> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    auto sub = closure_bits(g, rest);
    bool placed = false;
    for (std::size_t c = 0; c < cat.size(); ++c) {
      if (sub.subset_of(cat[c].members)) {
        if (cat[c].members.test(gens[i]))
          throw std::logic_error("maximal overgroup contains the excluded generator");
        members.push_back(cat[c]);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw NoMaximalOvergroup("no catalog member contains the co-singleton closure");
  }
  Certificate cert{CertificateKind::family_from_generators, gens,
                   MaximalFamily::of(g, std::move(members))};
  if (!is_general_position(cert.family))
    throw std::logic_error("certificate family is not in general position");
  return cert;
}

// From a general-position family, pick g_i in (intersection over j != i)
// minus member i (smallest id); the result is irredundant of the same size.
inline Certificate certify_irredundant_from_family(MaximalFamily const& family) {
  auto const& g = *family.parent;
  if (!is_general_position(family))
    throw EmptyDifference("family is not in general position");
  std::size_t const n = family.size();
  std::vector<ElementId> elems;
  for (std::size_t i = 0; i < n; ++i) {
    DenseBitset except = g.all_bits();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) except &= family.members[j].members;
    except.and_not(family.members[i].members);
    auto first = except.find_first();
    if (first == DenseBitset::npos)
      throw EmptyDifference("difference set is empty; family not in general position");
    elems.push_back(static_cast<ElementId>(first));
  }
  if (!is_irredundant(g, elems, false))
    throw std::logic_error("certificate elements are not irredundant");
  Certificate cert{CertificateKind::irredundant_from_family, std::move(elems), family};
  return cert;
}

}  // namespace maxdim

#endif  // MAXDIM_RANK_SEARCH_HPP
