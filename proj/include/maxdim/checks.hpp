#ifndef MAXDIM_CHECKS_HPP
#define MAXDIM_CHECKS_HPP

#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maxdim/config.hpp"
#include "maxdim/corpus.hpp"
#include "maxdim/errors.hpp"
#include "maxdim/goursat.hpp"
#include "maxdim/invariants.hpp"
#include "maxdim/module_action.hpp"
#include "maxdim/psl2.hpp"
#include "maxdim/rank_search.hpp"
#include "maxdim/semidirect.hpp"

#include <json.hpp>

namespace maxdim {

enum class CheckStatus { pass, fail, discrepancy, cap_exceeded };

inline std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::discrepancy: return "discrepancy";
    case CheckStatus::cap_exceeded: return "capExceeded";
  }
  return "?";
}

struct CheckResult {
  std::string check_id;
  std::vector<std::string> instances;
  CheckStatus status = CheckStatus::pass;
  std::map<std::string, std::int64_t> numbers;
  std::vector<std::string> notes;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();

  void require(bool ok, std::string const& what) {
    if (!ok) {
      status = CheckStatus::fail;
      notes.push_back("FAILED: " + what);
    }
  }
};

// ---- witness serialization: generator lists plus subgroup orders ----

inline nlohmann::ordered_json witness_subgroup(FiniteGroup const& g, SubgroupSet const& s) {
  nlohmann::ordered_json j;
  j["order"] = s.order;
  auto gens = nlohmann::ordered_json::array();
  for (auto x : s.generator_ids) gens.push_back(serialize_cycles(g.permutation(x)));
  j["generators"] = gens;
  return j;
}

inline nlohmann::ordered_json witness_family(MaximalFamily const& f) {
  auto arr = nlohmann::ordered_json::array();
  for (auto const& m : f.members) arr.push_back(witness_subgroup(*f.parent, m));
  return arr;
}

inline nlohmann::ordered_json witness_elements(FiniteGroup const& g,
                                               std::vector<ElementId> const& elems) {
  auto arr = nlohmann::ordered_json::array();
  for (auto x : elems) arr.push_back(serialize_cycles(g.permutation(x)));
  return arr;
}

// ---- shared per-run caches ----

class HarnessContext {
 public:
  explicit HarnessContext(Config cfg = default_config(), Corpus corpus = default_corpus())
      : cfg_(cfg), corpus_(std::move(corpus)) {}

  Config const& config() const { return cfg_; }
  Corpus const& corpus() const { return corpus_; }

  std::shared_ptr<CorpusEntry> find(std::string const& name) const {
    for (auto const& e : corpus_)
      if (e->name() == name) return e;
    throw std::invalid_argument("no corpus entry named " + name);
  }

  // catalog: Goursat for direct products (the designed fast path),
  // generic lattice otherwise
  MaximalCatalog const& catalog_for(CorpusEntry const& e) {
    auto it = catalogs_.find(e.name());
    if (it != catalogs_.end()) return it->second;
    auto const& built = e.built(cfg_);
    MaximalCatalog cat;
    if (built.product) {
      auto const& dp = *built.product;
      cat = maximal_subgroups_of_product(dp, maximal_for_group(*dp.left),
                                         maximal_for_group(*dp.right), cfg_.lattice_cap,
                                         cfg_.node_budget, cfg_.seed);
    } else {
      cat = maximal_subgroups(*built.group, cfg_.lattice_cap, cfg_.seed);
    }
    return catalogs_.emplace(e.name(), std::move(cat)).first->second;
  }

  RankResult const& ranks_for(CorpusEntry const& e) {
    auto it = ranks_.find(e.name());
    if (it != ranks_.end()) return it->second;
    return ranks_.emplace(e.name(), rank_search(e.group(cfg_), cfg_.node_budget)).first->second;
  }

  DimResult const& maxdim_for(CorpusEntry const& e) {
    auto it = maxdims_.find(e.name());
    if (it != maxdims_.end()) return it->second;
    auto r = max_dim(e.group(cfg_), catalog_for(e), cfg_.node_budget);
    return maxdims_.emplace(e.name(), std::move(r)).first->second;
  }

  MaximalCatalog maximal_for_group(FiniteGroup const& g) {
    return maximal_subgroups(g, cfg_.lattice_cap, cfg_.seed);
  }

  std::mt19937_64 rng(std::string const& salt) const {
    std::uint64_t h = cfg_.seed;
    for (char c : salt) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return std::mt19937_64(h);
  }

 private:
  Config cfg_;
  Corpus corpus_;
  std::map<std::string, MaximalCatalog> catalogs_;
  std::map<std::string, RankResult> ranks_;
  std::map<std::string, DimResult> maxdims_;
};

// ---- individual checks ----

inline SubgroupSet pi_image(Quotient const& q, SubgroupSet const& sub) {
  return subgroup_from_bitmap(*q.group, q.projection->image_of(sub.members));
}

// Frattini guard: Phi(G/Phi(G)) is trivial.
inline CheckResult check_frattini_guard(HarnessContext& ctx, CorpusEntry const& e) {
  CheckResult r;
  r.check_id = "frattini_guard";
  r.instances = {e.name()};
  auto const& g = e.group(ctx.config());
  try {
    auto phi = frattini(g, ctx.catalog_for(e));
    r.numbers["phiOrder"] = phi.order;
    auto q = quotient_group(g, phi);
    auto qphi = frattini(*q.group, ctx.config().lattice_cap);
    r.numbers["phiOfQuotient"] = qphi.order;
    r.require(qphi.is_trivial(), "Frattini quotient is not Frattini free");
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// m(G) <= MaxDim(G) <= i(G), plus both certificate constructions.
inline CheckResult check_sandwich(HarnessContext& ctx, CorpusEntry const& e) {
  CheckResult r;
  r.check_id = "sandwich";
  r.instances = {e.name()};
  auto const& g = e.group(ctx.config());
  try {
    auto const& rk = ctx.ranks_for(e);
    auto const& md = ctx.maxdim_for(e);
    r.numbers["m"] = rk.m;
    r.numbers["maxdim"] = md.value;
    r.numbers["i"] = rk.i;
    if (!rk.exact || !md.exact) {
      r.status = CheckStatus::cap_exceeded;
      r.notes.push_back("search budget exhausted");
      return r;
    }
    r.require(rk.m <= md.value, "m > MaxDim");
    r.require(md.value <= rk.i, "MaxDim > i");
    if (rk.m >= 1) {
      auto cert = certify_family_from_generators(g, rk.m_witness, ctx.catalog_for(e));
      r.require(is_general_position(cert.family), "generator certificate not in general position");
      r.require(cert.family.size() == static_cast<std::size_t>(rk.m),
                "generator certificate size mismatch");
    }
    auto cert2 = certify_irredundant_from_family(md.witness);
    r.require(is_irredundant(g, cert2.elements, false), "family certificate not irredundant");
    r.require(cert2.elements.size() == static_cast<std::size_t>(md.value),
              "family certificate size mismatch");
    r.witness["mWitness"] = witness_elements(g, rk.m_witness);
    r.witness["maxdimFamily"] = witness_family(md.witness);
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Goursat completeness: product catalog equals the generic catalog as sets.
inline CheckResult check_goursat(HarnessContext& ctx, CorpusEntry const& e) {
  CheckResult r;
  r.check_id = "goursat";
  r.instances = {e.name()};
  auto const& built = e.built(ctx.config());
  if (!built.product) {
    r.notes.push_back("not a direct product; skipped");
    return r;
  }
  if (built.group->order() > ctx.config().lattice_cap) {
    r.notes.push_back("above lattice cap; generic comparison skipped");
    return r;
  }
  try {
    auto const& goursat = ctx.catalog_for(e);
    auto generic = maximal_subgroups(*built.group, ctx.config().lattice_cap, ctx.config().seed);
    r.numbers["goursatEntries"] = static_cast<std::int64_t>(goursat.size());
    r.numbers["genericEntries"] = static_cast<std::int64_t>(generic.size());
    bool equal = goursat.size() == generic.size();
    if (equal)
      for (std::size_t i = 0; i < goursat.size(); ++i)
        if (!(goursat[i].members == generic[i].members)) equal = false;  // both sorted
    r.require(equal, "Goursat catalog differs from the generic catalog");
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// MaxDim(PSL(2,p) x PSL(2,p)) = 2 MaxDim(PSL(2,p)), plus the MaxDim <= 4
// sub-claim for the factor.
inline CheckResult check_psl2_square(HarnessContext& ctx, std::uint32_t p) {
  CheckResult r;
  r.check_id = "psl2_square";
  r.instances = {"PSL(2," + std::to_string(p) + ")"};
  auto const& cfg = ctx.config();
  try {
    auto cat = build_psl2(p, cfg.lattice_cap, cfg.seed);
    auto md = max_dim(*cat.group, cat.maximals, cfg.node_budget);
    r.numbers["maxdimFactor"] = md.value;
    r.require(md.exact, "factor search inexact");
    r.require(md.value <= 4, "MaxDim(PSL(2,p)) exceeds 4");
    auto dp = direct_product(*cat.group, *cat.group);
    auto pcat = maximal_subgroups_of_product(dp, cat.maximals, cat.maximals, cfg.lattice_cap,
                                             cfg.node_budget, cfg.seed);
    r.numbers["catalogEntries"] = static_cast<std::int64_t>(pcat.size());
    auto md2 = max_dim(*dp.group, pcat, cfg.node_budget);
    r.numbers["maxdimSquare"] = md2.value;
    if (!md2.exact) {
      r.status = CheckStatus::cap_exceeded;
      r.notes.push_back("square search hit the node budget; best found recorded");
      return r;
    }
    r.require(md2.value == 2 * md.value, "MaxDim(G x G) != 2 MaxDim(G)");
    r.witness["squareFamily"] = witness_family(md2.witness);
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Collins intersection table for the first three Dickson types.
inline CheckResult check_collins(HarnessContext& ctx, std::uint32_t p) {
  CheckResult r;
  r.check_id = "collins";
  r.instances = {"PSL(2," + std::to_string(p) + ")"};
  try {
    auto cat = build_psl2(p, ctx.config().lattice_cap, ctx.config().seed);
    auto table = collins_table(cat);
    r.require(table.case1_exact, "case (1): some pair intersection is not Z_{(p-1)/2}");
    r.require(table.case2_exact, "case (2): some triple intersection is nontrivial");
    bool case3_ok = true, case4_ok = true, v4_present = false;
    for (auto const& [label, count] : table.case3_outcomes) {
      r.numbers["case3_" + label] = static_cast<std::int64_t>(count);
      if (label != "1" && label != "Z2") case3_ok = false;
    }
    for (auto const& [label, count] : table.case4_outcomes) {
      r.numbers["case4_" + label] = static_cast<std::int64_t>(count);
      if (label == "V4") v4_present = true;
      else if (label != "1" && label != "Z2") case4_ok = false;
    }
    r.require(case3_ok, "case (3): outcome outside {1, Z2}");
    r.require(case4_ok, "case (4): outcome outside {1, Z2, V4}");
    r.require(v4_present, "case (4): stated value V4 never observed");
    for (auto const& d : table.discrepancies) r.notes.push_back(d);
    if (r.status == CheckStatus::pass && !table.discrepancies.empty())
      r.status = CheckStatus::discrepancy;
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Standard/pullback family bounds over S x S.
inline CheckResult check_prop210(HarnessContext& ctx, std::string const& entry_name = "A5") {
  CheckResult r;
  r.check_id = "pullback_bound";
  r.instances = {entry_name};
  auto const& cfg = ctx.config();
  try {
    auto entry = ctx.find(entry_name);
    auto const& g = entry->group(cfg);
    if (!is_simple(g, cfg.lattice_cap)) {
      r.require(false, "entry is not simple");
      return r;
    }
    auto const& rk = ctx.ranks_for(*entry);
    auto cat = ctx.maximal_for_group(g);
    auto md = max_dim(g, cat, cfg.node_budget);
    auto dp = direct_product(g, g);
    auto pcat = maximal_subgroups_of_product(dp, cat, cat, cfg.lattice_cap, cfg.node_budget,
                                             cfg.seed);
    std::vector<DenseBitset> standard_only;
    GpSearch full(
        [&] {
          std::vector<DenseBitset> v;
          for (auto const& entry2 : pcat.entries) v.push_back(entry2.subgroup.members);
          return v;
        }(),
        dp.group->all_bits());
    for (std::size_t i = 0; i < pcat.size(); ++i) {
      if (pcat.entries[i].provenance == MaximalProvenance::pullback)
        full.mark(i);
      else
        standard_only.push_back(pcat.entries[i].subgroup.members);
    }
    full.restrict_first_level(detail::catalog_conjugacy_reps(*dp.group, pcat));
    auto res = full.run(cfg.node_budget);
    GpSearch std_search(std::move(standard_only), dp.group->all_bits());
    auto std_res = std_search.run(cfg.node_budget);
    r.numbers["maxdimFactor"] = md.value;
    r.numbers["iFactor"] = rk.i;
    r.numbers["bestAllStandard"] = std_res.value;
    r.numbers["bestWithPullback"] = res.value_with_marked;
    if (!res.exact || !std_res.exact || !md.exact || !rk.exact) {
      r.status = CheckStatus::cap_exceeded;
      r.notes.push_back("search budget exhausted");
      return r;
    }
    r.require(std_res.value <= 2 * md.value, "all-standard family exceeds 2 MaxDim(S)");
    r.require(res.value_with_marked <= rk.i + 1, "pullback family exceeds i(S) + 1");
    r.require(res.value_with_marked >= 3, "no pullback family of size 3 found");
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Bounds on l from the rearrangement procedure, for the max_dim witness and
// 20 seeded random general-position families.
inline CheckResult check_prop33(HarnessContext& ctx, std::string const& entry_name,
                                std::uint32_t normal_order) {
  CheckResult r;
  r.check_id = "prop33";
  r.instances = {entry_name + " / N of order " + std::to_string(normal_order)};
  auto const& cfg = ctx.config();
  try {
    auto entry = ctx.find(entry_name);
    auto const& g = entry->group(cfg);
    auto normals = normal_subgroups(g, cfg.lattice_cap);
    SubgroupSet const* n = nullptr;
    for (auto const& cand : normals)
      if (cand.order == normal_order) {
        n = &cand;
        break;
      }
    if (!n) {
      r.require(false, "no normal subgroup of the requested order");
      return r;
    }
    auto const& cat = ctx.catalog_for(*entry);
    auto const& md = ctx.maxdim_for(*entry);
    int maxdim_h = md.value;

    // the relative/under-action values depend on the family; collect
    // families to exercise
    std::vector<MaximalFamily> families{md.witness};
    auto rng = ctx.rng("prop33:" + entry_name);
    int attempts = 0;
    while (families.size() < 21 && attempts < 2000) {
      ++attempts;
      std::size_t sz = 1 + rng() % 4;
      std::set<std::size_t> pick;
      while (pick.size() < sz) pick.insert(rng() % cat.size());
      std::vector<SubgroupSet> members;
      for (auto i : pick) members.push_back(cat[i]);
      auto fam = MaximalFamily::of(g, std::move(members));
      if (is_general_position(fam)) families.push_back(std::move(fam));
    }
    r.numbers["familiesTested"] = static_cast<std::int64_t>(families.size());

    bool abelian_case = false;
    int maxdim_hn = 0, maxdim_under = 0;
    // N / Phi(N) abelian <=> N' inside Phi(N)
    auto lat_n = all_subgroups_within(g, n->members, cfg.lattice_cap);
    DenseBitset phi_n = n->members;
    for (auto const& s : lat_n.subgroups) {
      if (s.order >= n->order) continue;
      bool covered = false;
      for (auto const& t : lat_n.subgroups)
        if (t.order < n->order && t.order > s.order && s.members.subset_of(t.members))
          covered = true;
      if (!covered) phi_n &= s.members;
    }
    auto derived_n = derived_subgroup_of(g, *n);
    abelian_case = derived_n.members.subset_of(phi_n);
    auto q = quotient_group(g, *n);
    auto qcat = ctx.maximal_for_group(*q.group);
    if (abelian_case) {
      maxdim_hn = max_dim(*q.group, qcat, cfg.node_budget).value;
      ActorSet actors;
      actors.conjugators = g.generator_ids();
      auto inv = maximal_invariant_subgroups(g, *n, actors, cfg.lattice_cap);
      maxdim_under = maxdim_under_action(*n, inv, cfg.node_budget).value;
      r.numbers["maxdimQuotient"] = maxdim_hn;
      r.numbers["maxdimUnderAction"] = maxdim_under;
    }
    r.numbers["maxdimH"] = maxdim_h;
    r.numbers["abelianCase"] = abelian_case ? 1 : 0;
    auto qrk = rank_search(*q.group, cfg.node_budget);

    for (auto const& fam : families) {
      auto split = whiston_split(g, fam, *n);
      int l = static_cast<int>(split.l);
      auto pr = pi_image(q, split.big_radical);
      auto rel = relative_maxdim(*q.group, pr, qcat, cfg.node_budget);
      r.require(l <= maxdim_h - rel.value,
                "l > MaxDim(H) - MaxDim(H/N, pi(R)) for a family of size " +
                    std::to_string(fam.size()));
      if (abelian_case) {
        r.require(l <= maxdim_h - maxdim_hn, "l > MaxDim(H) - MaxDim(H/N)");
        r.require(l <= maxdim_under, "l > MaxDim_H(N)");
      }
      // quotient bound from the rearrangement
      r.require(static_cast<int>(fam.size()) - l <= qrk.i, "k - l > i(G/N)");
    }
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// MaxDim(N x| T) = MaxDim_T(N) + MaxDim(T) for abelian N and flat T.
struct Cor35Instance {
  std::string name;
  Fel p;
  std::size_t dim;
  std::string top_spec;
  std::vector<std::vector<Fel>> matrices;  // row-major per generator
};

inline CheckResult check_cor35(HarnessContext& ctx, Cor35Instance const& inst) {
  CheckResult r;
  r.check_id = "cor35";
  r.instances = {inst.name};
  auto const& cfg = ctx.config();
  try {
    auto top_built = build_group(parse_group_spec(inst.top_spec), cfg.element_cap,
                                 cfg.lattice_cap);
    auto const& t = *top_built.group;
    std::vector<FpMatrix> mats;
    for (auto const& rowmajor : inst.matrices) {
      FpMatrix m(inst.dim, inst.dim, inst.p);
      m.a.assign(rowmajor.begin(), rowmajor.end());
      mats.push_back(std::move(m));
    }
    auto mod = std::make_shared<ModuleAction const>(t, inst.p, inst.dim, std::move(mats));
    // T must be flat (m = i), per the statement's hypothesis
    auto trk = rank_search(t, cfg.node_budget);
    r.require(trk.m == trk.i, "top group is not flat");
    auto tcat = ctx.maximal_for_group(t);
    int maxdim_t = max_dim(t, tcat, cfg.node_budget).value;

    // module side: general position over maximal submodules
    auto maxsubs = maximal_submodules(*mod, cfg.module_universe_cap);
    std::vector<DenseBitset> cands;
    for (auto const& s : maxsubs) cands.push_back(subspace_bits(s, inst.dim, inst.p));
    std::uint64_t universe = 1;
    for (std::size_t i = 0; i < inst.dim; ++i) universe *= inst.p;
    GpSearch msearch(std::move(cands), DenseBitset(universe, true));
    int maxdim_under = msearch.run(cfg.node_budget).value;

    SemidirectDescription desc;
    desc.module = mod;
    desc.summands = {FpMatrix::identity(inst.dim, inst.p)};
    auto mat = materialize_semidirect(desc, cfg.element_cap);
    auto mcat = ctx.maximal_for_group(*mat.group);
    auto md = max_dim(*mat.group, mcat, cfg.node_budget);
    r.numbers["maxdimSemidirect"] = md.value;
    r.numbers["maxdimUnderAction"] = maxdim_under;
    r.numbers["maxdimTop"] = maxdim_t;
    r.require(md.value == maxdim_under + maxdim_t,
              "MaxDim(N x| T) != MaxDim_T(N) + MaxDim(T)");
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// MaxDim = m whenever the derived subgroup is nilpotent.
inline CheckResult check_thm43_entry(HarnessContext& ctx, CorpusEntry const& e) {
  CheckResult r;
  r.check_id = "thm43";
  r.instances = {e.name()};
  auto const& cfg = ctx.config();
  auto const& g = e.group(cfg);
  try {
    auto der = derived_subgroup(g);
    bool hyp = is_nilpotent_subgroup(g, der);
    r.numbers["derivedOrder"] = der.order;
    r.numbers["hypothesis"] = hyp ? 1 : 0;
    if (!hyp) {
      r.notes.push_back("derived subgroup not nilpotent; skipped");
      return r;
    }
    auto const& rk = ctx.ranks_for(e);
    auto const& md = ctx.maxdim_for(e);
    r.numbers["m"] = rk.m;
    r.numbers["maxdim"] = md.value;
    if (!rk.exact || !md.exact) {
      r.status = CheckStatus::cap_exceeded;
      return r;
    }
    r.require(md.value == rk.m, "MaxDim != m despite nilpotent derived subgroup");
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Scan for minimal-order corpus entries with m < i.
inline CheckResult check_nonflat(HarnessContext& ctx, std::uint32_t max_order) {
  CheckResult r;
  r.check_id = "nonflat";
  r.instances = {"corpus up to order " + std::to_string(max_order)};
  r.notes.push_back("flat means m(G) = i(G) (inferred terminology)");
  std::uint32_t smallest = 0;
  for (auto const& e : ctx.corpus()) {
    auto const& g = e->group(ctx.config());
    if (g.order() > max_order) continue;
    auto const& rk = ctx.ranks_for(*e);
    if (!rk.exact) {
      r.status = CheckStatus::cap_exceeded;
      continue;
    }
    if (rk.m < rk.i) {
      r.notes.push_back("non-flat: " + e->name() + " (order " + std::to_string(g.order()) +
                        ", m=" + std::to_string(rk.m) + ", i=" + std::to_string(rk.i) + ")");
      if (smallest == 0 || g.order() < smallest) smallest = g.order();
    }
  }
  r.numbers["smallestNonflatOrder"] = smallest;
  r.notes.push_back("corpus scan only; not exhaustive over isomorphism types");
  return r;
}

// Additivity sweep with hypothesis dispatch: solvable factor (cheapest),
// then no common nonabelian simple quotient, then a factor with MaxDim = i.
// Without any hypothesis the comparison is recorded as evidence, never as
// a failure.
inline CheckResult check_additivity(HarnessContext& ctx, std::string const& left,
                                    std::string const& right) {
  CheckResult r;
  r.check_id = "additivity";
  r.instances = {left, right};
  auto const& cfg = ctx.config();
  try {
    auto le = ctx.find(left);
    auto re = ctx.find(right);
    auto const& lg = le->group(cfg);
    auto const& rg = re->group(cfg);
    std::string hypothesis = "none";
    if (is_solvable(lg) || is_solvable(rg)) {
      hypothesis = "solvableFactor";
    } else if (!common_nonabelian_simple_quotient(lg, rg, cfg.lattice_cap, cfg.node_budget)
                    .found) {
      hypothesis = "noCommonSimpleQuotient";
    } else {
      auto const& lrk = ctx.ranks_for(*le);
      auto const& rrk = ctx.ranks_for(*re);
      if (ctx.maxdim_for(*le).value == lrk.i || ctx.maxdim_for(*re).value == rrk.i)
        hypothesis = "maxdimEqualsIFactor";
    }
    r.notes.push_back("hypothesis: " + hypothesis);
    int ml = ctx.maxdim_for(*le).value;
    int mr = ctx.maxdim_for(*re).value;
    auto dp = direct_product(lg, rg, cfg.element_cap);
    auto pcat = maximal_subgroups_of_product(dp, ctx.catalog_for(*le), ctx.catalog_for(*re),
                                             cfg.lattice_cap, cfg.node_budget, cfg.seed);
    auto md = max_dim(*dp.group, pcat, cfg.node_budget);
    r.numbers["maxdimLeft"] = ml;
    r.numbers["maxdimRight"] = mr;
    r.numbers["maxdimProduct"] = md.value;
    if (!md.exact) {
      r.status = CheckStatus::cap_exceeded;
      return r;
    }
    if (hypothesis != "none") {
      r.require(md.value == ml + mr, "additivity fails under hypothesis " + hypothesis);
    } else if (md.value != ml + mr) {
      r.status = CheckStatus::discrepancy;
      r.notes.push_back("no hypothesis applies; unequal values recorded as evidence only");
    } else {
      r.notes.push_back("no hypothesis applies; equality recorded as evidence");
    }
    // harness invariant: Goursat equals generic for products within the cap
    if (dp.group->order() <= cfg.lattice_cap) {
      auto generic = maximal_subgroups(*dp.group, cfg.lattice_cap, cfg.seed);
      bool equal = generic.size() == pcat.size();
      if (equal)
        for (std::size_t i = 0; i < pcat.size(); ++i)
          if (!(pcat[i].members == generic[i].members)) equal = false;
      r.require(equal, "Goursat/generic catalog mismatch on the product");
    }
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// Stab(f) = H for seeded random (S, H, p) triples.
inline CheckResult check_lemma45(HarnessContext& ctx, std::size_t trials = 10,
                                 std::uint32_t max_order = 60) {
  CheckResult r;
  r.check_id = "lemma45";
  r.instances = {"seeded random triples"};
  auto rng = ctx.rng("lemma45");
  std::vector<std::shared_ptr<CorpusEntry>> pool;
  for (auto const& e : ctx.corpus()) {
    auto const& g = e->group(ctx.config());
    if (g.order() > 1 && g.order() <= max_order) pool.push_back(e);
  }
  std::uint32_t const primes[] = {2, 3, 5, 7, 11, 13};
  std::size_t done = 0;
  while (done < trials) {
    auto const& e = pool[rng() % pool.size()];
    auto const& g = e->group(ctx.config());
    std::uint32_t p = primes[rng() % 6];
    if (g.order() % p == 0) continue;
    auto lat = all_subgroups(g, ctx.config().lattice_cap);
    auto const& h = lat.subgroups[rng() % lat.subgroups.size()];
    try {
      auto ind = induce_trivial_module(g, h, p);
      r.require(ind.vec.stabilizer.members == h.members, "stabilizer differs from H");
      r.notes.push_back(e->name() + ", |H|=" + std::to_string(h.order) +
                        ", p=" + std::to_string(p) + ", dim=" +
                        std::to_string(ind.module->dim()) + ": ok");
    } catch (LemmaViolation const& ex) {
      r.require(false, std::string("lemma violation: ") + ex.what());
    }
    ++done;
  }
  r.numbers["trials"] = static_cast<std::int64_t>(done);
  return r;
}

// m and i of Z_p wr Z_p.
inline CheckResult check_wreath(HarnessContext& ctx, std::uint32_t p) {
  CheckResult r;
  r.check_id = "wreath";
  r.instances = {"Z" + std::to_string(p) + " wr Z" + std::to_string(p)};
  try {
    auto entry = ctx.find(p == 2 ? "Z2wrZ2" : "Z3wrZ3");
    auto const& rk = ctx.ranks_for(*entry);
    r.numbers["m"] = rk.m;
    r.numbers["i"] = rk.i;
    if (!rk.exact) {
      r.status = CheckStatus::cap_exceeded;
      return r;
    }
    r.require(rk.m == 2, "m != 2");
    r.require(rk.i == static_cast<int>(p), "i != p");
    r.witness["iWitness"] = witness_elements(entry->group(ctx.config()), rk.i_witness);
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

// The full construction: structured family in general position of size
// m + i(S); footnote-style m(V x| S) = m(S) + (number of irreducible
// components); strict m < MaxDim exhibited when S is non-flat; exact
// equality and structured/bitmap agreement when materializable.
inline CheckResult check_prop44(HarnessContext& ctx, std::string const& top_spec, Fel p) {
  CheckResult r;
  r.check_id = "prop44";
  r.instances = {top_spec + " @ p=" + std::to_string(p)};
  auto const& cfg = ctx.config();
  try {
    auto built = build_group(parse_group_spec(top_spec), cfg.element_cap, cfg.lattice_cap);
    auto const& s = *built.group;
    auto rng = ctx.rng("prop44:" + top_spec);
    auto con = build_prop44(s, p, rng, cfg.node_budget, cfg.meataxe_retries,
                            cfg.meataxe_word_len, cfg.exhaustive_spin_cap);
    r.numbers["iTop"] = con.top_ranks.i;
    r.numbers["mTop"] = con.top_ranks.m;
    r.numbers["dimV"] = static_cast<std::int64_t>(con.desc.dim());
    r.numbers["summands"] = static_cast<std::int64_t>(con.m_summands);
    r.numbers["familySize"] = static_cast<std::int64_t>(con.family.size());
    r.numbers["replacementFailures"] =
        static_cast<std::int64_t>(con.replacement_failed.size());
    if (!con.replacement_failed.empty()) {
      r.status = CheckStatus::discrepancy;
      r.notes.push_back("replacement failed for some spins; strictness claim downgraded");
    }

    auto gp = structured_general_position(con.family);
    r.require(gp.in_general_position, "structured family not in general position");

    // pi(R cap T_k) must equal H_k (R = the meet of everything except T_k's
    // companions); check the projection of the full family footprint
    for (std::size_t k = 0; k < con.n_distinguished; ++k) {
      std::vector<StructuredSubgroup> meet;
      for (std::size_t i = 0; i < con.m_summands; ++i) meet.push_back(con.family[i]);
      meet.push_back(con.family[con.m_summands + k]);
      auto proj = structured_projection(meet);
      r.require(proj == con.desc.stabilizers[k].members,
                "projection of the T_k meet differs from H_k");
    }

    // footnote formula: m(V x| S) = m(S) + number of irreducible components
    std::int64_t m_semidirect =
        con.top_ranks.m + static_cast<std::int64_t>(con.irreducible_components);
    r.numbers["mSemidirect"] = m_semidirect;
    bool nonflat = con.top_ranks.i > con.top_ranks.m;
    if (nonflat && con.replacement_failed.empty()) {
      r.require(static_cast<std::int64_t>(con.family.size()) > m_semidirect,
                "family does not exceed m(V x| S)");
      r.notes.push_back("m < MaxDim exhibited: family size " +
                        std::to_string(con.family.size()) + " > m = " +
                        std::to_string(m_semidirect));
    }

    // materialized cross-check whenever the explicit group fits the caps
    std::uint64_t vcount = 1;
    for (std::size_t i = 0; i < con.desc.dim(); ++i) vcount *= p;
    if (vcount * s.order() <= cfg.element_cap &&
        vcount * s.order() <= cfg.lattice_cap) {
      auto mat = materialize_semidirect(con.desc, cfg.element_cap);
      std::vector<SubgroupSet> bitmap_family;
      for (auto const& member : con.family)
        bitmap_family.push_back(subgroup_from_bitmap(*mat.group, mat.member_bits(member)));
      r.require(is_general_position(*mat.group, bitmap_family),
                "materialized family disagrees on general position");
      auto mcat = ctx.maximal_for_group(*mat.group);
      auto md = max_dim(*mat.group, mcat, cfg.node_budget);
      r.numbers["maxdimMaterialized"] = md.value;
      r.require(md.value == static_cast<int>(con.family.size()),
                "exact MaxDim differs from m + i(S)");
      r.notes.push_back("materialized cross-check at order " +
                        std::to_string(mat.group->order()));
    }
  } catch (CapExceeded const& ex) {
    r.status = CheckStatus::cap_exceeded;
    r.notes.push_back(ex.what());
  }
  return r;
}

}  // namespace maxdim

#endif  // MAXDIM_CHECKS_HPP
