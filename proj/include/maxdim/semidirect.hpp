#ifndef MAXDIM_SEMIDIRECT_HPP
#define MAXDIM_SEMIDIRECT_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/fp.hpp"
#include "maxdim/group.hpp"
#include "maxdim/module_action.hpp"
#include "maxdim/rank_search.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

// V x| S for a module V, with a fixed direct decomposition V = W_1 + ... +
// W_m and distinguished vectors v_1..v_n spanning the first n summands.
struct SemidirectDescription {
  std::shared_ptr<ModuleAction const> module;  // V with the S action
  std::vector<FpMatrix> summands;              // RREF bases, independent, spanning
  std::vector<FpVector> distinguished;         // v_1..v_n, v_k in summands[k]
  std::vector<SubgroupSet> stabilizers;        // Stab(v_k)

  FiniteGroup const& top() const { return module->group(); }
  Fel p() const { return module->p(); }
  std::size_t dim() const { return module->dim(); }
  std::size_t n_distinguished() const { return distinguished.size(); }

  void validate() const {
    FpMatrix stack(0, dim(), p());
    for (auto const& w : summands) {
      for (std::size_t r = 0; r < w.rows; ++r) stack.push_row(w.row(r));
      // invariance of each summand
      for (std::size_t j = 0; j < top().generator_count(); ++j)
        for (std::size_t r = 0; r < w.rows; ++r)
          if (!fp_in_row_space(w, fp_apply(module->generator_matrix(j), w.row(r))))
            throw std::logic_error("summand is not invariant");
    }
    auto pivots = fp_rref(stack);
    if (pivots.size() != dim()) throw std::logic_error("summands do not span");
    std::size_t total = 0;
    for (auto const& w : summands) total += w.rows;
    if (total != dim()) throw std::logic_error("summands are not independent");
    for (std::size_t k = 0; k < distinguished.size(); ++k)
      if (!fp_in_row_space(summands[k], distinguished[k]))
        throw std::logic_error("distinguished vector outside its summand");
  }
};

// Symbolic subgroup {(u + t - s.t, s) : u in U, s in T} of V x| S.
// Membership of (w, s): s in T and w - (t - s.t) in U. The twist is stored
// reduced mod U (t and t + u describe the same subgroup).
struct StructuredSubgroup {
  SemidirectDescription const* parent = nullptr;
  FpMatrix subspace;  // U, RREF
  FpVector twist;     // reduced mod U
  SubgroupSet top_subgroup;

  FpVector offset(ElementId s) const {
    auto const& mod = *parent->module;
    return fp_sub(twist, mod.act(s, twist), mod.p());
  }

  bool contains(FpVector const& w, ElementId s) const {
    if (!top_subgroup.members.test(s)) return false;
    return fp_in_row_space(subspace, fp_sub(w, offset(s), parent->p()));
  }
};

inline StructuredSubgroup make_structured(SemidirectDescription const& desc, FpMatrix subspace,
                                          FpVector twist, SubgroupSet top,
                                          std::uint64_t seed = 1) {
  StructuredSubgroup s;
  s.parent = &desc;
  s.subspace = fp_row_space(std::move(subspace));
  s.twist = fp_reduce(s.subspace, std::move(twist));
  s.top_subgroup = std::move(top);
  // closure spot check on random pairs
  std::mt19937_64 rng(seed);
  auto const& mod = *desc.module;
  Fel p = desc.p();
  auto random_member = [&]() -> std::pair<FpVector, ElementId> {
    FpVector u(desc.dim(), 0);
    for (std::size_t r = 0; r < s.subspace.rows; ++r)
      u = fp_add(u, fp_scale(s.subspace.row(r), static_cast<Fel>(rng() % p), p), p);
    auto ids = s.top_subgroup.members.to_ids();
    ElementId e = ids[rng() % ids.size()];
    return {fp_add(u, s.offset(e), p), e};
  };
  for (int t = 0; t < 8; ++t) {
    auto [w1, s1] = random_member();
    auto [w2, s2] = random_member();
    FpVector w = fp_add(w1, mod.act(s1, w2), p);
    ElementId ss = desc.top().mul(s1, s2);
    if (!s.contains(w, ss))
      throw std::logic_error("structured subgroup not closed under multiplication");
  }
  return s;
}

// Affine solution set {w : (w, s) in every member except j} for fixed s.
inline FpAffine structured_meet(std::vector<StructuredSubgroup> const& family, ElementId s,
                                std::size_t skip) {
  auto const& desc = *family[0].parent;
  FpAffine a = FpAffine::whole(desc.dim(), desc.p());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i == skip) continue;
    if (!family[i].top_subgroup.members.test(s)) return FpAffine{};
    a = fp_affine_intersect(a, family[i].subspace, family[i].offset(s));
    if (!a.nonempty) return a;
  }
  return a;
}

// General position of a structured family, by exhibiting witnesses: for
// each j some (w, s) in the intersection of the others but outside member
// j. Iterates s over the top group and solves the affine membership system
// over F_p; never materializes V x| S.
struct StructuredGpResult {
  bool in_general_position = false;
  std::vector<std::pair<FpVector, ElementId>> witnesses;  // per j
  std::vector<std::size_t> missing;                       // j with no witness
};

inline StructuredGpResult structured_general_position(
    std::vector<StructuredSubgroup> const& family) {
  StructuredGpResult res;
  if (family.empty()) {
    res.in_general_position = true;
    return res;
  }
  auto const& desc = *family[0].parent;
  for (auto const& m : family)
    if (m.parent != &desc) throw MixedParents("structured members of different semidirects");
  Fel p = desc.p();
  for (std::size_t j = 0; j < family.size(); ++j) {
    bool found = false;
    for (ElementId s = 0; s < desc.top().order() && !found; ++s) {
      FpAffine a = structured_meet(family, s, j);
      if (!a.nonempty) continue;
      if (!family[j].top_subgroup.members.test(s)) {
        res.witnesses.emplace_back(a.point, s);
        found = true;
        break;
      }
      FpVector cj = family[j].offset(s);
      if (!fp_in_row_space(family[j].subspace, fp_sub(a.point, cj, p))) {
        res.witnesses.emplace_back(a.point, s);
        found = true;
        break;
      }
      for (std::size_t r = 0; r < a.directions.rows; ++r) {
        if (!fp_in_row_space(family[j].subspace, a.directions.row(r))) {
          res.witnesses.emplace_back(fp_add(a.point, a.directions.row(r), p), s);
          found = true;
          break;
        }
      }
    }
    if (!found) {
      res.missing.push_back(j);
      res.witnesses.emplace_back(FpVector{}, kNoElement);
    }
  }
  res.in_general_position = res.missing.empty();
  return res;
}

// {s in S : some (w, s) lies in every member} -- the projection of the
// intersection onto the top group.
inline DenseBitset structured_projection(std::vector<StructuredSubgroup> const& family) {
  auto const& desc = *family[0].parent;
  DenseBitset bits(desc.top().order());
  for (ElementId s = 0; s < desc.top().order(); ++s)
    if (structured_meet(family, s, family.size()).nonempty) bits.set(s);
  return bits;
}

// ---- Materialization ----

// Explicit permutation group for V x| S, acting on the p^dim vector points
// plus |S| regular points (the affine action alone can have kernel).
struct MaterializedSemidirect {
  GroupPtr group;
  SemidirectDescription const* desc = nullptr;
  std::uint64_t vcount = 0;

  ElementId element_of(FpVector const& w, ElementId s) const;
  std::pair<FpVector, ElementId> decompose(ElementId x) const;
  DenseBitset member_bits(StructuredSubgroup const& m) const;
};

inline MaterializedSemidirect materialize_semidirect(SemidirectDescription const& desc,
                                                     std::uint32_t element_cap = 50'000) {
  auto const& s = desc.top();
  auto const& mod = *desc.module;
  Fel p = desc.p();
  std::uint64_t vcount = 1;
  for (std::size_t i = 0; i < desc.dim(); ++i) vcount *= p;
  std::uint64_t order = vcount * s.order();
  if (order > element_cap) throw CapExceeded("semidirect product order exceeds cap");
  std::uint64_t degree = vcount + s.order();
  if (degree > 65'000) throw CapExceeded("semidirect carrier degree too large");

  std::vector<Permutation> gens;
  // translations by the standard basis of V
  for (std::size_t b = 0; b < desc.dim(); ++b) {
    std::vector<Point> im(degree);
    for (std::uint64_t x = 0; x < vcount; ++x) {
      FpVector v = index_vector(x, desc.dim(), p);
      v[b] = (v[b] + 1) % p;
      im[x] = static_cast<Point>(vector_index(v, p));
    }
    for (std::uint32_t q = 0; q < s.order(); ++q)
      im[vcount + q] = static_cast<Point>(vcount + q);
    gens.emplace_back(std::move(im));
  }
  // the top group: module action on V points, left regular on S points
  for (std::size_t j = 0; j < s.generator_count(); ++j) {
    std::vector<Point> im(degree);
    for (std::uint64_t x = 0; x < vcount; ++x)
      im[x] = static_cast<Point>(
          vector_index(fp_apply(mod.generator_matrix(j), index_vector(x, desc.dim(), p)), p));
    for (ElementId q = 0; q < s.order(); ++q)
      im[vcount + q] = static_cast<Point>(vcount + s.mul(s.generator_id(j), q));
    gens.emplace_back(std::move(im));
  }

  MaterializedSemidirect out;
  out.desc = &desc;
  out.vcount = vcount;
  out.group = std::make_shared<FiniteGroup const>(std::move(gens), element_cap);
  if (out.group->order() != order)
    throw std::logic_error("semidirect order mismatch");
  return out;
}

inline ElementId MaterializedSemidirect::element_of(FpVector const& w, ElementId s) const {
  auto const& top = desc->top();
  auto const& mod = *desc->module;
  std::uint64_t degree = vcount + top.order();
  std::vector<Point> im(degree);
  for (std::uint64_t x = 0; x < vcount; ++x) {
    FpVector v = mod.act(s, index_vector(x, desc->dim(), mod.p()));
    im[x] = static_cast<Point>(vector_index(fp_add(v, w, mod.p()), mod.p()));
  }
  for (ElementId q = 0; q < top.order(); ++q)
    im[vcount + q] = static_cast<Point>(vcount + top.mul(s, q));
  return group->find(Permutation(std::move(im)));
}

inline std::pair<FpVector, ElementId> MaterializedSemidirect::decompose(ElementId x) const {
  auto im = group->images(x);
  FpVector w = index_vector(im[0], desc->dim(), desc->p());  // image of the zero vector
  ElementId s = static_cast<ElementId>(im[vcount] - vcount);  // image of the identity point
  return {std::move(w), s};
}

inline DenseBitset MaterializedSemidirect::member_bits(StructuredSubgroup const& m) const {
  DenseBitset bits(group->order());
  for (ElementId x = 0; x < group->order(); ++x) {
    auto [w, s] = decompose(x);
    if (m.contains(w, s)) bits.set(x);
  }
  return bits;
}

// ---- The full construction behind the m < MaxDim examples ----

struct Prop44Construction {
  SemidirectDescription desc;
  std::vector<StructuredSubgroup> family;  // M_1..M_m then T_1..T_n
  std::size_t m_summands = 0;
  std::size_t n_distinguished = 0;
  RankResult top_ranks;
  std::vector<std::size_t> replacement_failed;  // indices k with reducible spin kept
  std::size_t irreducible_components = 0;       // of V, counting failed spins' parts
};

namespace detail {

inline FpVector express_in_basis(FpMatrix const& basis, FpVector const& v) {
  FpMatrix bt(basis.cols, basis.rows, basis.p);
  for (std::size_t i = 0; i < basis.rows; ++i)
    for (std::size_t j = 0; j < basis.cols; ++j) bt.at(j, i) = basis.at(i, j);
  auto sol = fp_solve(bt, v);
  if (!sol.solvable) throw std::logic_error("vector not in subspace");
  return sol.particular;
}

}  // namespace detail

// Builds V = directsum of induced modules for the stabilizers H_k =
// <witness \ {g_k}> of an irredundant set of maximal size, replaces each
// distinguished vector by an irreducible-component projection when its spin
// is reducible (keeping the stabilizer family in general position), fixes
// the decomposition W_1..W_m with the first n summands spanned by the
// distinguished vectors, and emits the structured family {M_i} u {T_k}.
inline Prop44Construction build_prop44(FiniteGroup const& s, Fel p, std::mt19937_64& rng,
                                       std::uint64_t node_budget = 10'000'000,
                                       std::uint32_t meataxe_retries = 50,
                                       std::uint32_t meataxe_word_len = 6,
                                       std::uint64_t exhaustive_cap = 1'000'000) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (s.order() % p == 0) throw PrimeDividesOrder("p divides |S|");

  Prop44Construction out;
  out.top_ranks = rank_search(s, node_budget);
  if (!out.top_ranks.exact) throw CapExceeded("i(S) search hit the node budget");
  auto const& witness = out.top_ranks.i_witness;
  std::size_t n = witness.size();
  out.n_distinguished = n;

  std::vector<SubgroupSet> stabs;
  std::vector<InducedModule> induced;
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<ElementId> rest;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) rest.push_back(witness[j]);
    stabs.push_back(closure(s, rest));
    induced.push_back(induce_trivial_module(s, stabs.back(), p));
    offsets.push_back(dim);
    dim += induced.back().module->dim();
  }
  if (!is_general_position(s, stabs))
    throw std::logic_error("co-singleton stabilizers not in general position");

  // combined module: block diagonal
  std::vector<FpMatrix> gens;
  for (std::size_t j = 0; j < s.generator_count(); ++j) {
    FpMatrix m(dim, dim, p);
    for (std::size_t k = 0; k < n; ++k) {
      auto const& blk = induced[k].module->generator_matrix(j);
      for (std::size_t r = 0; r < blk.rows; ++r)
        for (std::size_t c = 0; c < blk.cols; ++c)
          m.at(offsets[k] + r, offsets[k] + c) = blk.at(r, c);
    }
    gens.push_back(std::move(m));
  }
  auto module = std::make_shared<ModuleAction const>(s, p, dim, std::move(gens));

  std::vector<FpVector> vecs(n);
  for (std::size_t k = 0; k < n; ++k) {
    vecs[k].assign(dim, 0);
    for (std::size_t i = 0; i < induced[k].module->dim(); ++i)
      vecs[k][offsets[k] + i] = induced[k].vec.coords[i];
  }

  // ensure each v_k spans an irreducible summand, replacing by a component
  // projection when necessary (the stabilizer family must stay in general
  // position; if no component works, keep the reducible spin and flag it)
  std::vector<FpMatrix> w_first(n);
  for (std::size_t k = 0; k < n; ++k) {
    FpMatrix sp = spin(*module, vecs[k]);
    auto restricted = detail::restrict_action(*module, sp);
    auto ir = test_irreducible(restricted, rng, meataxe_retries, meataxe_word_len,
                               exhaustive_cap);
    if (ir.irreducible) {
      w_first[k] = std::move(sp);
      continue;
    }
    auto comps = module_decompose(restricted, rng, meataxe_retries, meataxe_word_len,
                                  exhaustive_cap);
    // coordinates of v_k with respect to the stacked component bases
    FpMatrix stacked(0, sp.rows, p);
    for (auto const& c : comps)
      for (std::size_t r = 0; r < c.rows; ++r) stacked.push_row(c.row(r));
    FpVector v_in_sp = detail::express_in_basis(sp, vecs[k]);
    FpVector coords = detail::express_in_basis(stacked, v_in_sp);
    bool replaced = false;
    std::size_t pos = 0;
    for (auto const& c : comps) {
      FpVector part_sp(sp.rows, 0);
      for (std::size_t r = 0; r < c.rows; ++r)
        if (coords[pos + r])
          part_sp = fp_add(part_sp, fp_scale(c.row(r), coords[pos + r], p), p);
      pos += c.rows;
      if (fp_is_zero(part_sp)) continue;
      FpVector part = detail::lift(sp, part_sp);
      SubgroupSet new_stab = module->stabilizer(part);
      auto trial = stabs;
      trial[k] = new_stab;
      if (is_general_position(s, trial)) {
        stabs = std::move(trial);
        vecs[k] = part;
        w_first[k] = spin(*module, part);
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.replacement_failed.push_back(k);
      w_first[k] = std::move(sp);
    }
  }

  // complete the decomposition: inside each block, complement of W_k and
  // its full splitting
  out.desc.module = module;
  out.desc.summands = w_first;
  for (std::size_t k = 0; k < n; ++k) {
    FpMatrix block(0, dim, p);
    for (std::size_t i = 0; i < induced[k].module->dim(); ++i) {
      FpVector e(dim, 0);
      e[offsets[k] + i] = 1;
      block.push_row(e);
    }
    block = fp_row_space(std::move(block));
    auto block_action = detail::restrict_action(*module, block);
    FpMatrix wk_in_block(0, block.rows, p);  // W_k in block coordinates
    for (std::size_t r = 0; r < w_first[k].rows; ++r)
      wk_in_block.push_row(detail::express_in_basis(block, w_first[k].row(r)));
    wk_in_block = fp_row_space(std::move(wk_in_block));
    FpMatrix comp = wk_in_block.rows == block.rows
                        ? FpMatrix(0, block.rows, p)
                        : maschke_complement(block_action, wk_in_block);
    if (comp.rows > 0) {
      auto comp_lift = FpMatrix(0, dim, p);
      for (std::size_t r = 0; r < comp.rows; ++r)
        comp_lift.push_row(detail::lift(block, comp.row(r)));
      auto comp_action = detail::restrict_action(*module, fp_row_space(comp_lift));
      auto pieces = module_decompose(comp_action, rng, meataxe_retries, meataxe_word_len,
                                     exhaustive_cap);
      FpMatrix comp_basis = fp_row_space(comp_lift);
      for (auto const& piece : pieces) {
        FpMatrix lifted(0, dim, p);
        for (std::size_t r = 0; r < piece.rows; ++r)
          lifted.push_row(detail::lift(comp_basis, piece.row(r)));
        out.desc.summands.push_back(fp_row_space(std::move(lifted)));
      }
    }
  }
  out.desc.distinguished = vecs;
  out.desc.stabilizers = stabs;
  out.desc.validate();
  out.m_summands = out.desc.summands.size();

  // count irreducible components of V (differs from m only on failures)
  out.irreducible_components = out.m_summands;
  for (auto k : out.replacement_failed) {
    auto restricted = detail::restrict_action(*module, out.desc.summands[k]);
    auto comps = module_decompose(restricted, rng, meataxe_retries, meataxe_word_len,
                                  exhaustive_cap);
    out.irreducible_components += comps.size() - 1;
  }

  // the family: M_i = (sum of the other summands) x| S, T_k its twist by v_k
  auto top_all = whole_group(s);
  for (std::size_t i = 0; i < out.m_summands; ++i) {
    FpMatrix u(0, dim, p);
    for (std::size_t j = 0; j < out.m_summands; ++j)
      if (j != i)
        for (std::size_t r = 0; r < out.desc.summands[j].rows; ++r)
          u.push_row(out.desc.summands[j].row(r));
    out.family.push_back(
        make_structured(out.desc, std::move(u), FpVector(dim, 0), top_all, 1 + i));
  }
  for (std::size_t k = 0; k < n; ++k) {
    FpMatrix u(0, dim, p);
    for (std::size_t j = 0; j < out.m_summands; ++j)
      if (j != k)
        for (std::size_t r = 0; r < out.desc.summands[j].rows; ++r)
          u.push_row(out.desc.summands[j].row(r));
    out.family.push_back(
        make_structured(out.desc, std::move(u), vecs[k], top_all, 101 + k));
  }
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_SEMIDIRECT_HPP
