#ifndef MAXDIM_MODULE_ACTION_HPP
#define MAXDIM_MODULE_ACTION_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/fp.hpp"
#include "maxdim/group.hpp"
#include "maxdim/subgroup.hpp"

namespace maxdim {

// F_p vector space with an action of a finite group by invertible matrices,
// one matrix per generator. The generator-word map is verified to be a
// homomorphism on the full element table at construction.
class ModuleAction {
 public:
  ModuleAction(FiniteGroup const& group, Fel p, std::size_t dim,
               std::vector<FpMatrix> gen_matrices)
      : group_(&group), p_(p), dim_(dim), gen_(std::move(gen_matrices)) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (gen_.size() != group.generator_count())
      throw std::invalid_argument("one matrix per generator required");
    for (auto const& m : gen_) {
      if (m.rows != dim_ || m.cols != dim_ || m.p != p_)
        throw std::invalid_argument("matrix shape mismatch");
      fp_inverse(m);  // throws if singular
    }
    build_all();
    for (ElementId x = 0; x < group.order(); ++x)
      for (std::size_t j = 0; j < gen_.size(); ++j)
        if (fp_mul(all_[x], gen_[j]) != all_[group.mul(x, group.generator_id(j))])
          throw NotHomomorphism("matrices do not define a module action");
  }

  FiniteGroup const& group() const { return *group_; }
  Fel p() const { return p_; }
  std::size_t dim() const { return dim_; }
  FpMatrix const& generator_matrix(std::size_t j) const { return gen_[j]; }
  FpMatrix const& matrix_of(ElementId x) const { return all_[x]; }

  FpVector act(ElementId x, FpVector const& v) const { return fp_apply(all_[x], v); }

  SubgroupSet stabilizer(FpVector const& v) const {
    DenseBitset bits(group_->order());
    for (ElementId x = 0; x < group_->order(); ++x)
      if (act(x, v) == v) bits.set(x);
    return subgroup_from_bitmap(*group_, std::move(bits));
  }

 private:
  void build_all() {
    // left action: rho(x) = rho(parent) * rho(gen), matching x = parent*gen
    all_.resize(group_->order());
    all_[group_->identity()] = FpMatrix::identity(dim_, p_);
    for (ElementId x = 1; x < group_->order(); ++x)
      all_[x] = fp_mul(all_[group_->bfs_parent(x)], gen_[group_->bfs_generator(x)]);
  }

  FiniteGroup const* group_;
  Fel p_;
  std::size_t dim_;
  std::vector<FpMatrix> gen_;
  std::vector<FpMatrix> all_;
};

// Smallest invariant subspace containing v, as an RREF basis.
inline FpMatrix spin(ModuleAction const& mod, FpVector const& v) {
  FpMatrix basis(0, mod.dim(), mod.p());
  if (fp_is_zero(v)) return basis;
  basis.push_row(v);
  basis = fp_row_space(std::move(basis));
  std::vector<FpVector> queue{v};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t j = 0; j < mod.group().generator_count(); ++j) {
      FpVector w = fp_apply(mod.generator_matrix(j), queue[k]);
      if (!fp_in_row_space(basis, w)) {
        basis.push_row(w);
        basis = fp_row_space(std::move(basis));
        queue.push_back(w);
      }
    }
  }
  return basis;
}

// Subspace spin: smallest invariant subspace containing all rows.
inline FpMatrix spin_rows(ModuleAction const& mod, FpMatrix const& rows) {
  FpMatrix basis = fp_row_space(rows);
  std::vector<FpVector> queue;
  for (std::size_t r = 0; r < basis.rows; ++r) queue.push_back(basis.row(r));
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t j = 0; j < mod.group().generator_count(); ++j) {
      FpVector w = fp_apply(mod.generator_matrix(j), queue[k]);
      if (!fp_in_row_space(basis, w)) {
        basis.push_row(w);
        basis = fp_row_space(std::move(basis));
        queue.push_back(w);
      }
    }
  }
  return basis;
}

namespace detail {

// Action restricted to an invariant subspace, in the coordinates of its
// RREF basis. Columns of the new generator matrices solve
// rho(g) b_i = sum_j c_ji b_j.
inline std::vector<FpMatrix> restrict_matrices(ModuleAction const& mod, FpMatrix const& basis) {
  std::size_t d = basis.rows;
  std::vector<FpMatrix> out;
  // basis^T once
  FpMatrix bt(basis.cols, basis.rows, basis.p);
  for (std::size_t i = 0; i < basis.rows; ++i)
    for (std::size_t j = 0; j < basis.cols; ++j) bt.at(j, i) = basis.at(i, j);
  for (std::size_t g = 0; g < mod.group().generator_count(); ++g) {
    FpMatrix m(d, d, basis.p);
    for (std::size_t i = 0; i < d; ++i) {
      FpVector img = fp_apply(mod.generator_matrix(g), basis.row(i));
      auto sol = fp_solve(bt, img);
      if (!sol.solvable) throw std::logic_error("subspace is not invariant");
      for (std::size_t j = 0; j < d; ++j) m.at(j, i) = sol.particular[j];
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline ModuleAction restrict_action(ModuleAction const& mod, FpMatrix const& basis) {
  return ModuleAction(mod.group(), mod.p(), basis.rows, restrict_matrices(mod, basis));
}

// lift a vector in subspace coordinates back to the parent module
inline FpVector lift(FpMatrix const& basis, FpVector const& coords) {
  FpVector out(basis.cols, 0);
  for (std::size_t i = 0; i < basis.rows; ++i)
    if (coords[i]) out = fp_add(out, fp_scale(basis.row(i), coords[i], basis.p), basis.p);
  return out;
}

}  // namespace detail

// Irreducibility test per the light meataxe recipe: kernels of random
// elements of the generated matrix algebra (words of bounded length with
// random coefficients) are spun; a proper nonzero spin exhibits a
// submodule. Bounded retries, then the exhaustive fallback spins every
// vector when p^dim is small enough.
struct IrreducibilityResult {
  bool irreducible = false;
  FpMatrix submodule;  // proper nonzero invariant subspace when reducible
};

inline IrreducibilityResult test_irreducible(ModuleAction const& mod, std::mt19937_64& rng,
                                             std::uint32_t retries = 50,
                                             std::uint32_t word_len = 6,
                                             std::uint64_t exhaustive_cap = 1'000'000) {
  IrreducibilityResult res;
  std::size_t d = mod.dim();
  if (d <= 1) {
    res.irreducible = true;
    return res;
  }
  Fel p = mod.p();
  std::size_t k = mod.group().generator_count();
  auto random_algebra_element = [&]() {
    FpMatrix acc(d, d, p);  // random combination of random words
    std::uint32_t terms = 1 + rng() % 3;
    for (std::uint32_t t = 0; t < terms; ++t) {
      FpMatrix w = FpMatrix::identity(d, p);
      std::uint32_t len = 1 + rng() % word_len;
      for (std::uint32_t s = 0; s < len; ++s) w = fp_mul(w, mod.generator_matrix(rng() % k));
      Fel c = static_cast<Fel>(1 + rng() % (p - 1 == 0 ? 1 : p - 1));
      for (std::size_t i = 0; i < d * d; ++i)
        acc.a[i] = static_cast<Fel>((acc.a[i] + std::uint64_t{c} * w.a[i]) % p);
    }
    return acc;
  };
  for (std::uint32_t t = 0; t < retries; ++t) {
    FpMatrix m = random_algebra_element();
    auto sol = fp_solve(m, FpVector(d, 0));
    for (std::size_t r = 0; r < sol.nullspace.rows; ++r) {
      FpVector v = sol.nullspace.row(r);
      if (fp_is_zero(v)) continue;
      FpMatrix sp = spin(mod, v);
      if (sp.rows > 0 && sp.rows < d) {
        res.submodule = std::move(sp);
        return res;
      }
    }
  }
  // exhaustive fallback: enumerate vectors with leading coefficient 1
  double total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= p;
  if (total > static_cast<double>(exhaustive_cap))
    throw DecompositionBudgetExceeded("irreducibility fallback infeasible at p^dim");
  std::uint64_t n = static_cast<std::uint64_t>(total);
  for (std::uint64_t code = 1; code < n; ++code) {
    FpVector v(d);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = static_cast<Fel>(c % p);
      c /= p;
    }
    // skip scalar multiples: first nonzero coordinate must be 1
    std::size_t first = 0;
    while (first < d && v[first] == 0) ++first;
    if (v[first] != 1) continue;
    FpMatrix sp = spin(mod, v);
    if (sp.rows < d) {
      res.submodule = std::move(sp);
      return res;
    }
  }
  res.irreducible = true;
  return res;
}

// Maschke complement: average a projection onto the invariant subspace W
// over the group (valid since p does not divide |S|); the kernel of the
// averaged projection is an invariant complement.
inline FpMatrix maschke_complement(ModuleAction const& mod, FpMatrix const& w_basis) {
  Fel p = mod.p();
  std::size_t d = mod.dim();
  if (mod.group().order() % p == 0)
    throw PrimeDividesOrder("Maschke averaging needs p coprime to the group order");
  // projection onto W along the complement of its pivot coordinates
  FpMatrix w = fp_row_space(w_basis);
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < w.rows; ++r) {
    std::size_t c = 0;
    while (c < w.cols && w.at(r, c) == 0) ++c;
    pivots.push_back(c);
  }
  // proj(x) = sum_r x[pivot_r] * w_row_r
  FpMatrix proj(d, d, p);
  for (std::size_t r = 0; r < w.rows; ++r)
    for (std::size_t j = 0; j < d; ++j) proj.at(j, pivots[r]) = w.at(r, j);

  FpMatrix avg(d, d, p);
  for (ElementId s = 0; s < mod.group().order(); ++s) {
    FpMatrix const& rho = mod.matrix_of(s);
    FpMatrix rho_inv = mod.matrix_of(mod.group().inv(s));
    FpMatrix term = fp_mul(fp_mul(rho, proj), rho_inv);
    for (std::size_t i = 0; i < d * d; ++i)
      avg.a[i] = static_cast<Fel>((avg.a[i] + term.a[i]) % p);
  }
  Fel inv_order = fp_inv(static_cast<Fel>(mod.group().order() % p), p);
  for (std::size_t i = 0; i < d * d; ++i)
    avg.a[i] = static_cast<Fel>((std::uint64_t{avg.a[i]} * inv_order) % p);
  auto sol = fp_solve(avg, FpVector(d, 0));
  return fp_row_space(sol.nullspace);
}

// Full decomposition into irreducible invariant subspaces (bases in the
// parent module's coordinates), recursing through Maschke complements.
inline std::vector<FpMatrix> module_decompose(ModuleAction const& mod, std::mt19937_64& rng,
                                              std::uint32_t retries = 50,
                                              std::uint32_t word_len = 6,
                                              std::uint64_t exhaustive_cap = 1'000'000) {
  std::vector<FpMatrix> out;
  auto rec = [&](auto&& self, FpMatrix const& basis) -> void {
    if (basis.rows == 0) return;
    ModuleAction sub = detail::restrict_action(mod, basis);
    auto ir = test_irreducible(sub, rng, retries, word_len, exhaustive_cap);
    if (ir.irreducible) {
      out.push_back(basis);
      return;
    }
    // lift the found submodule to parent coordinates
    FpMatrix w(0, mod.dim(), mod.p());
    for (std::size_t r = 0; r < ir.submodule.rows; ++r)
      w.push_row(detail::lift(basis, ir.submodule.row(r)));
    w = fp_row_space(std::move(w));
    FpMatrix comp_sub = maschke_complement(sub, ir.submodule);
    FpMatrix comp(0, mod.dim(), mod.p());
    for (std::size_t r = 0; r < comp_sub.rows; ++r)
      comp.push_row(detail::lift(basis, comp_sub.row(r)));
    comp = fp_row_space(std::move(comp));
    self(self, w);
    self(self, comp);
  };
  rec(rec, FpMatrix::identity(mod.dim(), mod.p()));
  return out;
}

// ---- Lemma-style induced module with prescribed stabilizer ----

struct DistinguishedVector {
  FpVector coords;
  SubgroupSet stabilizer;
};

struct InducedModule {
  std::unique_ptr<ModuleAction> module;
  DistinguishedVector vec;  // 0 on the coset of H, 1 on all other left cosets
  std::vector<ElementId> coset_reps;
};

// dim = [S:H] permutation module on left cosets gH with s . e_{gH} =
// e_{sgH}; the vector vanishing exactly on H has stabilizer H when p does
// not divide |S|.
inline InducedModule induce_trivial_module(FiniteGroup const& s, SubgroupSet const& h, Fel p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (s.order() % p == 0) throw PrimeDividesOrder("p divides the group order");
  if (h.parent != &s) throw MixedParents("subgroup of a different group");

  std::vector<std::uint32_t> coset_of(s.order(), static_cast<std::uint32_t>(-1));
  std::vector<ElementId> reps;
  for (ElementId x = 0; x < s.order(); ++x) {
    if (coset_of[x] != static_cast<std::uint32_t>(-1)) continue;
    auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    h.members.for_each(
        [&](std::size_t m) { coset_of[s.mul(x, static_cast<ElementId>(m))] = c; });
  }
  std::size_t dim = reps.size();
  std::vector<FpMatrix> gens;
  for (auto gid : s.generator_ids()) {
    FpMatrix m(dim, dim, p);
    for (std::size_t c = 0; c < dim; ++c) m.at(coset_of[s.mul(gid, reps[c])], c) = 1;
    gens.push_back(std::move(m));
  }
  InducedModule out;
  out.module = std::make_unique<ModuleAction>(s, p, dim, std::move(gens));
  out.coset_reps = reps;
  FpVector f(dim, 1);
  f[coset_of[s.identity()]] = 0;
  out.vec.stabilizer = out.module->stabilizer(f);
  out.vec.coords = std::move(f);
  if (!(out.vec.stabilizer.members == h.members))
    throw LemmaViolation("induced-module vector stabilizer differs from H");
  return out;
}

// ---- Submodule enumeration and the module form of MaxDim_H ----

// All invariant subspaces, by repeatedly joining cyclic spins; complete for
// the same reason the subgroup walk is. Bases are RREF (canonical).
inline std::vector<FpMatrix> all_submodules(ModuleAction const& mod,
                                            std::uint64_t universe_cap = 200'000) {
  double total = 1;
  for (std::size_t i = 0; i < mod.dim(); ++i) total *= mod.p();
  if (total > static_cast<double>(universe_cap))
    throw CapExceeded("submodule enumeration infeasible at p^dim");
  std::uint64_t n = static_cast<std::uint64_t>(total);
  Fel p = mod.p();
  std::size_t d = mod.dim();

  std::vector<FpMatrix> found;
  auto known = [&](FpMatrix const& m) {
    return std::find(found.begin(), found.end(), m) != found.end();
  };
  found.push_back(FpMatrix(0, d, p));  // zero space
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (std::uint64_t code = 1; code < n; ++code) {
      FpVector v(d);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<Fel>(c % p);
        c /= p;
      }
      std::size_t first = 0;
      while (first < d && v[first] == 0) ++first;
      if (v[first] != 1) continue;  // one representative per line
      if (fp_in_row_space(found[k], v)) continue;
      FpMatrix join = found[k];
      join.push_row(v);
      join = spin_rows(mod, join);
      if (!known(join)) found.push_back(std::move(join));
    }
  }
  std::sort(found.begin(), found.end(), [](FpMatrix const& a, FpMatrix const& b) {
    if (a.rows != b.rows) return a.rows < b.rows;
    return a.a < b.a;
  });
  return found;
}

inline std::vector<FpMatrix> maximal_submodules(ModuleAction const& mod,
                                                std::uint64_t universe_cap = 200'000) {
  auto subs = all_submodules(mod, universe_cap);
  std::vector<FpMatrix> out;
  for (auto const& s : subs) {
    if (s.rows >= mod.dim()) continue;
    bool covered = false;
    for (auto const& t : subs) {
      if (t.rows >= mod.dim() || t.rows <= s.rows) continue;
      bool inside = true;
      for (std::size_t r = 0; r < s.rows && inside; ++r)
        if (!fp_in_row_space(t, s.row(r))) inside = false;
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back(s);
  }
  return out;
}

// Radix-p encoding of vectors as indices; shared by every place that
// enumerates a vector universe.
inline std::uint64_t vector_index(FpVector const& v, Fel p) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

inline FpVector index_vector(std::uint64_t idx, std::size_t dim, Fel p) {
  FpVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<Fel>(idx % p);
    idx /= p;
  }
  return v;
}

// Encode a subspace as a bitmap over all of F_p^dim (vector index in mixed
// radix), so the general-position engine applies unchanged.
inline DenseBitset subspace_bits(FpMatrix const& basis, std::size_t dim, Fel p) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= p;
  DenseBitset bits(n);
  // enumerate the row space directly: all combinations of basis rows
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < basis.rows; ++i) combos *= p;
  for (std::uint64_t code = 0; code < combos; ++code) {
    FpVector v(dim, 0);
    std::uint64_t c = code;
    for (std::size_t r = 0; r < basis.rows; ++r) {
      Fel coef = static_cast<Fel>(c % p);
      c /= p;
      if (coef) v = fp_add(v, fp_scale(basis.row(r), coef, p), p);
    }
    bits.set(vector_index(v, p));
  }
  return bits;
}

}  // namespace maxdim

#endif  // MAXDIM_MODULE_ACTION_HPP
