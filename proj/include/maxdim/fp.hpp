#ifndef MAXDIM_FP_HPP
#define MAXDIM_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdim {

// Small dense linear algebra over F_p (p a small prime). Vectors are
// residue arrays; matrices are row-major. Everything returns row-reduced
// (RREF) bases so subspace identity is canonical-by-representation.
using Fel = std::uint32_t;
using FpVector = std::vector<Fel>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Fel fp_inv(Fel a, Fel p) {
  // p is prime and a != 0: Fermat
  Fel r = 1, b = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<Fel>((std::uint64_t{r} * b) % p);
    b = static_cast<Fel>((std::uint64_t{b} * b) % p);
    e >>= 1;
  }
  return r;
}

struct FpMatrix {
  std::size_t rows = 0, cols = 0;
  Fel p = 2;
  std::vector<Fel> a;  // row-major

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c, Fel p_) : rows(r), cols(c), p(p_), a(r * c, 0) {}

  static FpMatrix identity(std::size_t n, Fel p_) {
    FpMatrix m(n, n, p_);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Fel& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  Fel at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  FpVector row(std::size_t r) const {
    return FpVector(a.begin() + r * cols, a.begin() + (r + 1) * cols);
  }

  void push_row(FpVector const& v) {
    a.insert(a.end(), v.begin(), v.end());
    ++rows;
  }

  bool operator==(FpMatrix const&) const = default;
};

inline FpMatrix fp_mul(FpMatrix const& x, FpMatrix const& y) {
  FpMatrix z(x.rows, y.cols, x.p);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      std::uint64_t v = x.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        z.at(i, j) = static_cast<Fel>((z.at(i, j) + v * y.at(k, j)) % x.p);
    }
  return z;
}

inline FpVector fp_apply(FpMatrix const& m, FpVector const& v) {
  FpVector out(m.rows, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < m.cols; ++j) acc += std::uint64_t{m.at(i, j)} * v[j];
    out[i] = static_cast<Fel>(acc % m.p);
  }
  return out;
}

inline FpVector fp_add(FpVector const& x, FpVector const& y, Fel p) {
  FpVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % p;
  return z;
}

inline FpVector fp_sub(FpVector const& x, FpVector const& y, Fel p) {
  FpVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + p - y[i]) % p;
  return z;
}

inline FpVector fp_scale(FpVector const& x, Fel c, Fel p) {
  FpVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    z[i] = static_cast<Fel>((std::uint64_t{x[i]} * c) % p);
  return z;
}

inline bool fp_is_zero(FpVector const& x) {
  for (auto v : x)
    if (v) return false;
  return true;
}

// In-place row reduction to RREF; returns the pivot columns.
inline std::vector<std::size_t> fp_rref(FpMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.a[r * m.cols + j], m.a[sel * m.cols + j]);
    Fel inv = fp_inv(m.at(r, c), m.p);
    for (std::size_t j = 0; j < m.cols; ++j)
      m.at(r, j) = static_cast<Fel>((std::uint64_t{m.at(r, j)} * inv) % m.p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Fel f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j)
        m.at(i, j) = static_cast<Fel>((m.at(i, j) + std::uint64_t{m.p - f} * m.at(r, j)) % m.p);
    }
    pivots.push_back(c);
    ++r;
  }
  // drop zero rows
  m.a.resize(pivots.size() * m.cols);
  m.rows = pivots.size();
  return pivots;
}

// Row-space basis in RREF (canonical representation of the subspace).
inline FpMatrix fp_row_space(FpMatrix m) {
  fp_rref(m);
  return m;
}

// Reduce v against an RREF basis; the residual is zero iff v is in the
// row space.
inline FpVector fp_reduce(FpMatrix const& rref, FpVector v) {
  for (std::size_t r = 0; r < rref.rows; ++r) {
    std::size_t c = 0;  // pivot = first nonzero entry of the row (1 in RREF)
    while (c < rref.cols && rref.at(r, c) == 0) ++c;
    if (c == rref.cols || v[c] == 0) continue;
    Fel f = v[c];
    for (std::size_t j = c; j < rref.cols; ++j)
      v[j] = static_cast<Fel>((v[j] + std::uint64_t{rref.p - f} * rref.at(r, j)) % rref.p);
  }
  return v;
}

inline bool fp_in_row_space(FpMatrix const& rref, FpVector const& v) {
  return fp_is_zero(fp_reduce(rref, v));
}

// Solve M x = b; returns {solvable, particular solution, nullspace basis}.
struct FpSolution {
  bool solvable = false;
  FpVector particular;
  FpMatrix nullspace;  // rows span the solution space of M x = 0
};

inline FpSolution fp_solve(FpMatrix const& m, FpVector const& b) {
  FpMatrix aug(m.rows, m.cols + 1, m.p);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = fp_rref(aug);
  FpSolution sol;
  for (auto c : pivots)
    if (c == m.cols) return sol;  // inconsistent
  sol.solvable = true;
  sol.particular.assign(m.cols, 0);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug.at(r, m.cols);
  }
  sol.nullspace = FpMatrix(0, m.cols, m.p);
  for (std::size_t c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    FpVector v(m.cols, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (aug.at(r, c) == 0) ? 0 : m.p - aug.at(r, c);
    sol.nullspace.push_row(v);
  }
  return sol;
}

inline FpMatrix fp_inverse(FpMatrix const& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  FpMatrix aug(m.rows, 2 * m.cols, m.p);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = 1;
  }
  auto pivots = fp_rref(aug);
  if (pivots.size() != m.rows || pivots.back() != m.rows - 1)
    throw std::invalid_argument("matrix is singular");
  FpMatrix inv(m.rows, m.cols, m.p);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
  return inv;
}

// Affine subspace {point + span(directions)}; empty when !nonempty.
struct FpAffine {
  bool nonempty = false;
  FpVector point;
  FpMatrix directions;  // RREF rows

  static FpAffine whole(std::size_t dim, Fel p) {
    FpAffine a;
    a.nonempty = true;
    a.point.assign(dim, 0);
    a.directions = FpMatrix::identity(dim, p);
    return a;
  }
};

// Intersect an affine subspace with {x : x - c in rowspace(U)}.
inline FpAffine fp_affine_intersect(FpAffine const& a, FpMatrix const& u_rref,
                                    FpVector const& c) {
  FpAffine out;
  if (!a.nonempty) return out;
  Fel p = u_rref.p;
  std::size_t dim = a.point.size();
  // condition: reduce_U(point + D^T t - c) = 0, linear in t
  FpVector r0 = fp_reduce(u_rref, fp_sub(a.point, c, p));
  std::size_t k = a.directions.rows;
  // residuals of the direction vectors form the columns of the system
  FpMatrix sys(dim, k, p);
  for (std::size_t j = 0; j < k; ++j) {
    FpVector rj = fp_reduce(u_rref, a.directions.row(j));
    for (std::size_t i = 0; i < dim; ++i) sys.at(i, j) = rj[i];
  }
  FpVector rhs(dim);
  for (std::size_t i = 0; i < dim; ++i) rhs[i] = (r0[i] == 0) ? 0 : p - r0[i];
  auto sol = fp_solve(sys, rhs);
  if (!sol.solvable) return out;
  out.nonempty = true;
  out.point = a.point;
  for (std::size_t j = 0; j < k; ++j)
    if (sol.particular[j])
      out.point = fp_add(out.point, fp_scale(a.directions.row(j), sol.particular[j], p), p);
  FpMatrix dirs(0, dim, p);
  for (std::size_t r = 0; r < sol.nullspace.rows; ++r) {
    FpVector d(dim, 0);
    for (std::size_t j = 0; j < k; ++j)
      if (sol.nullspace.at(r, j))
        d = fp_add(d, fp_scale(a.directions.row(j), sol.nullspace.at(r, j), p), p);
    dirs.push_row(d);
  }
  out.directions = fp_row_space(std::move(dirs));
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_FP_HPP
