// Copyright 2026 The xzp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XZP_LINALG_HPP
#define XZP_LINALG_HPP

#include <optional>
#include <ostream>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/modint.hpp"

namespace xzp {

using IntVector = std::vector<Integer>;

/// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit IntegerMatrix(const std::vector<IntVector>& rows) : rows_(rows.size()) {
    cols_ = rows.empty() ? 0 : rows[0].size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require(r.size() == cols_, ErrorCode::kInput, "IntegerMatrix: ragged rows");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<IntVector> v;
    for (const auto& r : rows) {
      IntVector row;
      for (long x : r) row.emplace_back(x);
      v.push_back(std::move(row));
    }
    *this = IntegerMatrix(v);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
  }
  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

/// Integer vectors of a common dimension, linearly independent over Q.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  LatticeBasis(std::vector<IntVector> vectors, std::size_t dimension)
      : vectors_(std::move(vectors)), dim_(dimension) {
    for (const auto& v : vectors_)
      require(v.size() == dim_, ErrorCode::kInput, "LatticeBasis: vectors of different dimensions");
  }
  explicit LatticeBasis(std::vector<IntVector> vectors)
      : LatticeBasis(vectors, vectors.empty() ? 0 : vectors[0].size()) {}

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dimension() const noexcept { return dim_; }
  bool empty() const noexcept { return vectors_.empty(); }
  const IntVector& operator[](std::size_t i) const { return vectors_[i]; }
  IntVector& operator[](std::size_t i) { return vectors_[i]; }
  const std::vector<IntVector>& vectors() const noexcept { return vectors_; }
  IntegerMatrix matrix() const {
    IntegerMatrix m(vectors_.size(), dim_);
    for (std::size_t i = 0; i < vectors_.size(); ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = vectors_[i][j];
    return m;
  }

 private:
  std::vector<IntVector> vectors_;
  std::size_t dim_ = 0;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Divides out the content and makes the first nonzero entry positive.
inline IntVector make_primitive(IntVector v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  std::size_t lead = 0;
  while (sgn(v[lead]) == 0) ++lead;
  if (v[lead] < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

// ---------------------------------------------------------------------------
// Elimination over a field (Q or F_ell).

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(std::vector<std::vector<F>>& a) {
  using T = RingTraits<F>;
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && T::is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const F inv = T::inverse(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(a[i][c])) continue;
      const F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!T::is_zero(a[r][j])) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t field_rank(std::vector<std::vector<F>> a) {
  return row_reduce(a).size();
}

/// Basis of {x : A x = 0} over the field, one vector per free column.
template <class F>
std::vector<std::vector<F>> field_kernel(std::vector<std::vector<F>> a, std::size_t cols, const F& zero) {
  using T = RingTraits<F>;
  auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(cols, zero);
    v[f] = T::one(zero);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::vector<ModInt>> reduce_rows(const std::vector<IntVector>& rows, std::uint32_t p) {
  std::vector<std::vector<ModInt>> out;
  for (const auto& r : rows) {
    std::vector<ModInt> v;
    v.reserve(r.size());
    for (const auto& x : r) v.push_back(ModInt::from_integer(x, p));
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer elimination.

namespace detail {

/// Rank mod an arbitrary (possibly multi-word) prime using mpz arithmetic.
inline std::size_t rank_mod_big_prime(std::vector<IntVector> a, const Integer& p) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  for (auto& r : a)
    for (auto& x : r) x = mod_floor(x, p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a[r][c].get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Integer f = mod_floor(a[i][c] * inv, p);
      for (std::size_t j = c; j < cols; ++j) a[i][j] = mod_floor(a[i][j] - f * a[r][j], p);
    }
    ++r;
  }
  return r;
}

/// Fraction-free (Bareiss) row echelon form; returns pivot columns.
inline std::vector<std::size_t> bareiss_echelon(std::vector<IntVector>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  Integer prev = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols && k < rows; ++c) {
    std::size_t piv = k;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[k], a[piv]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[k][c] * a[i][j] - a[i][c] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[k][c];
    pivots.push_back(c);
    ++k;
  }
  return pivots;
}

}  // namespace detail

/// Rank over F_p by Gaussian elimination.
inline std::size_t rank_mod_p(const IntegerMatrix& m, const Integer& p) {
  require(is_probable_prime(p), ErrorCode::kDomain, "rank_mod_p: modulus must be prime");
  if (p < Integer(1u << 31)) return field_rank(reduce_rows(m.row_list(), static_cast<std::uint32_t>(p.get_ui())));
  return detail::rank_mod_big_prime(m.row_list(), p);
}

/// Rank over Q.
inline std::size_t rank_rational(const std::vector<IntVector>& rows) {
  auto a = rows;
  return detail::bareiss_echelon(a).size();
}

/// Determinant of a square integer matrix (Bareiss).
inline Integer determinant(std::vector<IntVector> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(a[piv][k]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Columns of the lexicographically first nonsingular maximal minor.
inline std::vector<std::size_t> first_nonsingular_columns(const LatticeBasis& b) {
  auto a = b.vectors();
  return detail::bareiss_echelon(a);
}

inline std::vector<IntVector> select_columns(const LatticeBasis& b, const std::vector<std::size_t>& cols) {
  std::vector<IntVector> out;
  for (const auto& v : b.vectors()) {
    IntVector r;
    for (auto c : cols) r.push_back(v[c]);
    out.push_back(std::move(r));
  }
  return out;
}

inline void require_full_rank(const LatticeBasis& b, const char* who) {
  if (b.empty()) return;
  require(first_nonsingular_columns(b).size() == b.size(), ErrorCode::kRankDeficient,
          std::string(who) + ": vectors are linearly dependent over Q");
}

/// Prime divisors of the determinant of the lexicographically first
/// nonsingular g x g submatrix. The determinant is first shrunk by taking the
/// gcd with a few further nonsingular minors; every prime dividing the index
/// of the lattice in its saturation divides all of them.
inline std::vector<Integer> candidate_primes(const LatticeBasis& b) {
  if (b.empty()) return {};
  auto cols = first_nonsingular_columns(b);
  require(cols.size() == b.size(), ErrorCode::kRankDeficient,
          "candidate_primes: no nonsingular maximal submatrix");
  Integer delta = abs_value(determinant(select_columns(b, cols)));
  // Swap each chosen column for the next column that keeps the minor nonsingular.
  for (std::size_t i = 0; i < cols.size() && delta > 1; ++i) {
    for (std::size_t c = cols.back() + 1; c < b.dimension() && delta > 1; ++c) {
      auto alt = cols;
      alt[i] = c;
      Integer d = determinant(select_columns(b, alt));
      if (sgn(d) != 0) {
        delta = gcd(delta, d);
        break;
      }
    }
  }
  return prime_divisors(delta);
}

/// A dependency sum alpha_i v_i == 0 (mod p) with not all alpha_i == 0, or
/// nothing when the reductions are independent. The lowest-index nonzero
/// coefficient is 1 and the others lie in [0, p).
inline std::optional<IntVector> is_dependent_mod_p(const LatticeBasis& b, const Integer& p) {
  require(is_probable_prime(p), ErrorCode::kDomain, "is_dependent_mod_p: modulus must be prime");
  const std::size_t g = b.size(), m = b.dimension();
  // Rows [v_i mod p | e_i]; a row whose left part vanishes is a dependency.
  std::vector<IntVector> a(g, IntVector(m + g, 0));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = mod_floor(b[i][j], p);
    a[i][m + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < g; ++c) {
    std::size_t piv = r;
    while (piv < g && sgn(a[piv][c]) == 0) ++piv;
    if (piv == g) continue;
    std::swap(a[r], a[piv]);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a[r][c].get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = r + 1; i < g; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Integer f = mod_floor(a[i][c] * inv, p);
      for (std::size_t j = c; j < m + g; ++j) a[i][j] = mod_floor(a[i][j] - f * a[r][j], p);
    }
    ++r;
  }
  if (r == g) return std::nullopt;
  // Rows r..g-1 have vanishing left part; pick the one whose combination has
  // the smallest leading index so the choice does not depend on pivoting.
  std::optional<IntVector> best;
  std::size_t best_lead = g;
  for (std::size_t i = r; i < g; ++i) {
    IntVector alpha(a[i].begin() + static_cast<long>(m), a[i].end());
    std::size_t lead = 0;
    while (sgn(alpha[lead]) == 0) ++lead;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), alpha[lead].get_mpz_t(), p.get_mpz_t());
    for (auto& x : alpha) x = mod_floor(x * inv, p);
    if (!best || lead < best_lead) {
      best = std::move(alpha);
      best_lead = lead;
    }
  }
  return best;
}

struct SaturationResult {
  LatticeBasis basis;
  Integer index;  // [L : L'] where L' is the input lattice
};

/// Saturates the lattice spanned by the basis: returns a Z-basis of
/// span_Q(basis) cap Z^m. Each step replaces v_i by (sum alpha_j v_j) / p.
inline SaturationResult saturate_with_index(const LatticeBasis& input) {
  if (input.empty()) return {input, Integer(1)};
  auto cols = first_nonsingular_columns(input);
  require(cols.size() == input.size(), ErrorCode::kRankDeficient, "saturate: rank-deficient input");
  LatticeBasis b = input;
  Integer delta = determinant(select_columns(b, cols));
  Integer index = 1;
  for (const Integer& p : candidate_primes(b)) {
    while (auto alpha = is_dependent_mod_p(b, p)) {
      std::size_t i = 0;
      while (sgn((*alpha)[i]) == 0) ++i;
      IntVector v(b.dimension(), 0);
      for (std::size_t j = 0; j < b.size(); ++j)
        if (sgn((*alpha)[j]) != 0)
          for (std::size_t k = 0; k < b.dimension(); ++k) v[k] += (*alpha)[j] * b[j][k];
      for (auto& x : v) {
        require(mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()) != 0, ErrorCode::kInconsistent,
                "saturate: dependency mod p does not divide exactly");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
      }
      b[i] = std::move(v);
      require(mpz_divisible_p(delta.get_mpz_t(), p.get_mpz_t()) != 0, ErrorCode::kInconsistent,
              "saturate: tracked determinant not divisible by p");
      delta /= p;
      index *= p;
    }
  }
  return {b, index};
}

inline LatticeBasis saturate(const LatticeBasis& input) { return saturate_with_index(input).basis; }

struct LllResult {
  LatticeBasis basis;
  std::vector<IntVector> transform;  // basis[i] = sum_j transform[i][j] * input[j]
};

/// Integral LLL reduction (exact Gram-Schmidt through the d_i / lambda_ij
/// integers) with delta = 99/100.
inline LllResult lll_reduce_with_transform(const LatticeBasis& input) {
  const std::size_t n = input.size();
  std::vector<IntVector> b = input.vectors();
  std::vector<IntVector> h(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) h[i][i] = 1;
  if (n == 0) return {input, h};
  // 1-based indices below follow the usual presentation: d[0] = 1.
  std::vector<Integer> d(n + 1, 0);
  std::vector<IntVector> lam(n + 1, IntVector(n + 1, 0));
  auto B = [&](std::size_t k) -> IntVector& { return b[k - 1]; };
  auto H = [&](std::size_t k) -> IntVector& { return h[k - 1]; };
  d[0] = 1;
  d[1] = dot(B(1), B(1));
  require(sgn(d[1]) != 0, ErrorCode::kRankDeficient, "lll_reduce: zero vector in basis");

  auto redi = [&](std::size_t k, std::size_t l) {
    Integer twice = 2 * abs_value(lam[k][l]);
    if (twice <= d[l]) return;
    Integer q = round_div(lam[k][l], d[l]);
    for (std::size_t j = 0; j < B(k).size(); ++j) B(k)[j] -= q * B(l)[j];
    for (std::size_t j = 0; j < n; ++j) H(k)[j] -= q * H(l)[j];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };
  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k) {
    std::swap(B(k), B(k - 1));
    std::swap(H(k), H(k - 1));
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Integer l = lam[k][k - 1];
    Integer bb = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
      lam[i][k - 1] = (bb * t + l * lam[i][k]) / d[k];
    }
    d[k - 1] = bb;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      require(sgn(d[k]) != 0, ErrorCode::kRankDeficient, "lll_reduce: vectors are linearly dependent");
    }
    redi(k, k - 1);
    if (100 * d[k] * d[k - 2] < 99 * d[k - 1] * d[k - 1] - 100 * lam[k][k - 1] * lam[k][k - 1]) {
      swapi(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  return {LatticeBasis(b, input.dimension()), h};
}

inline LatticeBasis lll_reduce(const LatticeBasis& input) {
  require_full_rank(input, "lll_reduce");
  return lll_reduce_with_transform(input).basis;
}

/// Saturated basis of ker(M) cap Z^n: rational kernel from a fraction-free
/// echelon form, scaled to primitive integer vectors, saturated and reduced.
inline LatticeBasis integral_kernel(const IntegerMatrix& m) {
  const std::size_t n = m.cols();
  auto a = m.row_list();
  auto pivots = detail::bareiss_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<IntVector> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(n, 0);
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      Rational s = 0;
      for (std::size_t j = pivots[k] + 1; j < n; ++j)
        if (sgn(x[j]) != 0 && sgn(a[k][j]) != 0) s += Rational(a[k][j]) * x[j];
      x[pivots[k]] = -s / Rational(a[k][pivots[k]]);
    }
    Integer den = 1;
    for (const auto& q : x) den = lcm(den, q.get_den());
    IntVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[j].get_num() * (den / x[j].get_den());
    kernel.push_back(make_primitive(std::move(v)));
  }
  if (kernel.empty()) return LatticeBasis({}, n);
  return lll_reduce(saturate(LatticeBasis(kernel, n)));
}

/// Integer coefficients c with v = sum c_i basis[i], if they exist.
inline std::optional<IntVector> express_in_basis(const LatticeBasis& basis, const IntVector& v) {
  const std::size_t g = basis.size();
  if (g == 0) {
    for (const auto& x : v)
      if (sgn(x) != 0) return std::nullopt;
    return IntVector{};
  }
  // Solve on the first nonsingular minor, then check integrality and all coordinates.
  auto cols = first_nonsingular_columns(basis);
  if (cols.size() != g) return std::nullopt;
  std::vector<std::vector<Rational>> sys(g, std::vector<Rational>(g + 1));
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t i = 0; i < g; ++i) sys[r][i] = basis[i][cols[r]];
    sys[r][g] = v[cols[r]];
  }
  row_reduce(sys);
  IntVector coeff(g);
  for (std::size_t i = 0; i < g; ++i) {
    if (sys[i][g].get_den() != 1) return std::nullopt;
    coeff[i] = sys[i][g].get_num();
  }
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    Integer s = 0;
    for (std::size_t i = 0; i < g; ++i) s += coeff[i] * basis[i][k];
    if (s != v[k]) return std::nullopt;
  }
  return coeff;
}

inline bool is_integral_combination(const LatticeBasis& basis, const IntVector& v) {
  return express_in_basis(basis, v).has_value();
}

/// Whether two bases generate the same lattice (mutual integral membership).
inline bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a.vectors())
    if (!is_integral_combination(b, v)) return false;
  for (const auto& v : b.vectors())
    if (!is_integral_combination(a, v)) return false;
  return true;
}

/// Whether the rows of `a` and `b` span the same Q-vector space.
inline bool same_rational_span(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  const std::size_t ra = rank_rational(a), rb = rank_rational(b);
  if (ra != rb) return false;
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_rational(both) == ra;
}

}  // namespace xzp

#endif  // XZP_LINALG_HPP
