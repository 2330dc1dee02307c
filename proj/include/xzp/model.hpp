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

#ifndef XZP_MODEL_HPP
#define XZP_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/intseries.hpp"
#include "xzp/linalg.hpp"
#include "xzp/modint.hpp"
#include "xzp/monomials.hpp"

namespace xzp {

/// One Galois orbit of Atkin-Lehner +1 newforms: a representative eigenform
/// whose coefficients a_n are given in coordinates on an integral basis of
/// the coefficient field, flattened as c[(n-1)*D + k] for n = 1..m.
struct FixtureOrbit {
  int degree = 1;
  std::string field_polynomial;
  std::vector<std::string> integral_basis;
  std::vector<std::vector<Integer>> forms;
  std::map<long, long> trace_a_ell;  // trace of a_ell over the orbit
};

struct BasisFixture {
  long level = 0;
  int genus = 0;
  long precision = 0;  // m
  std::string provenance;
  std::vector<FixtureOrbit> orbits;

  void validate() const {
    require(level > 2 && is_prime_u64(static_cast<std::uint64_t>(level)), ErrorCode::kInput,
            "fixture: level must be an odd prime");
    int total = 0;
    for (const auto& o : orbits) {
      require(o.degree >= 1, ErrorCode::kInput, "fixture: orbit degree must be positive");
      for (const auto& f : o.forms)
        require(static_cast<long>(f.size()) == precision * o.degree, ErrorCode::kInput,
                "fixture: coefficient table length differs from m*D");
      total += o.degree * static_cast<int>(o.forms.size());
    }
    require(total == genus, ErrorCode::kInput,
            "fixture: orbit degrees sum to " + std::to_string(total) + ", genus is " + std::to_string(genus));
    require(precision > 2 * (2 * genus - 2), ErrorCode::kPrecision,
            "fixture: m must exceed 2(2g-2) for the quadric search");
  }

  /// Sum over all forms of a_ell, when every orbit carries it.
  std::optional<long> trace_a(long ell) const {
    long s = 0;
    for (const auto& o : orbits) {
      auto it = o.trace_a_ell.find(ell);
      if (it == o.trace_a_ell.end()) return std::nullopt;
      s += it->second * static_cast<long>(o.forms.size());
    }
    return s;
  }
};

/// Row layout u_{ij} = c(i, n, k) with j = (n-1) D + k: each form arrives as
/// its flat coordinate table and becomes one matrix row of length m*D.
inline IntegerMatrix assemble_coefficient_matrix(const std::vector<std::vector<Integer>>& forms, int degree,
                                                 long m) {
  IntegerMatrix M(forms.size(), static_cast<std::size_t>(m * degree));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    require(static_cast<long>(forms[i].size()) >= m * degree, ErrorCode::kInput,
            "assemble_coefficient_matrix: form shorter than m*D");
    for (long j = 0; j < m * degree; ++j) M(i, static_cast<std::size_t>(j)) = forms[i][static_cast<std::size_t>(j)];
  }
  require(rank_rational(M.row_list()) == forms.size(), ErrorCode::kRankDeficient,
          "assemble_coefficient_matrix: rows are dependent (corrupt fixture)");
  return M;
}

/// g rational cusp forms spanning the +1 space: for each orbit representative
/// and each integral-basis coordinate k, the series sum_n c(n, k) q^n. Row
/// entry n-1 holds the coefficient of q^n.
inline std::vector<IntVector> rational_basis_rows(const BasisFixture& fx, long m) {
  require(m <= fx.precision, ErrorCode::kPrecision,
          "requested " + std::to_string(m) + " coefficients, fixture has " + std::to_string(fx.precision));
  std::vector<IntVector> rows;
  for (const auto& o : fx.orbits)
    for (const auto& f : o.forms)
      for (int k = 0; k < o.degree; ++k) {
        IntVector r(static_cast<std::size_t>(m));
        for (long n = 0; n < m; ++n) r[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n * o.degree + k)];
        rows.push_back(std::move(r));
      }
  return rows;
}

/// Coefficient matrix of the fixture's rational basis (g x m).
inline IntegerMatrix assemble_coefficient_matrix(const BasisFixture& fx, long m) {
  auto rows = rational_basis_rows(fx, m);
  std::vector<std::vector<Integer>> flat(rows.begin(), rows.end());
  return assemble_coefficient_matrix(flat, 1, m);
}

struct OptimizedBasis {
  IntegerMatrix matrix;                 // rows: the new basis
  std::vector<IntVector> transform;     // input_row_i = sum_j transform[i][j] * matrix_row_j
  Integer index;                        // [saturation : input lattice]
};

/// Saturates the row lattice and LLL-reduces it. The result has rank g modulo
/// every prime. LLL runs on the first `lll_columns` columns (all by default);
/// the unimodular transform found there is applied to the full rows.
inline OptimizedBasis optimize_basis(const IntegerMatrix& M, std::size_t lll_columns = 0) {
  const auto rows = M.row_list();
  require(rank_rational(rows) == rows.size(), ErrorCode::kRankDeficient, "optimize_basis: rank < g");
  auto sat = saturate_with_index(LatticeBasis(rows, M.cols()));
  std::vector<IntVector> reduced;
  if (lll_columns == 0 || lll_columns >= M.cols()) {
    reduced = lll_reduce_with_transform(sat.basis).basis.vectors();
  } else {
    std::vector<IntVector> prefix;
    for (const auto& v : sat.basis.vectors()) prefix.emplace_back(v.begin(), v.begin() + static_cast<long>(lll_columns));
    require(rank_rational(prefix) == prefix.size(), ErrorCode::kPrecision,
            "optimize_basis: too few columns for the LLL prefix");
    auto t = lll_reduce_with_transform(LatticeBasis(prefix)).transform;
    for (const auto& row : t) {
      IntVector v(M.cols(), 0);
      for (std::size_t j = 0; j < row.size(); ++j)
        if (sgn(row[j]) != 0)
          for (std::size_t k = 0; k < M.cols(); ++k) v[k] += row[j] * sat.basis[j][k];
      reduced.push_back(std::move(v));
    }
  }
  LatticeBasis out(reduced, M.cols());
  std::vector<IntVector> transform;
  for (const auto& r : rows) {
    auto c = express_in_basis(out, r);
    require(c.has_value(), ErrorCode::kInconsistent, "optimize_basis: input row not in the saturated lattice");
    transform.push_back(*c);
  }
  return {out.matrix(), transform, sat.index};
}

/// Series (index n = coefficient of q^n) from rows holding q^1..q^m.
inline std::vector<IntSeries> rows_to_series(const std::vector<IntVector>& rows) {
  std::vector<IntSeries> out;
  for (const auto& r : rows) {
    IntSeries s(r.size() + 1, 0);
    std::copy(r.begin(), r.end(), s.begin() + 1);
    out.push_back(std::move(s));
  }
  return out;
}

/// Coefficients of q^n that must vanish before a degree-d form in the basis
/// of a canonical curve is forced to be an identity. The form is a section of
/// the d-th power of the canonical bundle (degree d(2g-2)) whose order at the
/// cusp is its q-valuation minus d.
inline long relation_precision_needed(int g, int d) { return static_cast<long>(d) * (2 * g - 1); }

struct RelationOptions {
  long guard = 16;       // extra coefficients used for the kernel
  bool verify_full = true;  // re-check every relation at the full precision
};

/// Saturated, LLL-reduced basis of all integer vectors c with
/// sum_j c_j * (monomial_j of the basis) == 0 to the basis precision.
inline LatticeBasis find_relations(const std::vector<IntSeries>& basis, int d, RelationOptions opt = {}) {
  require(!basis.empty(), ErrorCode::kDomain, "find_relations: empty basis");
  const int g = static_cast<int>(basis.size());
  const long m = static_cast<long>(basis[0].size()) - 1;
  const long need = relation_precision_needed(g, d);
  require(m >= need, ErrorCode::kPrecision,
          "find_relations: precision " + std::to_string(m) + " below the required " + std::to_string(need));
  const long n_kernel = std::min(m, need + opt.guard);
  auto prods = monomial_products(basis, d, static_cast<std::size_t>(n_kernel));
  const std::size_t r = prods.size();
  IntegerMatrix A(static_cast<std::size_t>(n_kernel + 1), r);
  for (std::size_t j = 0; j < r; ++j)
    for (long n = 0; n <= n_kernel; ++n) A(static_cast<std::size_t>(n), j) = prods[j][static_cast<std::size_t>(n)];
  LatticeBasis rel = integral_kernel(A);
  if (opt.verify_full && n_kernel < m && !rel.empty()) {
    auto full = monomial_products(basis, d, static_cast<std::size_t>(m));
    for (const auto& c : rel.vectors()) {
      for (long n = 0; n <= m; ++n) {
        Integer s = 0;
        for (std::size_t j = 0; j < r; ++j)
          if (sgn(c[j]) != 0) s += c[j] * full[j][static_cast<std::size_t>(n)];
        require(sgn(s) == 0, ErrorCode::kInconsistent,
                "find_relations: relation fails at q^" + std::to_string(n));
      }
    }
  }
  return rel;
}

/// Canonical model: integer quadrics in x_1..x_g (monomial order of
/// monomials(g, 2)).
struct Model {
  long level = 0;
  int genus = 0;
  std::vector<IntVector> quadrics;
  std::vector<IntVector> basis_transform;  // fixture_row_i = sum_j T[i][j] model_row_j
  long precision = 0;
};

/// Primitive with positive leading coefficient.
inline IntVector normalize_form(IntVector v) { return make_primitive(std::move(v)); }

/// Deterministic order: earlier leading monomial first, then lexicographic.
inline void sort_forms(std::vector<IntVector>& forms) {
  auto lead = [](const IntVector& v) {
    std::size_t i = 0;
    while (i < v.size() && sgn(v[i]) == 0) ++i;
    return i;
  };
  std::sort(forms.begin(), forms.end(), [&](const IntVector& a, const IntVector& b) {
    const auto la = lead(a), lb = lead(b);
    if (la != lb) return la < lb;
    return a > b;
  });
}

inline std::size_t expected_quadric_count(int g) { return static_cast<std::size_t>((g - 2) * (g - 3) / 2); }

struct ModelBuild {
  Model model;
  std::vector<IntSeries> basis;  // model-basis q-expansions, index n = coefficient of q^n
  Integer saturation_index;
};

struct ModelOptions {
  long precision = 0;        // 0: everything the fixture has
  std::size_t lll_columns = 0;
};

inline ModelBuild canonical_model(const BasisFixture& fx, ModelOptions opt = {}) {
  fx.validate();
  require(fx.genus >= 6, ErrorCode::kDomain, "canonical_model: genus below 6 is out of scope");
  const long m = opt.precision > 0 ? opt.precision : fx.precision;
  auto M = assemble_coefficient_matrix(fx, m);
  auto opt_basis = optimize_basis(M, opt.lll_columns);
  auto basis = rows_to_series(opt_basis.matrix.row_list());
  auto rel = find_relations(basis, 2);
  std::vector<IntVector> quadrics;
  for (const auto& v : rel.vectors()) quadrics.push_back(normalize_form(v));
  sort_forms(quadrics);
  const auto expect = expected_quadric_count(fx.genus);
  require(quadrics.size() == expect, ErrorCode::kInconsistent,
          "canonical_model: found " + std::to_string(quadrics.size()) + " quadrics, expected " +
              std::to_string(expect) + " (a trigonal or plane quintic curve needs cubic generators)");
  Model model{fx.level, fx.genus, quadrics, opt_basis.transform, m};
  return {model, basis, opt_basis.index};
}

/// Value of every quadric at an integer point.
inline bool verify_point_on_model(const Model& model, const IntVector& point) {
  require(static_cast<int>(point.size()) == model.genus, ErrorCode::kDomain,
          "verify_point_on_model: point has " + std::to_string(point.size()) + " coordinates, genus is " +
              std::to_string(model.genus));
  const auto mons = monomials(model.genus, 2);
  for (const auto& q : model.quadrics)
    if (sgn(evaluate_form(q, mons, point)) != 0) return false;
  return true;
}

/// Same Q-span of quadric coefficient vectors.
inline bool ideal_span_compare(const Model& a, const Model& b) {
  if (a.genus != b.genus) return false;
  return same_rational_span(a.quadrics, b.quadrics);
}

/// Quadrics after the linear substitution x = T y (T is g x g): coefficient
/// vectors of Q(T y) in the monomial order.
inline std::vector<IntVector> substitute_linear(const std::vector<IntVector>& quadrics,
                                                const std::vector<IntVector>& T) {
  const int g = static_cast<int>(T.size());
  const auto mons = monomials(g, 2);
  std::vector<IntVector> out;
  for (const auto& q : quadrics) {
    IntVector r(mons.size(), 0);
    for (std::size_t idx = 0; idx < mons.size(); ++idx) {
      if (sgn(q[idx]) == 0) continue;
      const auto i = static_cast<std::size_t>(mons[idx][0]), j = static_cast<std::size_t>(mons[idx][1]);
      // x_i x_j = (sum_a T_ia y_a)(sum_b T_jb y_b)
      for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
          Integer c = q[idx] * T[i][static_cast<std::size_t>(a)] * T[j][static_cast<std::size_t>(b)];
          if (sgn(c) == 0) continue;
          Monomial mm{std::min(a, b), std::max(a, b)};
          r[monomial_index(mm, g)] += c;
        }
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Points over F_ell.

struct FpPoint {
  std::vector<std::uint32_t> x;  // first nonzero coordinate is 1
  bool smooth = true;
  friend bool operator<(const FpPoint& a, const FpPoint& b) { return a.x < b.x; }
  friend bool operator==(const FpPoint& a, const FpPoint& b) { return a.x == b.x; }
};

struct EnumerationOptions {
  bool allow_level_prime = false;  // permit ell = level (bad reduction diagnostics)
  std::uint32_t max_ell = 1u << 12;
  bool smoothness = true;
};

namespace detail {

/// Quadrics mod ell as dense upper-triangular coefficient tables c[i][j], i <= j.
struct QuadricsModEll {
  std::uint32_t ell;
  int g;
  std::vector<std::vector<std::vector<std::uint32_t>>> c;

  QuadricsModEll(const std::vector<IntVector>& quadrics, int genus, std::uint32_t p) : ell(p), g(genus) {
    const auto mons = monomials(g, 2);
    for (const auto& q : quadrics) {
      std::vector<std::vector<std::uint32_t>> t(static_cast<std::size_t>(g), std::vector<std::uint32_t>(static_cast<std::size_t>(g), 0));
      for (std::size_t idx = 0; idx < mons.size(); ++idx)
        t[static_cast<std::size_t>(mons[idx][0])][static_cast<std::size_t>(mons[idx][1])] =
            static_cast<std::uint32_t>(mod_floor(q[idx], ell).get_ui());
      c.push_back(std::move(t));
    }
  }
  std::uint32_t eval(std::size_t q, const std::vector<std::uint32_t>& x) const {
    std::uint64_t s = 0;
    for (int i = 0; i < g; ++i) {
      if (!x[static_cast<std::size_t>(i)]) continue;
      std::uint64_t row = 0;
      for (int j = i; j < g; ++j) row += std::uint64_t(c[q][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * x[static_cast<std::size_t>(j)];
      s = (s + (row % ell) * x[static_cast<std::size_t>(i)]) % ell;
    }
    return static_cast<std::uint32_t>(s);
  }
  bool vanishes(const std::vector<std::uint32_t>& x) const {
    for (std::size_t q = 0; q < c.size(); ++q)
      if (eval(q, x)) return false;
    return true;
  }
  /// Rank of the Jacobian matrix at x.
  std::size_t jacobian_rank(const std::vector<std::uint32_t>& x) const {
    std::vector<std::vector<ModInt>> J;
    for (const auto& t : c) {
      std::vector<ModInt> row;
      for (int k = 0; k < g; ++k) {
        std::uint64_t s = 0;
        for (int j = 0; j < g; ++j) {
          const auto a = static_cast<std::size_t>(std::min(k, j)), b = static_cast<std::size_t>(std::max(k, j));
          std::uint64_t coef = t[a][b];
          if (j == k) coef = 2 * coef;
          s += coef % ell * x[static_cast<std::size_t>(j)] % ell;
        }
        row.emplace_back(static_cast<std::int64_t>(s % ell), ell);
      }
      J.push_back(std::move(row));
    }
    return field_rank(J);
  }
};

inline std::vector<std::uint32_t> inverse_table(std::uint32_t ell) {
  std::vector<std::uint32_t> inv(ell, 0);
  for (std::uint32_t a = 1; a < ell; ++a) inv[a] = ModInt(a, ell).inverse().value();
  return inv;
}

/// Calls f on one representative (first nonzero entry 1) of each point of
/// P^{n-1}(F_ell).
template <class Fn>
void for_each_projective(std::size_t n, std::uint32_t ell, Fn&& f) {
  std::vector<std::uint32_t> x(n, 0);
  for (std::size_t lead = n; lead-- > 0;) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    // Odometer over coordinates lead+1..n-1.
    while (true) {
      f(x);
      bool done = true;
      for (std::size_t i = n; i > lead + 1;) {
        --i;
        if (++x[i] < ell) {
          done = false;
          break;
        }
        x[i] = 0;
      }
      if (done) break;
    }
  }
}

}  // namespace detail

/// All F_ell-points of the reduction of the model, sorted, each flagged smooth
/// iff the Jacobian of the quadrics has rank g-2 there.
///
/// The last k coordinates are solved for: linear combinations of the quadrics
/// free of monomials in those k coordinates alone are linear in them once the
/// first g-k coordinates are fixed, so each of the ~ell^{g-k-1} fixed
/// prefixes costs one small linear solve.
inline std::vector<FpPoint> enumerate_points_mod_ell(const Model& model, std::uint32_t ell,
                                                     EnumerationOptions opt = {}) {
  require(is_prime_u64(ell), ErrorCode::kDomain, "enumerate_points_mod_ell: ell must be prime");
  require(opt.allow_level_prime || static_cast<long>(ell) != model.level, ErrorCode::kDomain,
          "enumerate_points_mod_ell: ell equals the level (bad reduction)");
  require(ell <= opt.max_ell, ErrorCode::kDomain, "enumerate_points_mod_ell: ell above the enumeration cap");
  const int g = model.genus;
  const detail::QuadricsModEll Q(model.quadrics, g, ell);
  const int nq = static_cast<int>(model.quadrics.size());
  int k = 0;
  while (k + 1 <= g - 2 && nq - (k + 1) * (k + 2) / 2 >= k + 1) ++k;
  const int f = g - k;
  const auto inv = detail::inverse_table(ell);

  // Left kernel of the pure-y coefficient block.
  std::vector<std::vector<ModInt>> block;  // rows: y-monomials, cols: quadrics
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      std::vector<ModInt> row;
      for (int q = 0; q < nq; ++q) row.emplace_back(Q.c[static_cast<std::size_t>(q)][static_cast<std::size_t>(f + a)][static_cast<std::size_t>(f + b)], ell);
      block.push_back(std::move(row));
    }
  std::vector<std::vector<ModInt>> lambdas;
  if (block.empty()) {
    for (int q = 0; q < nq; ++q) {
      std::vector<ModInt> e(static_cast<std::size_t>(nq), ModInt(0, ell));
      e[static_cast<std::size_t>(q)] = ModInt(1, ell);
      lambdas.push_back(e);
    }
  } else {
    lambdas = field_kernel(block, static_cast<std::size_t>(nq), ModInt(0, ell));
  }
  const int s = static_cast<int>(lambdas.size());
  // Combined tables T_s[i][j] restricted to what the solve needs.
  std::vector<std::vector<std::vector<std::uint32_t>>> T(static_cast<std::size_t>(s),
      std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(g), std::vector<std::uint32_t>(static_cast<std::size_t>(g), 0)));
  for (int t = 0; t < s; ++t)
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        std::uint64_t acc = 0;
        for (int q = 0; q < nq; ++q)
          acc += std::uint64_t(lambdas[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)].value()) *
                 Q.c[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % ell;
        T[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(acc % ell);
      }

  std::vector<FpPoint> out;
  std::vector<std::uint32_t> pt(static_cast<std::size_t>(g), 0);
  auto accept = [&](const std::vector<std::uint32_t>& x) {
    if (!Q.vanishes(x)) return;
    FpPoint p{x, true};
    // Normalize: first nonzero coordinate 1.
    std::size_t lead = 0;
    while (p.x[lead] == 0) ++lead;
    const std::uint64_t iv = inv[p.x[lead]];
    for (auto& v : p.x) v = static_cast<std::uint32_t>(v * iv % ell);
    if (opt.smoothness) p.smooth = Q.jacobian_rank(p.x) == static_cast<std::size_t>(g - 2);
    out.push_back(std::move(p));
  };

  // Augmented system [A | -b], s rows of width k+1, stored flat.
  const int w = k + 1;
  std::vector<std::uint32_t> a(static_cast<std::size_t>(s * w));
  std::vector<std::uint32_t> y(static_cast<std::size_t>(k), 0);
  std::vector<int> pivcol, free;
  auto at = [&](int i, int j) -> std::uint32_t& { return a[static_cast<std::size_t>(i * w + j)]; };
  auto T_at = [&](int t, int i, int j) { return T[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  detail::for_each_projective(static_cast<std::size_t>(f), ell, [&](const std::vector<std::uint32_t>& x) {
    for (int t = 0; t < s; ++t) {
      for (int c = 0; c < k; ++c) {
        std::uint64_t acc = 0;
        for (int i = 0; i < f; ++i) acc += std::uint64_t(T_at(t, i, f + c)) * x[static_cast<std::size_t>(i)];
        at(t, c) = static_cast<std::uint32_t>(acc % ell);
      }
      std::uint64_t bq = 0;
      for (int i = 0; i < f; ++i) {
        if (!x[static_cast<std::size_t>(i)]) continue;
        std::uint64_t row = 0;
        for (int j = i; j < f; ++j) row += std::uint64_t(T_at(t, i, j)) * x[static_cast<std::size_t>(j)];
        bq += row % ell * x[static_cast<std::size_t>(i)];
      }
      bq %= ell;
      at(t, k) = static_cast<std::uint32_t>((ell - bq) % ell);
    }
    // Gauss-Jordan mod ell.
    pivcol.clear();
    int r = 0;
    for (int c = 0; c < k && r < s; ++c) {
      int piv = r;
      while (piv < s && at(piv, c) == 0) ++piv;
      if (piv == s) continue;
      if (piv != r)
        for (int j = 0; j < w; ++j) std::swap(at(r, j), at(piv, j));
      const std::uint64_t iv = inv[at(r, c)];
      for (int j = c; j < w; ++j) at(r, j) = static_cast<std::uint32_t>(at(r, j) * iv % ell);
      for (int i = 0; i < s; ++i) {
        if (i == r) continue;
        const std::uint64_t fct = at(i, c);
        if (!fct) continue;
        for (int j = c; j < w; ++j) at(i, j) = static_cast<std::uint32_t>((at(i, j) + (ell - fct) * at(r, j)) % ell);
      }
      pivcol.push_back(c);
      ++r;
    }
    for (int i = r; i < s; ++i)
      if (at(i, k) != 0) return;  // inconsistent
    free.clear();
    for (int c = 0, p = 0; c < k; ++c) {
      if (p < static_cast<int>(pivcol.size()) && pivcol[static_cast<std::size_t>(p)] == c) {
        ++p;
        continue;
      }
      free.push_back(c);
    }
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= ell;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::uint64_t cc = code;
      for (int fc : free) {
        y[static_cast<std::size_t>(fc)] = static_cast<std::uint32_t>(cc % ell);
        cc /= ell;
      }
      for (int i = 0; i < r; ++i) {
        std::uint64_t v = at(i, k);
        for (int fc : free) v += (ell - at(i, fc)) * std::uint64_t(y[static_cast<std::size_t>(fc)]) % ell;
        y[static_cast<std::size_t>(pivcol[static_cast<std::size_t>(i)])] = static_cast<std::uint32_t>(v % ell);
      }
      for (int i = 0; i < f; ++i) pt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
      for (int j = 0; j < k; ++j) pt[static_cast<std::size_t>(f + j)] = y[static_cast<std::size_t>(j)];
      accept(pt);
    }
  });
  // Points with the first f coordinates zero.
  if (k > 0) {
    detail::for_each_projective(static_cast<std::size_t>(k), ell, [&](const std::vector<std::uint32_t>& yy) {
      std::fill(pt.begin(), pt.end(), 0);
      for (int j = 0; j < k; ++j) pt[static_cast<std::size_t>(f + j)] = yy[static_cast<std::size_t>(j)];
      accept(pt);
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace xzp

#endif  // XZP_MODEL_HPP
