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

#ifndef XZP_MODULAR_PARAM_HPP
#define XZP_MODULAR_PARAM_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/elliptic.hpp"
#include "xzp/intseries.hpp"
#include "xzp/linalg.hpp"
#include "xzp/model.hpp"
#include "xzp/modint.hpp"
#include "xzp/monomials.hpp"
#include "xzp/qseries.hpp"
#include "xzp/serialize.hpp"

namespace xzp {

/// Elliptic quotient data: curve, Mordell-Weil generator, degree of the
/// modular parametrization from X0(p), and the newform coefficients a_n.
struct CurveData {
  std::string label;
  WeierstrassCurve E;
  RationalPoint generator;
  long modular_degree = 0;  // of X0(p) -> E; the map from X0+(p) has half this degree
  std::vector<Integer> an;  // an[n-1] = a_n
  std::string provenance;

  long plus_degree() const { return modular_degree / 2; }
};

inline CurveData curve_from_json(const Json& j) {
  CurveData c;
  c.label = j.at("label").get<std::string>();
  const auto& a = j.at("a_invariants");
  require(a.is_array() && a.size() == 5, ErrorCode::kInput, "curve data: a_invariants needs 5 entries");
  c.E = WeierstrassCurve::from_a({integer_from_json(a[0]), integer_from_json(a[1]), integer_from_json(a[2]),
                                  integer_from_json(a[3]), integer_from_json(a[4])});
  const auto& gen = j.at("generator");
  require(gen.is_array() && gen.size() == 2, ErrorCode::kInput, "curve data: generator needs 2 coordinates");
  c.generator = RationalPoint::affine(rational_from_json(gen[0]), rational_from_json(gen[1]));
  require(on_curve(c.E, c.generator), ErrorCode::kInput, "curve data: generator is not on the curve");
  c.modular_degree = j.at("modular_degree").get<long>();
  require(c.modular_degree >= 2 && c.modular_degree % 2 == 0, ErrorCode::kInput,
          "curve data: modular degree must be even (it factors through the Atkin-Lehner quotient)");
  for (const auto& x : j.at("an")) c.an.push_back(integer_from_json(x));
  require(!c.an.empty() && c.an[0] == 1, ErrorCode::kInput, "curve data: a_1 must be 1");
  c.provenance = j.value("provenance", "");
  return c;
}

inline CurveData load_curve(const std::string& path) { return curve_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// q-expansions of x and y along the parametrization.

/// x(q), y(q) of E pulled back to the upper half plane.
struct ParamSeries {
  QSeries x, y;
  std::size_t primes_used = 0;
};

namespace detail {

/// x, y over a coefficient ring, from the first m coefficients of f:
/// z = integral of f dq/q, x = wp(z) - b2/12, y = (wp'(z) - a1 x - a3)/2.
template <class R>
std::pair<TruncatedSeries<R>, TruncatedSeries<R>> weierstrass_series(const WeierstrassCurve& E,
                                                                      const std::vector<Integer>& an, long m,
                                                                      const R& zero) {
  using S = TruncatedSeries<R>;
  using T = RingTraits<R>;
  auto lift = [&](const Rational& q) {
    if constexpr (std::is_same_v<R, ModInt>) return ModInt::from_rational(q, zero.modulus());
    else return R(q);
  };
  std::vector<R> zc;
  for (long n = 1; n <= m; ++n) zc.push_back(lift(Rational(an[static_cast<std::size_t>(n - 1)], n)));
  const S z(1, std::move(zc), m, zero);
  // wp(z) = z^-2 + sum_{k>=1} c_k z^{2k}.
  const long K = m / 2 + 2;
  std::vector<R> c(static_cast<std::size_t>(K + 1), zero);
  c[1] = lift(Rational(E.c4, 240));
  if (K >= 2) c[2] = lift(Rational(E.c6, 6048));
  for (long k = 3; k <= K; ++k) {
    R s = zero;
    for (long j = 1; j <= k - 2; ++j) s += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - 1 - j)];
    c[static_cast<std::size_t>(k)] = s * lift(Rational(3, (2 * k + 3) * (k - 2)));
  }
  std::vector<R> wp(static_cast<std::size_t>(2 * K + 3), zero), dwp(static_cast<std::size_t>(2 * K + 3), zero);
  wp[0] = T::one(zero);
  dwp[0] = T::from_int(-2, zero);
  for (long k = 1; k <= K; ++k) {
    wp[static_cast<std::size_t>(2 * k + 2)] = c[static_cast<std::size_t>(k)];
    dwp[static_cast<std::size_t>(2 * k + 2)] = c[static_cast<std::size_t>(k)] * T::from_int(2 * k, zero);
  }
  const S W(-2, std::move(wp), 2 * K, zero), dW(-3, std::move(dwp), 2 * K - 1, zero);
  const S X = series_compose(W, z, m - 3), dX = series_compose(dW, z, m - 4);
  const S x = X - S::monomial(lift(Rational(E.b2, 12)), 0);
  const S y = (dX - S::monomial(lift(Rational(E.a1)), 0) * x - S::monomial(lift(Rational(E.a3)), 0)) *
              S::monomial(lift(Rational(1, 2)), 0);
  return {x.truncated(m - 3), y.truncated(m - 4)};
}

/// Smallest r/s with r = a mod M and |r|, s <= sqrt(M/2), if any.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& M) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(M / 2).get_mpz_t());
  Integer r0 = M, r1 = mod_floor(a, M), s0 = 0, s1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (sgn(s1) == 0 || abs_value(s1) > bound || gcd(r1, s1) != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

inline std::vector<std::uint32_t> large_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = (1u << 31) - 1; out.size() < count; p -= 2)
    if (is_prime_u64(p)) out.push_back(p);
  return out;
}

}  // namespace detail

/// Exact check of the two identities that pin the pair down:
/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 and
/// q dx/dq = f (2y + a1 x + a3), with x = q^-2 + ..., y = -q^-3 + ....
inline bool verify_parametrization_series(const WeierstrassCurve& E, const std::vector<Integer>& an,
                                          const QSeries& x, const QSeries& y) {
  if (x.valuation() != std::optional<long>(-2) || y.valuation() != std::optional<long>(-3)) return false;
  if (x.coefficient(-2) != 1 || y.coefficient(-3) != -1) return false;
  auto k = [](const Integer& z) { return QSeries::monomial(Rational(z), 0); };
  const auto lhs = y * y + k(E.a1) * x * y + k(E.a3) * y - (x * x * x + k(E.a2) * x * x + k(E.a4) * x + k(E.a6));
  if (!lhs.is_zero()) return false;
  const long m = std::min(static_cast<long>(an.size()), x.precision() + 3);
  std::vector<Rational> fc;
  for (long n = 1; n <= m; ++n) fc.emplace_back(an[static_cast<std::size_t>(n - 1)]);
  const QSeries f = make_qseries(1, fc, m);
  const QSeries Y = y * k(2) + k(E.a1) * x + k(E.a3);
  return (theta(x) - f * Y).is_zero();
}

/// x(q), y(q) known modulo q^{m-2} and q^{m-3}. Computed modulo word-size
/// primes, lifted by CRT and rational reconstruction, and certified by
/// verify_parametrization_series.
inline ParamSeries parametrization_series(const WeierstrassCurve& E, const std::vector<Integer>& an, long m) {
  require(m >= 8, ErrorCode::kDomain, "parametrization_series: precision too small");
  require(static_cast<long>(an.size()) >= m, ErrorCode::kPrecision,
          "parametrization_series: need " + std::to_string(m) + " coefficients a_n, have " + std::to_string(an.size()));
  require(!an.empty() && an[0] == 1, ErrorCode::kDomain, "parametrization_series: a_1 must be 1");
  const auto primes = detail::large_primes(256);
  const long nx = m - 3 + 3, ny = m - 4 + 4;  // coefficient counts from q^-2 and q^-3
  std::vector<Integer> rx(static_cast<std::size_t>(nx), 0), ry(static_cast<std::size_t>(ny), 0);
  Integer M = 1;
  std::optional<std::pair<QSeries, QSeries>> last;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint32_t p = primes[i];
    const auto [xp, yp] = detail::weierstrass_series(E, an, m, ModInt(0, p));
    auto crt = [&](std::vector<Integer>& acc, const FpSeries& s, long start) {
      for (std::size_t n = 0; n < acc.size(); ++n) {
        const Integer b = s.coefficient(start + static_cast<long>(n)).value();
        // acc + M * ((b - acc) / M mod p)
        Integer inv;
        const Integer Mp = mod_floor(M, Integer(p));
        mpz_invert(inv.get_mpz_t(), Mp.get_mpz_t(), Integer(p).get_mpz_t());
        const Integer t = mod_floor((b - acc[n]) * inv, Integer(p));
        acc[n] += M * t;
      }
    };
    crt(rx, xp, -2);
    crt(ry, yp, -3);
    M *= p;
    std::vector<Rational> qx, qy;
    bool ok = true;
    for (const auto& a : rx) {
      auto r = detail::rational_reconstruct(a, M);
      if (!r) {
        ok = false;
        break;
      }
      qx.push_back(*r);
    }
    for (std::size_t n = 0; ok && n < ry.size(); ++n) {
      auto r = detail::rational_reconstruct(ry[n], M);
      if (!r) ok = false;
      else qy.push_back(*r);
    }
    if (!ok) continue;
    auto cand = std::make_pair(make_qseries(-2, qx, m - 3), make_qseries(-3, qy, m - 4));
    // Stable for one extra prime, then certified exactly.
    if (last && last->first == cand.first && last->second == cand.second) {
      require(verify_parametrization_series(E, an, cand.first, cand.second), ErrorCode::kInconsistent,
              "parametrization_series: Weierstrass identity fails (bad a_n data?)");
      return {cand.first, cand.second, i + 1};
    }
    last = std::move(cand);
  }
  fail(ErrorCode::kPrecision, "parametrization_series: coefficients did not stabilize");
}

// ---------------------------------------------------------------------------
// Polynomial representation of the map.

/// One way of writing a coordinate as p(x)/q(x) with forms of degree d.
struct RatioForm {
  IntVector p, q;
  int degree = 0;
};

/// Representations of x and y on the model as ratios of forms; the first
/// entry of each list is the primary one, of the smallest degree dx or dy.
/// Later entries, possibly of higher degree, cover the points where the
/// earlier ones are 0/0.
struct MapRepresentation {
  int dx = 0, dy = 0;
  std::vector<RatioForm> x, y;
};

/// Coefficient vector of sum_j c_j F_j where F_j are the basis monomials.
inline IntSeries combine_products(const std::vector<IntSeries>& prods, const IntVector& c, std::size_t n) {
  IntSeries out(n + 1, 0);
  for (std::size_t j = 0; j < prods.size(); ++j) {
    if (sgn(c[j]) == 0) continue;
    for (std::size_t k = 0; k <= n && k < prods[j].size(); ++k) out[k] += c[j] * prods[j][k];
  }
  return out;
}

/// Highest q-exponent through which a degree-d relation A(f) + B(f) phi
/// must vanish before it is forced to vanish identically: as a section of
/// K^d twisted by the pole divisor of phi (degree pole_total, of which
/// pole_at_cusp sits at the cusp) it has at most d(2g-2) + pole_total zeros.
inline long map_relation_precision(int g, int d, long pole_total, long pole_at_cusp) {
  return static_cast<long>(d) * (2 * g - 1) + pole_total - pole_at_cusp;
}

struct MapSearchOptions {
  long guard = 16;
  int extra_degrees = 1;  // representations also collected this far above the smallest degree
  bool modulo_ideal = false;  // search only among monomials independent on the curve
};

/// Indices of monomials of degree d whose products are linearly independent
/// on the curve, chosen greedily in monomial order. Every form of degree d
/// agrees on the curve with one supported on them. Independence is tested
/// modulo a word-size prime on the q-expansion through q^{d(2g-1)}, which
/// determines a form on the curve.
inline std::vector<std::size_t> independent_monomials(const std::vector<IntSeries>& prods, int g, int d) {
  const std::uint32_t P = 2147483647u;
  const std::size_t n = std::min(static_cast<std::size_t>(d) * static_cast<std::size_t>(2 * g - 1) + 1,
                                 prods.empty() ? 0 : prods[0].size());
  std::vector<std::vector<ModInt>> echelon;  // rows reduced against earlier pivots
  std::vector<std::size_t> pivots, chosen;
  for (std::size_t j = 0; j < prods.size(); ++j) {
    std::vector<ModInt> v;
    v.reserve(n);
    for (std::size_t e = 0; e < n; ++e) v.push_back(ModInt::from_integer(prods[j][e], P));
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const ModInt f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t e = 0; e < n; ++e) v[e] -= f * echelon[r][e];
    }
    std::size_t piv = 0;
    while (piv < n && v[piv].is_zero()) ++piv;
    if (piv == n) continue;
    const ModInt inv = v[piv].inverse();
    for (auto& x : v) x *= inv;
    echelon.push_back(std::move(v));
    pivots.push_back(piv);
    chosen.push_back(j);
  }
  return chosen;
}

/// All (p, q) of degree d with p(f) = q(f) phi, as a saturated LLL-reduced
/// lattice filtered to vectors whose two halves are both nonzero on the
/// curve. Row layout of each vector: (alpha | beta) with p = alpha, q = -beta.
inline std::vector<RatioForm> find_map_polynomials(const std::vector<IntSeries>& basis, const QSeries& phi, int d,
                                                   long pole_total, MapSearchOptions opt = {}) {
  require(!basis.empty(), ErrorCode::kDomain, "find_map_polynomials: empty basis");
  if (d <= 0) return {};
  const int g = static_cast<int>(basis.size());
  const auto vphi = phi.valuation();
  require(vphi.has_value() && *vphi < 0, ErrorCode::kDomain, "find_map_polynomials: phi must have a pole at the cusp");
  const long need = map_relation_precision(g, d, pole_total, -*vphi);
  const long top = phi.precision() + d;  // G_j = F_j phi is known through q^top
  const long have = std::min<long>(static_cast<long>(basis[0].size()) - 1 + *vphi, top);
  require(have >= need, ErrorCode::kPrecision,
          "find_map_polynomials: precision " + std::to_string(have) + " below the required " + std::to_string(need));
  const long n_kernel = std::min(have, need + opt.guard);
  // Clear denominators of phi.
  Integer D = 1;
  for (long e = *vphi; e <= phi.precision(); ++e) D = lcm(D, phi.coefficient(e).get_den());
  std::vector<Integer> ph;
  for (long e = *vphi; e <= phi.precision(); ++e) ph.push_back(phi.coefficient(e).get_num() * (D / phi.coefficient(e).get_den()));
  const long lo = d + *vphi;  // lowest exponent of any G_j
  auto prods = monomial_products(basis, d, static_cast<std::size_t>(have - *vphi));
  const std::size_t full = prods.size();
  std::vector<std::size_t> support(full);
  for (std::size_t j = 0; j < full; ++j) support[j] = j;
  if (opt.modulo_ideal) {
    support = independent_monomials(prods, g, d);
    std::vector<IntSeries> kept;
    for (auto j : support) kept.push_back(std::move(prods[j]));
    prods = std::move(kept);
  }
  const std::size_t r = prods.size();
  auto G_coeff = [&](std::size_t j, long e) {
    Integer s = 0;
    for (long i = d; i <= e - *vphi && i < static_cast<long>(prods[j].size()); ++i) {
      const auto& a = prods[j][static_cast<std::size_t>(i)];
      if (sgn(a) != 0) s += a * ph[static_cast<std::size_t>(e - i - *vphi)];
    }
    return s;
  };
  auto assemble = [&](long upto) {
    IntegerMatrix A(static_cast<std::size_t>(upto - lo + 1), 2 * r);
    for (long e = lo; e <= upto; ++e) {
      const auto row = static_cast<std::size_t>(e - lo);
      for (std::size_t j = 0; j < r; ++j) {
        if (e >= 0) A(row, j) = prods[j][static_cast<std::size_t>(e)];
        A(row, r + j) = G_coeff(j, e);
      }
    }
    return A;
  };
  const LatticeBasis ker = integral_kernel(assemble(n_kernel));
  // Every kernel vector is an identity; confirm on all known coefficients.
  if (!ker.empty() && n_kernel < have) {
    const auto A = assemble(have);
    for (const auto& v : ker.vectors())
      for (std::size_t row = 0; row < A.rows(); ++row) {
        Integer s = 0;
        for (std::size_t c = 0; c < 2 * r; ++c)
          if (sgn(v[c]) != 0) s += v[c] * A(row, c);
        require(sgn(s) == 0, ErrorCode::kInconsistent,
                "find_map_polynomials: relation fails at q^" + std::to_string(lo + static_cast<long>(row)));
      }
  }
  // A form vanishes on the curve iff its q-expansion vanishes through
  // q^{d(2g-1)}.
  const long vanish = static_cast<long>(d) * (2 * g - 1);
  std::vector<RatioForm> out;
  for (const auto& v : ker.vectors()) {
    IntVector alpha(v.begin(), v.begin() + static_cast<long>(r)), beta(v.begin() + static_cast<long>(r), v.end());
    auto nonzero_on_curve = [&](const IntVector& c) {
      const auto s = combine_products(prods, c, static_cast<std::size_t>(std::min(have, vanish)));
      for (const auto& x : s)
        if (sgn(x) != 0) return true;
      return false;
    };
    if (!nonzero_on_curve(alpha) || !nonzero_on_curve(beta)) continue;
    // alpha F + beta D phi F = 0  =>  phi = alpha / (-D beta).
    IntVector q;
    for (const auto& b : beta) q.push_back(-D * b);
    IntVector both = alpha;
    both.insert(both.end(), q.begin(), q.end());
    both = make_primitive(std::move(both));
    RatioForm rf{IntVector(full, 0), IntVector(full, 0), d};
    for (std::size_t j = 0; j < r; ++j) {
      rf.p[support[j]] = both[j];
      rf.q[support[j]] = both[r + j];
    }
    out.push_back(std::move(rf));
  }
  return out;
}

/// Exact check that p(f) - q(f) phi vanishes through q^{upto}.
inline bool verify_ratio(const std::vector<IntSeries>& basis, const QSeries& phi, int d, const RatioForm& rf, long upto) {
  const auto vphi = phi.valuation();
  if (!vphi) return false;
  upto = std::min({upto, phi.precision() + d, static_cast<long>(basis[0].size()) - 1 + *vphi});
  const auto n = static_cast<std::size_t>(std::max<long>(upto - *vphi, 0));
  auto prods = monomial_products(basis, d, n);
  const auto P = combine_products(prods, rf.p, n);
  const auto Q = combine_products(prods, rf.q, n);
  for (long e = d + *vphi; e <= upto; ++e) {
    Rational s = e >= 0 ? Rational(P[static_cast<std::size_t>(e)]) : Rational(0);
    for (long i = d; i <= e - *vphi; ++i)
      if (sgn(Q[static_cast<std::size_t>(i)]) != 0) s -= Rational(Q[static_cast<std::size_t>(i)]) * phi.coefficient(e - i);
    if (sgn(s) != 0) return false;
  }
  return true;
}

/// Smallest-degree representations of x and y, found by increasing the
/// degree from 1 to the degree of the map from X0+(p), followed by those of
/// the next opt.extra_degrees degrees, searched modulo the ideal of the curve.
inline MapRepresentation derive_parametrization(const std::vector<IntSeries>& basis, const CurveData& curve,
                                                const ParamSeries& phi, MapSearchOptions opt = {}) {
  const long deg = curve.plus_degree();
  auto search = [&](const QSeries& series, long pole_total, int& d0, const char* name) {
    std::vector<RatioForm> reps;
    for (int d = 1; d <= deg && reps.empty(); ++d) {
      reps = find_map_polynomials(basis, series, d, pole_total, opt);
      d0 = d;
    }
    require(!reps.empty(), ErrorCode::kInconsistent,
            std::string("derive_parametrization: no representation of ") + name + " up to degree " + std::to_string(deg));
    MapSearchOptions extra = opt;
    extra.modulo_ideal = true;
    for (int d = d0 + 1; d <= d0 + opt.extra_degrees; ++d)
      for (auto& r : find_map_polynomials(basis, series, d, pole_total, extra)) reps.push_back(std::move(r));
    return reps;
  };
  MapRepresentation rep;
  rep.x = search(phi.x, 2 * deg, rep.dx, "x");
  rep.y = search(phi.y, 3 * deg, rep.dy, "y");
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluation.

struct Undefined {};

template <class F>
using MapValue = std::variant<ECPoint<F>, Undefined>;

namespace detail {

template <class F>
F form_at(const IntVector& c, const std::vector<Monomial>& mons, const std::vector<F>& x) {
  F s = RingTraits<F>::zero(x[0]);
  for (std::size_t j = 0; j < mons.size(); ++j) {
    if (sgn(c[j]) == 0) continue;
    F t = WeierstrassCurve::lift(c[j], x[0]);
    for (int i : mons[j]) t = t * x[static_cast<std::size_t>(i)];
    s += t;
  }
  return s;
}

/// Value of one coordinate: affine value, pole, or 0/0.
template <class F>
struct CoordinateValue {
  enum Kind { kValue, kPole, kUnknown } kind = kUnknown;
  F value;
};

template <class F>
CoordinateValue<F> coordinate_at(const std::vector<RatioForm>& reps, int g, const std::vector<F>& x) {
  std::map<int, std::vector<Monomial>> mons;
  bool pole = false;
  for (const auto& r : reps) {
    auto it = mons.find(r.degree);
    if (it == mons.end()) it = mons.emplace(r.degree, monomials(g, r.degree)).first;
    const F q = form_at(r.q, it->second, x);
    const F p = form_at(r.p, it->second, x);
    if (!RingTraits<F>::is_zero(q)) return {CoordinateValue<F>::kValue, p * RingTraits<F>::inverse(q)};
    if (!RingTraits<F>::is_zero(p)) pole = true;
  }
  if (pole) return {CoordinateValue<F>::kPole, RingTraits<F>::zero(x[0])};
  return {CoordinateValue<F>::kUnknown, RingTraits<F>::zero(x[0])};
}

}  // namespace detail

/// Image of a point of the model (coordinates over Q or F_ell) on E. The
/// representations are tried in order; a pole of x means the image is O.
template <class F>
MapValue<F> evaluate_map(const MapRepresentation& rep, const WeierstrassCurve& E, const std::vector<F>& point) {
  const int g = static_cast<int>(point.size());
  const auto X = detail::coordinate_at(rep.x, g, point);
  const auto Y = detail::coordinate_at(rep.y, g, point);
  using CV = detail::CoordinateValue<F>;
  if (X.kind == CV::kPole) {
    require(Y.kind != CV::kValue, ErrorCode::kInconsistent, "evaluate_map: x has a pole but y is finite");
    return ECPoint<F>::zero();
  }
  if (X.kind == CV::kValue) {
    require(Y.kind != CV::kPole, ErrorCode::kInconsistent, "evaluate_map: y has a pole but x is finite");
    if (Y.kind == CV::kUnknown) return Undefined{};
    auto P = ECPoint<F>::affine(X.value, Y.value);
    require(on_curve(E, P), ErrorCode::kInconsistent, "evaluate_map: image is not on the curve");
    return P;
  }
  return Undefined{};
}

inline MapValue<Rational> evaluate_map(const MapRepresentation& rep, const WeierstrassCurve& E, const IntVector& point) {
  std::vector<Rational> x(point.begin(), point.end());
  return evaluate_map(rep, E, x);
}

// ---------------------------------------------------------------------------
// Serialization.

inline Json map_to_json(const MapRepresentation& rep) {
  auto list = [](const std::vector<RatioForm>& v) {
    Json a = Json::array();
    for (const auto& r : v)
      a.push_back({{"degree", r.degree}, {"numerator", int_vector_to_json(r.p)}, {"denominator", int_vector_to_json(r.q)}});
    return a;
  };
  return {{"dx", rep.dx}, {"dy", rep.dy}, {"x", list(rep.x)}, {"y", list(rep.y)}};
}

inline MapRepresentation map_from_json(const Json& j) {
  auto list = [](const Json& a) {
    std::vector<RatioForm> v;
    for (const auto& r : a)
      v.push_back({int_vector_from_json(r.at("numerator")), int_vector_from_json(r.at("denominator")), r.at("degree").get<int>()});
    return v;
  };
  MapRepresentation rep;
  rep.dx = j.at("dx").get<int>();
  rep.dy = j.at("dy").get<int>();
  rep.x = list(j.at("x"));
  rep.y = list(j.at("y"));
  return rep;
}

}  // namespace xzp

#endif  // XZP_MODULAR_PARAM_HPP
