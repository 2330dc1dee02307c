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

#ifndef XZP_MODEL_MATCH_HPP
#define XZP_MODEL_MATCH_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/linalg.hpp"
#include "xzp/model.hpp"
#include "xzp/modint.hpp"
#include "xzp/monomials.hpp"

namespace xzp {

// Two canonical models of the same curve differ by a linear change of
// coordinates x' = T x. Matching rational points gives linear conditions on
// T; when they leave a family T = sum t_a T_a, the requirement that the
// other model's quadrics pull back into our span is quadratic in t and is
// solved by linearizing in the products t_a t_b.

namespace detail {

template <class F>
F to_field(const Integer& z, const F& like) {
  if constexpr (std::is_same_v<F, ModInt>) return ModInt::from_integer(z, like.modulus());
  else return F(z);
}

template <class F>
using FMatrix = std::vector<std::vector<F>>;

/// Coefficients of Q(A y, B y) + Q(B y, A y) (A = B gives 2 Q(A y)) over
/// monomials(g, 2), where Q is given by its coefficient vector.
template <class F>
std::vector<F> polarized(const std::vector<F>& q, const FMatrix<F>& A, const FMatrix<F>& B,
                         const std::vector<Monomial>& mons, int g, const F& zero) {
  std::vector<F> out(mons.size(), zero);
  for (std::size_t idx = 0; idx < mons.size(); ++idx) {
    if (RingTraits<F>::is_zero(q[idx])) continue;
    const auto i = static_cast<std::size_t>(mons[idx][0]), j = static_cast<std::size_t>(mons[idx][1]);
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        const F c = A[i][ua] * B[j][ub] + B[i][ua] * A[j][ub];
        if (RingTraits<F>::is_zero(c)) continue;
        const int lo = std::min(a, b), hi = std::max(a, b);
        out[static_cast<std::size_t>(lo * g - lo * (lo - 1) / 2 + (hi - lo))] += q[idx] * c;
      }
  }
  return out;
}

/// Quadric value Q(x) for a coefficient vector over monomials(g, 2).
inline Rational quadric_at(const IntVector& q, const std::vector<Monomial>& mons, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t idx = 0; idx < mons.size(); ++idx)
    if (sgn(q[idx]) != 0) s += Rational(q[idx]) * x[static_cast<std::size_t>(mons[idx][0])] * x[static_cast<std::size_t>(mons[idx][1])];
  return s;
}

/// Gradient of Q at x.
inline std::vector<Rational> quadric_gradient(const IntVector& q, const std::vector<Monomial>& mons,
                                              const std::vector<Rational>& x) {
  std::vector<Rational> grad(x.size(), Rational(0));
  for (std::size_t idx = 0; idx < mons.size(); ++idx) {
    if (sgn(q[idx]) == 0) continue;
    const auto i = static_cast<std::size_t>(mons[idx][0]), j = static_cast<std::size_t>(mons[idx][1]);
    grad[i] += Rational(q[idx]) * x[j];
    grad[j] += Rational(q[idx]) * x[i];
  }
  return grad;
}

}  // namespace detail

/// Osculating flag of a canonical curve at a smooth point P: P itself, a
/// tangent direction w and a second-order direction s, so that P + t w +
/// t^2 s meets every quadric to order three. Empty when P is singular.
inline std::vector<IntVector> osculating_flag(const std::vector<IntVector>& quadrics, const IntVector& point, int g) {
  const auto mons = monomials(g, 2);
  const std::size_t G = static_cast<std::size_t>(g);
  std::vector<Rational> P(point.begin(), point.end());
  std::vector<std::vector<Rational>> J;
  for (const auto& q : quadrics) J.push_back(detail::quadric_gradient(q, mons, P));
  const auto tangent = field_kernel(J, G, Rational(0));
  if (tangent.size() != 2) return {};
  std::vector<Rational> w;
  for (const auto& k : tangent)
    if (field_rank(std::vector<std::vector<Rational>>{P, k}) == 2) {
      w = k;
      break;
    }
  // J s = -Q(w), solved through the kernel of [J | Q(w)].
  auto aug = J;
  for (std::size_t k = 0; k < quadrics.size(); ++k) aug[k].push_back(detail::quadric_at(quadrics[k], mons, w));
  std::vector<Rational> s;
  for (const auto& k : field_kernel(aug, G + 1, Rational(0)))
    if (sgn(k[G]) != 0) {
      for (std::size_t i = 0; i < G; ++i) s.push_back(k[i] / k[G]);
      break;
    }
  if (s.empty()) return {};
  auto integral = [](const std::vector<Rational>& v) {
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, x.get_den());
    IntVector out;
    for (const auto& x : v) out.push_back(x.get_num() * (den / x.get_den()));
    return out;
  };
  return {point, make_primitive(integral(w)), integral(s)};
}

namespace detail {

/// Linear map T sending each flag u_k = (P, w, s) into the matching flag
/// v_k: T P in <P'>, T w in <P', w'>, T s in <P', w', s'>. Flags may be
/// truncated to the point alone. When the conditions leave a family, the
/// pulled-back quadrics must also lie in span(ours); that part is solved
/// after linearizing in products of the family parameters.
template <class F>
std::optional<FMatrix<F>> solve_change(const std::vector<IntVector>& ours, const std::vector<IntVector>& theirs,
                                       const std::vector<std::vector<IntVector>>& u,
                                       const std::vector<std::vector<IntVector>>& v, int g, const F& zero) {
  using T = RingTraits<F>;
  const std::size_t G = static_cast<std::size_t>(g);
  std::size_t extra = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const std::size_t depth = std::min(u[k].size(), v[k].size());
    extra += depth * (depth + 1) / 2;
  }
  const std::size_t unknowns = G * G + extra;
  FMatrix<F> sys;
  std::size_t col = G * G;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const std::size_t depth = std::min(u[k].size(), v[k].size());
    for (std::size_t level = 0; level < depth; ++level) {
      for (std::size_t i = 0; i < G; ++i) {
        std::vector<F> row(unknowns, zero);
        for (std::size_t j = 0; j < G; ++j) row[i * G + j] = to_field(u[k][level][j], zero);
        for (std::size_t b = 0; b <= level; ++b) row[col + b] = -to_field(v[k][b][i], zero);
        sys.push_back(std::move(row));
      }
      col += level + 1;
    }
  }
  auto ker = sys.empty() ? FMatrix<F>{} : field_kernel(sys, unknowns, zero);
  if (sys.empty())
    for (std::size_t c = 0; c < G * G; ++c) {
      std::vector<F> e(unknowns, zero);
      e[c] = T::one(zero);
      ker.push_back(e);
    }
  // Independent T-parts of the kernel.
  FMatrix<F> fam;
  for (const auto& w : ker) {
    std::vector<F> t(w.begin(), w.begin() + static_cast<long>(G * G));
    auto trial = fam;
    trial.push_back(t);
    if (field_rank(trial) > fam.size()) fam.push_back(std::move(t));
  }
  if (fam.empty()) return std::nullopt;
  auto as_matrix = [&](const std::vector<F>& t) {
    FMatrix<F> M(G, std::vector<F>(G, zero));
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = 0; j < G; ++j) M[i][j] = t[i * G + j];
    return M;
  };
  const std::size_t r = fam.size();
  std::vector<F> t(r, zero);
  if (r == 1) {
    t[0] = T::one(zero);
  } else {
    const auto mons = monomials(g, 2);
    // Annihilator of span(ours).
    FMatrix<F> ourf;
    for (const auto& q : ours) {
      std::vector<F> row;
      for (const auto& x : q) row.push_back(to_field(x, zero));
      ourf.push_back(std::move(row));
    }
    const auto ann = field_kernel(ourf, mons.size(), zero);
    std::vector<FMatrix<F>> Ms;
    for (const auto& f : fam) Ms.push_back(as_matrix(f));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b) pairs.emplace_back(a, b);
    FMatrix<F> lin;
    for (const auto& qi : theirs) {
      std::vector<F> q;
      for (const auto& x : qi) q.push_back(to_field(x, zero));
      std::vector<std::vector<F>> cols;
      for (auto [a, b] : pairs) cols.push_back(polarized(q, Ms[a], Ms[b], mons, g, zero));
      for (const auto& w : ann) {
        std::vector<F> row(pairs.size(), zero);
        for (std::size_t p = 0; p < pairs.size(); ++p)
          for (std::size_t i = 0; i < mons.size(); ++i) row[p] += w[i] * cols[p][i];
        lin.push_back(std::move(row));
      }
    }
    const auto zk = field_kernel(lin, pairs.size(), zero);
    if (zk.size() != 1) return std::nullopt;
    const auto& z = zk[0];
    auto zat = [&](std::size_t a, std::size_t b) {
      if (a > b) std::swap(a, b);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (pairs[p] == std::make_pair(a, b)) return z[p];
      return zero;
    };
    std::size_t a0 = r;
    for (std::size_t a = 0; a < r && a0 == r; ++a)
      if (!T::is_zero(zat(a, a))) a0 = a;
    if (a0 == r) return std::nullopt;
    for (std::size_t b = 0; b < r; ++b) t[b] = zat(a0, b);  // t scaled by t_{a0}
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b)
        if (!(t[a] * t[b] == zat(a, b) * zat(a0, a0))) return std::nullopt;
  }
  FMatrix<F> M(G, std::vector<F>(G, zero));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < G * G; ++c) M[c / G][c % G] += t[a] * fam[a][c];
  if (field_rank(M) != G) return std::nullopt;
  return M;
}

}  // namespace detail

namespace detail {

inline std::vector<std::vector<IntVector>> flags_at(const std::vector<IntVector>& quadrics,
                                                   const std::vector<IntVector>& points, int g) {
  std::vector<std::vector<IntVector>> out;
  for (const auto& P : points) {
    auto f = osculating_flag(quadrics, P, g);
    out.push_back(f.empty() ? std::vector<IntVector>{P} : std::move(f));
  }
  return out;
}

/// Primitive integer form of a rational matrix, confirmed exactly.
inline std::optional<std::vector<IntVector>> confirm_change(const FMatrix<Rational>& M,
                                                            const std::vector<IntVector>& ours,
                                                            const std::vector<IntVector>& theirs,
                                                            const std::vector<IntVector>& our_points,
                                                            const std::vector<IntVector>& their_points, int g) {
  Integer den = 1;
  for (const auto& row : M)
    for (const auto& x : row) den = lcm(den, x.get_den());
  IntVector flat;
  for (const auto& row : M)
    for (const auto& x : row) flat.push_back(x.get_num() * (den / x.get_den()));
  flat = make_primitive(std::move(flat));
  std::vector<IntVector> T(static_cast<std::size_t>(g));
  for (std::size_t c = 0; c < flat.size(); ++c) T[c / static_cast<std::size_t>(g)].push_back(flat[c]);
  if (sgn(determinant(T)) == 0) return std::nullopt;
  auto pulled = substitute_linear(theirs, T);
  auto both = ours;
  both.insert(both.end(), pulled.begin(), pulled.end());
  if (rank_rational(both) != rank_rational(ours)) return std::nullopt;
  for (std::size_t k = 0; k < our_points.size(); ++k) {
    IntVector img(static_cast<std::size_t>(g), 0);
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = 0; j < img.size(); ++j) img[i] += T[i][j] * our_points[k][j];
    if (rank_rational({img, their_points[k]}) != 1) return std::nullopt;
  }
  return T;
}

}  // namespace detail

/// Primitive integer matrix T (published_point ~ T * our_point) such that
/// every published quadric pulled back along T lies in span(ours).
/// Points are matched by position; tangent and osculating directions at
/// each point supply the remaining linear conditions.
inline std::optional<std::vector<IntVector>> find_coordinate_change(const std::vector<IntVector>& ours,
                                                                    const std::vector<IntVector>& theirs,
                                                                    const std::vector<IntVector>& our_points,
                                                                    const std::vector<IntVector>& their_points,
                                                                    int g) {
  require(our_points.size() == their_points.size(), ErrorCode::kDomain,
          "find_coordinate_change: point lists differ in length");
  const auto u = detail::flags_at(ours, our_points, g), v = detail::flags_at(theirs, their_points, g);
  auto M = detail::solve_change<Rational>(ours, theirs, u, v, g, Rational(0));
  if (!M) return std::nullopt;
  return detail::confirm_change(*M, ours, theirs, our_points, their_points, g);
}

/// Same search without a known correspondence: every bijection between the
/// two point lists is screened modulo a word-size prime first.
inline std::optional<std::vector<IntVector>> find_coordinate_change_unlabeled(
    const std::vector<IntVector>& ours, const std::vector<IntVector>& theirs, const std::vector<IntVector>& our_points,
    const std::vector<IntVector>& their_points, int g, std::uint32_t screen_prime = 2147483629u) {
  if (our_points.size() != their_points.size() || our_points.size() > 9) return std::nullopt;
  const auto u = detail::flags_at(ours, our_points, g), v = detail::flags_at(theirs, their_points, g);
  std::vector<std::size_t> perm(their_points.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    std::vector<std::vector<IntVector>> vp;
    std::vector<IntVector> pts;
    for (auto i : perm) {
      vp.push_back(v[i]);
      pts.push_back(their_points[i]);
    }
    if (!detail::solve_change<ModInt>(ours, theirs, u, vp, g, ModInt(0, screen_prime))) continue;
    auto M = detail::solve_change<Rational>(ours, theirs, u, vp, g, Rational(0));
    if (!M) continue;
    if (auto T = detail::confirm_change(*M, ours, theirs, our_points, pts, g)) return T;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Coefficients of F(T y) for a degree-d form F (vector over monomials(g, d)).
inline IntVector substitute_form(const IntVector& coeffs, int d, const std::vector<IntVector>& T) {
  const int g = static_cast<int>(T.size());
  const auto mons = monomials(g, d);
  IntVector out(mons.size(), 0);
  for (std::size_t idx = 0; idx < mons.size(); ++idx) {
    if (sgn(coeffs[idx]) == 0) continue;
    // Expand prod_i (sum_a T[m_i][a] y_a) term by term.
    std::map<Monomial, Integer> acc{{Monomial{}, coeffs[idx]}};
    for (int var : mons[idx]) {
      std::map<Monomial, Integer> next;
      for (const auto& [m, c] : acc)
        for (int a = 0; a < g; ++a) {
          const auto& t = T[static_cast<std::size_t>(var)][static_cast<std::size_t>(a)];
          if (sgn(t) == 0) continue;
          Monomial mm = m;
          mm.insert(std::upper_bound(mm.begin(), mm.end(), a), a);
          next[mm] += c * t;
        }
      acc = std::move(next);
    }
    for (const auto& [m, c] : acc) out[monomial_index(m, g)] += c;
  }
  return out;
}

/// Integer points of a box [-B, B]^g (primitive, first nonzero entry
/// positive) on which every quadric vanishes.
inline std::vector<IntVector> small_points(const std::vector<IntVector>& quadrics, int g, long B) {
  const auto mons = monomials(g, 2);
  std::vector<std::vector<long>> q;
  for (const auto& v : quadrics) {
    std::vector<long> r;
    for (const auto& x : v) r.push_back(x.get_si());
    q.push_back(std::move(r));
  }
  std::vector<IntVector> out;
  std::vector<long> x(static_cast<std::size_t>(g), -B);
  const std::size_t G = static_cast<std::size_t>(g);
  while (true) {
    std::size_t lead = 0;
    while (lead < G && x[lead] == 0) ++lead;
    if (lead < G && x[lead] > 0) {
      bool ok = true;
      for (const auto& r : q) {
        long s = 0;
        for (std::size_t idx = 0; idx < mons.size(); ++idx)
          if (r[idx] != 0) s += r[idx] * x[static_cast<std::size_t>(mons[idx][0])] * x[static_cast<std::size_t>(mons[idx][1])];
        if (s != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        long g0 = 0;
        for (long c : x) g0 = std::gcd(g0, c);
        if (g0 == 1) {
          IntVector p;
          for (long c : x) p.emplace_back(c);
          out.push_back(std::move(p));
        }
      }
    }
    std::size_t i = G;
    while (i > 0 && x[i - 1] == B) x[--i] = -B;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

}  // namespace xzp

#endif  // XZP_MODEL_MATCH_HPP
