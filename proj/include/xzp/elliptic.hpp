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

#ifndef XZP_ELLIPTIC_HPP
#define XZP_ELLIPTIC_HPP

#include <array>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/modint.hpp"
#include "xzp/polynomial_text.hpp"

namespace xzp {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z, with the usual
/// derived invariants.
struct WeierstrassCurve {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8, c4, c6, discriminant;
  Rational j;

  static WeierstrassCurve from_a(const std::array<Integer, 5>& a) {
    WeierstrassCurve e;
    e.a1 = a[0];
    e.a2 = a[1];
    e.a3 = a[2];
    e.a4 = a[3];
    e.a6 = a[4];
    e.b2 = e.a1 * e.a1 + 4 * e.a2;
    e.b4 = 2 * e.a4 + e.a1 * e.a3;
    e.b6 = e.a3 * e.a3 + 4 * e.a6;
    e.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
    e.c4 = e.b2 * e.b2 - 24 * e.b4;
    e.c6 = -e.b2 * e.b2 * e.b2 + 36 * e.b2 * e.b4 - 216 * e.b6;
    e.discriminant = -e.b2 * e.b2 * e.b8 - 8 * e.b4 * e.b4 * e.b4 - 27 * e.b6 * e.b6 + 9 * e.b2 * e.b4 * e.b6;
    require(sgn(e.discriminant) != 0, ErrorCode::kDomain, "singular Weierstrass equation");
    e.j = Rational(e.c4 * e.c4 * e.c4, e.discriminant);
    e.j.canonicalize();
    return e;
  }

  std::array<Integer, 5> a_invariants() const { return {a1, a2, a3, a4, a6}; }

  bool good_reduction_at(std::uint32_t ell) const { return sgn(mod_floor(discriminant, Integer(ell))) != 0; }

  /// Weierstrass equation left minus right side at (x, y).
  template <class F>
  F equation(const F& x, const F& y) const {
    const F A1 = lift(a1, x), A2 = lift(a2, x), A3 = lift(a3, x), A4 = lift(a4, x), A6 = lift(a6, x);
    return y * y + A1 * x * y + A3 * y - (x * x * x + A2 * x * x + A4 * x + A6);
  }

  template <class F>
  static F lift(const Integer& z, const F& like) {
    if constexpr (std::is_same_v<F, ModInt>) return ModInt::from_integer(z, like.modulus());
    else return F(z);
  }
};

/// Reads "y^2+xy+y=x^3-x^2-7x+8" style equations.
inline WeierstrassCurve parse_weierstrass(std::string_view text) {
  const auto eq = text.find('=');
  require(eq != std::string_view::npos, ErrorCode::kInput, "Weierstrass equation needs '='");
  auto as_poly = [](std::string_view side) {
    std::string s;
    for (char c : side) {
      if (c == 'x') s += "x_1";
      else if (c == 'y') s += "x_2";
      else s += c;
    }
    return parse_polynomial(s);
  };
  const auto lhs = as_poly(text.substr(0, eq)), rhs = as_poly(text.substr(eq + 1));
  auto coeff = [](const Polynomial& p, const Monomial& m) {
    auto it = p.terms.find(m);
    return it == p.terms.end() ? Integer(0) : it->second;
  };
  const Monomial X{0}, Y{1}, XY{0, 1}, YY{1, 1}, XXX{0, 0, 0}, XX{0, 0}, ONE{};
  require(coeff(lhs, YY) == 1 && coeff(rhs, XXX) == 1, ErrorCode::kInput,
          "Weierstrass equation must be monic in y^2 and x^3");
  for (const auto& [m, c] : lhs.terms)
    require(m == YY || m == XY || m == Y, ErrorCode::kInput, "unexpected left-hand term " + monomial_label(m));
  for (const auto& [m, c] : rhs.terms)
    require(m == XXX || m == XX || m == X || m == ONE, ErrorCode::kInput,
            "unexpected right-hand term " + monomial_label(m));
  return WeierstrassCurve::from_a({coeff(lhs, XY), coeff(rhs, XX), coeff(lhs, Y), coeff(rhs, X), coeff(rhs, ONE)});
}

/// Point of E over a field F (Rational or ModInt); infinity is the identity.
template <class F>
struct ECPoint {
  bool infinity = true;
  F x, y;

  static ECPoint zero() { return {}; }
  static ECPoint affine(F x, F y) { return {false, std::move(x), std::move(y)}; }
  bool is_zero() const { return infinity; }
  friend bool operator==(const ECPoint& a, const ECPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const ECPoint& a, const ECPoint& b) { return !(a == b); }
};

using RationalPoint = ECPoint<Rational>;
using ModPoint = ECPoint<ModInt>;

template <class F>
bool on_curve(const WeierstrassCurve& E, const ECPoint<F>& P) {
  return P.infinity || RingTraits<F>::is_zero(E.equation(P.x, P.y));
}

template <class F>
ECPoint<F> ec_neg(const WeierstrassCurve& E, const ECPoint<F>& P) {
  if (P.infinity) return P;
  return ECPoint<F>::affine(P.x, -P.y - E.lift(E.a1, P.x) * P.x - E.lift(E.a3, P.x));
}

template <class F>
ECPoint<F> ec_add(const WeierstrassCurve& E, const ECPoint<F>& P, const ECPoint<F>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  require(RingTraits<F>::same_ring(P.x, Q.x), ErrorCode::kDomain, "ec_add: points over different fields");
  const F A1 = E.lift(E.a1, P.x), A2 = E.lift(E.a2, P.x), A3 = E.lift(E.a3, P.x), A4 = E.lift(E.a4, P.x);
  F lambda, nu;
  if (P.x == Q.x) {
    const F ysum = P.y + Q.y + A1 * Q.x + A3;
    if (RingTraits<F>::is_zero(ysum)) return ECPoint<F>::zero();
    const F three = RingTraits<F>::from_int(3, P.x), two = RingTraits<F>::from_int(2, P.x);
    const F num = three * P.x * P.x + two * A2 * P.x + A4 - A1 * P.y;
    const F den = two * P.y + A1 * P.x + A3;
    lambda = num * RingTraits<F>::inverse(den);
  } else {
    lambda = (Q.y - P.y) * RingTraits<F>::inverse(Q.x - P.x);
  }
  nu = P.y - lambda * P.x;
  const F x3 = lambda * lambda + A1 * lambda - A2 - P.x - Q.x;
  const F y3 = -(lambda + A1) * x3 - nu - A3;
  return ECPoint<F>::affine(x3, y3);
}

template <class F>
ECPoint<F> ec_mul(const WeierstrassCurve& E, const Integer& k, const ECPoint<F>& P) {
  ECPoint<F> base = sgn(k) < 0 ? ec_neg(E, P) : P, acc = ECPoint<F>::zero();
  Integer n = abs_value(k);
  while (sgn(n) > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = ec_add(E, acc, base);
    n >>= 1;
    if (sgn(n) > 0) base = ec_add(E, base, base);
  }
  return acc;
}

/// Reduction on an integral model: a point whose x has ell in the
/// denominator lies in the kernel of reduction.
inline ModPoint reduce_point(const RationalPoint& P, std::uint32_t ell) {
  if (P.infinity) return ModPoint::zero();
  if (mpz_divisible_ui_p(P.x.get_den_mpz_t(), ell)) return ModPoint::zero();
  return ModPoint::affine(ModInt::from_rational(P.x, ell), ModInt::from_rational(P.y, ell));
}

/// Order of the reduction of P in E(F_ell), by repeated addition.
inline long ec_order_mod(const WeierstrassCurve& E, const RationalPoint& P, std::uint32_t ell) {
  require(E.good_reduction_at(ell), ErrorCode::kDomain, "ec_order_mod: bad reduction at " + std::to_string(ell));
  const auto Q = reduce_point(P, ell);
  const long cap = static_cast<long>(ell) + 2 + 2 * static_cast<long>(std::sqrt(static_cast<double>(ell)) + 1);
  auto R = Q;
  for (long n = 1; n <= cap; ++n) {
    if (R.infinity) return n;
    R = ec_add(E, R, Q);
  }
  fail(ErrorCode::kInconsistent, "ec_order_mod: order exceeds the Hasse bound");
}

/// |E(F_ell)| by counting solutions of the Weierstrass equation.
inline long ec_count_points(const WeierstrassCurve& E, std::uint32_t ell) {
  long n = 1;
  for (std::uint32_t x = 0; x < ell; ++x)
    for (std::uint32_t y = 0; y < ell; ++y)
      if (E.equation(ModInt(x, ell), ModInt(y, ell)).is_zero()) ++n;
  return n;
}

}  // namespace xzp

#endif  // XZP_ELLIPTIC_HPP
