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

#ifndef XZP_HEIGHTS_HPP
#define XZP_HEIGHTS_HPP

#include <map>
#include <optional>
#include <vector>

#include "xzp/bigfloat.hpp"
#include "xzp/common.hpp"
#include "xzp/elliptic.hpp"
#include "xzp/modular_param.hpp"

namespace xzp {

/// Closed real interval with outward-rounded endpoints.
struct Interval {
  BigFloat lo, hi;

  static Interval exact(const Rational& q, mpfr_prec_t prec) {
    return {BigFloat(q, prec, MPFR_RNDD), BigFloat(q, prec, MPFR_RNDU)};
  }
  static Interval point(const BigFloat& x) { return {x, x}; }
  BigFloat mid() const { return (lo + hi) / BigFloat(2L, lo.precision()); }
  BigFloat radius() const { return BigFloat::sub(hi, lo, MPFR_RNDU) / BigFloat(2L, lo.precision()); }
  bool contains(const BigFloat& x) const { return lo <= x && x <= hi; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {BigFloat::add(a.lo, b.lo, MPFR_RNDD), BigFloat::add(a.hi, b.hi, MPFR_RNDU)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {BigFloat::sub(a.lo, b.hi, MPFR_RNDD), BigFloat::sub(a.hi, b.lo, MPFR_RNDU)};
  }
  /// Product with a nonnegative interval.
  Interval scaled(const Interval& s) const {
    require(s.lo.sign() >= 0, ErrorCode::kDomain, "Interval::scaled: negative scale");
    const auto& a = lo.sign() >= 0 ? s.lo : s.hi;
    const auto& b = hi.sign() >= 0 ? s.hi : s.lo;
    return {BigFloat::mul(lo, a, MPFR_RNDD), BigFloat::mul(hi, b, MPFR_RNDU)};
  }
};

inline Interval log_interval(const Integer& z, mpfr_prec_t prec) {
  return {BigFloat::log_abs(z, prec, MPFR_RNDD), BigFloat::log_abs(z, prec, MPFR_RNDU)};
}

inline Interval log_plus_interval(const Rational& q, mpfr_prec_t prec) {
  return {BigFloat::log_plus(q, prec, MPFR_RNDD), BigFloat::log_plus(q, prec, MPFR_RNDU)};
}

/// log of 10 and of 2 as intervals.
inline Interval ln10(mpfr_prec_t prec) { return log_interval(Integer(10), prec); }

/// Logarithmic naive height of a projective point with coprime integer
/// coordinates: log max |x_i|.
inline Interval naive_height(const IntVector& point, mpfr_prec_t prec = 128) {
  Integer m = 0;
  for (const auto& x : point) m = std::max(m, abs_value(x));
  require(sgn(m) != 0, ErrorCode::kDomain, "naive_height: zero vector");
  Integer g = 0;
  for (const auto& x : point) g = gcd(g, x);
  require(g == 1, ErrorCode::kDomain, "naive_height: coordinates are not coprime");
  return log_interval(m, prec);
}

/// log max(|num|, |den|) of a rational.
inline Interval height_of_rational(const Rational& q, mpfr_prec_t prec = 128) {
  const Integer m = std::max(abs_value(q.get_num()), abs_value(q.get_den()));
  return log_interval(m, prec);
}

/// Silverman's mu(E) = h(Delta)/12 + h_inf(j)/12 + h_inf(b2/12)/2 + log(2*)/2
/// with 2* = 2 if b2 != 0 and 1 otherwise.
inline Interval silverman_mu(const WeierstrassCurve& E, mpfr_prec_t prec = 128) {
  const Interval twelfth = Interval::exact(Rational(1, 12), prec), half = Interval::exact(Rational(1, 2), prec);
  Interval mu = log_interval(E.discriminant, prec).scaled(twelfth);
  mu = mu + log_plus_interval(E.j, prec).scaled(twelfth);
  Rational b2_12(E.b2, 12);
  b2_12.canonicalize();
  mu = mu + log_plus_interval(b2_12, prec).scaled(half);
  if (sgn(E.b2) != 0) mu = mu + log_interval(Integer(2), prec).scaled(half);
  return mu;
}

/// Silverman's bounds: lower <= hhat(P) - h(x(P))/2 <= upper, with
/// lower = -h(j)/24 - mu - 0.973 and upper = mu + 1.07.
struct HeightDifferenceBounds {
  Interval lower, upper;
};

inline HeightDifferenceBounds silverman_bounds(const WeierstrassCurve& E, mpfr_prec_t prec = 128) {
  const Interval mu = silverman_mu(E, prec);
  const Interval hj = height_of_rational(E.j, prec);
  const Interval lower = Interval::exact(Rational(0), prec) - hj.scaled(Interval::exact(Rational(1, 24), prec)) - mu -
                         Interval::exact(Rational(973, 1000), prec);
  const Interval upper = mu + Interval::exact(Rational(107, 100), prec);
  return {lower, upper};
}

/// Canonical height normalized to be comparable with h(x)/2, with a
/// certified enclosure.
struct CanonicalHeight {
  Interval value;
  int doublings = 0;
};

/// hhat(P) = lim 4^-n h(x(2^n P))/2. After n doublings the remainder is
/// bounded by 4^-n times the width of Silverman's difference bounds.
inline CanonicalHeight canonical_height(const WeierstrassCurve& E, const RationalPoint& P, double target_error = 1e-6,
                                        mpfr_prec_t prec = 128) {
  const Interval zero = Interval::exact(Rational(0), prec);
  if (P.infinity) return {zero, 0};
  // Rational torsion has order at most 12.
  RationalPoint R = P;
  for (int n = 2; n <= 12; ++n) {
    R = ec_add(E, R, P);
    require(!R.infinity, ErrorCode::kDomain, "canonical_height: torsion point");
  }
  const auto bounds = silverman_bounds(E, prec);
  // |hhat - h/2| <= C with C = max(upper, -lower).
  BigFloat C = bounds.upper.hi;
  const BigFloat neg_lower = -bounds.lower.lo;
  if (neg_lower > C) C = neg_lower;
  RationalPoint Q = P;
  const BigFloat target(target_error, prec);
  for (int n = 0; n <= 64; ++n) {
    require(!Q.infinity, ErrorCode::kDomain, "canonical_height: torsion point");
    const BigFloat scale = BigFloat::pow2(-2L * n - 1, prec);  // 4^-n / 2
    Interval h = height_of_rational(Q.x, prec);
    h = {BigFloat::mul(h.lo, scale, MPFR_RNDD), BigFloat::mul(h.hi, scale, MPFR_RNDU)};
    const BigFloat err = BigFloat::mul(C, BigFloat::pow2(-2L * n, prec), MPFR_RNDU);
    if (err <= target) return {{BigFloat::sub(h.lo, err, MPFR_RNDD), BigFloat::add(h.hi, err, MPFR_RNDU)}, n};
    Q = ec_add(E, Q, Q);
  }
  fail(ErrorCode::kPrecision, "canonical_height: target error not reached");
}

/// log max(sum |alpha_i|, sum |beta_i|) of a representation of x.
inline Interval alpha_constant(const RatioForm& rep, mpfr_prec_t prec = 128) {
  Integer a = 0, b = 0;
  for (const auto& c : rep.p) a += abs_value(c);
  for (const auto& c : rep.q) b += abs_value(c);
  return log_interval(std::max(a, b), prec);
}

/// Bound on hhat(phi(Q)) for rational Q of height at most 10^delta where the
/// given representation of x is defined, and the resulting range of k.
struct HeightBudget {
  Interval mu, alpha;
  int dx = 0;
  long delta = 0;
  Interval bound;   // mu + 1.07 + (alpha + dx delta log 10)/2
  Interval hhat_p0;
  long k_max = 0;
};

inline HeightBudget height_bound(const WeierstrassCurve& E, const RatioForm& rep, long delta, const Interval& hhat_p0,
                                 mpfr_prec_t prec = 128) {
  require(delta >= 0, ErrorCode::kDomain, "height_bound: delta must be nonnegative");
  require(hhat_p0.lo.sign() > 0, ErrorCode::kPrecision, "height_bound: hhat(P0) enclosure does not exclude 0");
  HeightBudget b;
  b.mu = silverman_mu(E, prec);
  b.alpha = alpha_constant(rep, prec);
  b.dx = rep.degree;
  b.delta = delta;
  b.hhat_p0 = hhat_p0;
  const Interval half = Interval::exact(Rational(1, 2), prec);
  const Interval growth = ln10(prec).scaled(Interval::exact(Rational(static_cast<long>(rep.degree) * delta), prec));
  b.bound = b.mu + Interval::exact(Rational(107, 100), prec) + (b.alpha + growth).scaled(half);
  // k^2 hhat(P0) <= B  =>  |k| <= sqrt(B_hi / hhat_lo).
  const BigFloat ratio = BigFloat::div(b.bound.hi, hhat_p0.lo, MPFR_RNDU);
  const BigFloat root = BigFloat::sqrt(ratio, MPFR_RNDU);
  b.k_max = root.floor().get_si();
  return b;
}

/// The k with phi(Q) = k P0 for an image point, by trial over |k| <= bound.
inline std::optional<long> multiple_of_generator(const WeierstrassCurve& E, const RationalPoint& P0,
                                                 const RationalPoint& image, long bound) {
  if (image.infinity) return 0;
  RationalPoint acc = RationalPoint::zero();
  for (long k = 1; k <= bound; ++k) {
    acc = ec_add(E, acc, P0);
    if (acc == image) return k;
    if (ec_neg(E, acc) == image) return -k;
  }
  return std::nullopt;
}

/// Trial bound for multiple_of_generator: sqrt(hhat(image)/hhat(P0)) + 1.
inline long multiple_search_bound(const WeierstrassCurve& E, const RationalPoint& image, const Interval& hhat_p0) {
  if (image.infinity) return 0;
  const auto h = canonical_height(E, image, 1e-3);
  const BigFloat r = BigFloat::sqrt(BigFloat::div(h.value.hi, hhat_p0.lo, MPFR_RNDU), MPFR_RNDU);
  return r.floor().get_si() + 1;
}

}  // namespace xzp

#endif  // XZP_HEIGHTS_HPP
