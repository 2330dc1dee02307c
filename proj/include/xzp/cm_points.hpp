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

#ifndef XZP_CM_POINTS_HPP
#define XZP_CM_POINTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "xzp/bigfloat.hpp"
#include "xzp/common.hpp"
#include "xzp/intseries.hpp"
#include "xzp/linalg.hpp"
#include "xzp/model.hpp"

namespace xzp {

/// Discriminants of the imaginary quadratic orders of class number one.
inline constexpr std::array<long, 13> kClassNumberOneDiscriminants = {-3,  -4,  -7,  -8,  -11, -12, -16,
                                                                      -19, -27, -28, -43, -67, -163};

/// Discriminants for which the level p splits or ramifies in the order.
inline std::vector<long> heegner_discriminants(long p) {
  require(p > 2 && is_prime_u64(static_cast<std::uint64_t>(p)), ErrorCode::kDomain,
          "heegner_discriminants: level must be an odd prime");
  std::vector<long> out;
  for (long D : kClassNumberOneDiscriminants)
    if (legendre(Integer(D), Integer(p)) >= 0) out.push_back(D);
  return out;
}

/// Exact number re + im * i*sqrt(s) with rational re, im and squarefree-free
/// positive integer s (s is kept as given, not reduced).
struct ImaginarySurd {
  Rational re, im;
  long s = 1;

  Rational abs2() const { return re * re + im * im * s; }

  Complex numeric(mpfr_prec_t prec) const {
    return {BigFloat(re, prec), BigFloat(im, prec) * BigFloat::sqrt(BigFloat(s, prec))};
  }

  /// Value of Im as a double, for diagnostics and precision planning.
  double imag_double() const { return im.get_d() * std::sqrt(static_cast<double>(s)); }

  friend bool operator==(const ImaginarySurd& a, const ImaginarySurd& b) {
    return a.re == b.re && a.im == b.im && a.s == b.s;
  }
};

inline bool is_class_number_one(long D) {
  return std::find(kClassNumberOneDiscriminants.begin(), kClassNumberOneDiscriminants.end(), D) !=
         kClassNumberOneDiscriminants.end();
}

/// (1 + i sqrt|D|)/2 for odd D, i sqrt|D| / 2 for even D.
inline ImaginarySurd tau_of_discriminant(long D) {
  require(is_class_number_one(D), ErrorCode::kDomain,
          "tau_of_discriminant: " + std::to_string(D) + " is not a class number one discriminant");
  const Rational half(1, 2);
  return {(D % 2 != 0) ? half : Rational(0), half, -D};
}

/// |c tau + d|^2 in exact arithmetic.
inline Rational norm_form(const ImaginarySurd& tau, const Integer& c, const Integer& d) {
  const Rational x = tau.re * c + d, y = tau.im * c;
  return x * x + y * y * tau.s;
}

/// Generator (c, d) of a prime of norm p: N(c tau_E + d) = p, c != 0.
/// Smallest |c|, then smallest |d|, then c > 0, then d >= 0.
inline std::pair<Integer, Integer> split_prime_generator(long D, long p) {
  const auto tau = tau_of_discriminant(D);
  const long cmax = static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(p) / -D))) + 2;
  for (long c = 1; c <= cmax; ++c) {
    const long dmax = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(p)))) + c + 2;
    for (long ad = 0; ad <= dmax; ++ad)
      for (long sc : {1, -1})
        for (long sd : {1, -1}) {
          if (ad == 0 && sd < 0) continue;
          if (norm_form(tau, sc * c, sd * ad) == p) return {Integer(sc * c), Integer(sd * ad)};
        }
  }
  fail(ErrorCode::kInconsistent, "split_prime_generator: no element of norm " + std::to_string(p) +
                                     " for discriminant " + std::to_string(D));
}

/// [[a, b], [c, d]] with ad - bc = 1, a the least positive solution.
inline std::array<Integer, 4> unimodular_completion(const Integer& c, const Integer& d) {
  require(gcd(c, d) == 1, ErrorCode::kDomain, "unimodular_completion: gcd(c, d) != 1");
  if (sgn(c) == 0) return {d, Integer(0), Integer(0), d};  // d = +-1
  const Integer ac = abs_value(c);
  auto [g, s, t] = extended_gcd(mod_floor(d, ac), ac);
  Integer a = mod_floor(s, ac);
  if (sgn(a) == 0) a = ac;  // |c| = 1
  const Integer num = a * d - 1;
  require(mpz_divisible_p(num.get_mpz_t(), c.get_mpz_t()) != 0, ErrorCode::kInconsistent,
          "unimodular_completion: inverse computation failed");
  return {a, Integer(num / c), c, d};
}

/// (a tau + b)/(c tau + d) for an integer matrix of determinant 1.
inline ImaginarySurd apply_matrix(const std::array<Integer, 4>& m, const ImaginarySurd& tau) {
  const Rational a(m[0]), b(m[1]), c(m[2]), d(m[3]);
  const Rational N = norm_form(tau, m[2], m[3]);
  const Rational real = a * c * tau.abs2() + (a * d + b * c) * tau.re + b * d;
  return {real / N, (a * d - b * c) * tau.im / N, tau.s};
}

/// Fricke involution -1/(p tau).
inline ImaginarySurd fricke(const ImaginarySurd& tau, long p) {
  const Rational n = tau.abs2() * p;
  return {-tau.re / n, tau.im / n, tau.s};
}

struct CMTau {
  ImaginarySurd tau_hat;         // gamma_hat tau_E
  ImaginarySurd representative;  // same point of X0+(p), larger imaginary part
  int fricke_steps = 0;
};

/// tau_hat and its reduced representative under translations and w_p; all
/// weight-2 +1-eigenforms transform by a common factor, so the projective
/// point is unchanged.
inline CMTau cm_tau(const std::array<Integer, 4>& gamma, long D, long p) {
  CMTau out;
  out.tau_hat = apply_matrix(gamma, tau_of_discriminant(D));
  auto t = out.tau_hat;
  for (int iter = 0; iter < 64; ++iter) {
    t.re -= floor_div(t.re.get_num() * 2 + t.re.get_den(), t.re.get_den() * 2);  // -1/2 <= re < 1/2
    if (t.abs2() * p >= 1) break;
    t = fricke(t, p);
    ++out.fricke_steps;
  }
  out.representative = t;
  return out;
}

// ---------------------------------------------------------------------------
// Numerical evaluation.

struct BasisValues {
  std::vector<Complex> values;
  double log2_tail = 0;   // log2 of a bound for the truncation error of each entry
  double scale = 0;       // sum |c_n| n^k |q|^n, the rounding-error scale
};

/// Default growth constant C with |c_n| <= C n on the known coefficients,
/// doubled for safety.
inline double growth_constant(const std::vector<IntSeries>& basis) {
  double c = 1;
  for (const auto& f : basis)
    for (std::size_t n = 1; n < f.size(); ++n)
      c = std::max(c, std::fabs(f[n].get_d()) / static_cast<double>(n));
  return 2 * c;
}

/// log of the tail sum_{n>m} C n^{k+1} r^n.
inline double log_tail_bound(double C, long m, int k, double r) {
  const double rho = std::pow(static_cast<double>(m + 2) / static_cast<double>(m + 1), k + 1) * r;
  if (rho >= 1) return HUGE_VAL;
  return std::log(C) + (k + 1) * std::log(static_cast<double>(m + 1)) + (m + 1) * std::log(r) - std::log1p(-rho);
}

/// Coefficients needed for a tail below 2^-bits when |c_n| grows at most
/// linearly: m >= (bits ln 2 + 64) / (2 pi Im tau).
inline long coefficients_needed(double im_tau, int bits) {
  return static_cast<long>(std::ceil((bits * std::log(2.0) + 64) / (2 * M_PI * im_tau)));
}

/// (theta^k f_i)(tau) for every basis series, theta = q d/dq.
inline BasisValues evaluate_basis(const std::vector<IntSeries>& basis, const Complex& tau, int k,
                                  std::optional<double> growth = std::nullopt) {
  require(!basis.empty(), ErrorCode::kDomain, "evaluate_basis: empty basis");
  require(tau.im.sign() > 0, ErrorCode::kDomain, "evaluate_basis: tau must lie in the upper half plane");
  const auto prec = tau.precision();
  const long m = static_cast<long>(basis[0].size()) - 1;
  const Complex q = Complex::q_of_tau(tau);
  const double r = q.abs().to_double();
  BasisValues out;
  out.values.assign(basis.size(), Complex(prec));
  Complex qn = q;
  BigFloat t(prec);
  double scale = 0, rn = r;
  for (long n = 1; n <= m; ++n) {
    double nk = 1;
    for (int i = 0; i < k; ++i) nk *= static_cast<double>(n);
    double colmax = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Integer& c = basis[i][static_cast<std::size_t>(n)];
      if (sgn(c) == 0) continue;
      Integer w = c;
      for (int j = 0; j < k; ++j) w *= n;
      mpfr_mul_z(t.get(), qn.re.get(), w.get_mpz_t(), MPFR_RNDN);
      mpfr_add(out.values[i].re.get(), out.values[i].re.get(), t.get(), MPFR_RNDN);
      mpfr_mul_z(t.get(), qn.im.get(), w.get_mpz_t(), MPFR_RNDN);
      mpfr_add(out.values[i].im.get(), out.values[i].im.get(), t.get(), MPFR_RNDN);
      colmax = std::max(colmax, std::fabs(c.get_d()));
    }
    scale += colmax * nk * rn;
    rn *= r;
    qn = qn * q;
  }
  const double C = growth.value_or(growth_constant(basis));
  out.log2_tail = log_tail_bound(C, m, k, r) / std::log(2.0);
  out.scale = scale;
  return out;
}

/// Continued-fraction reconstruction of x with denominator at most `bound`,
/// accepting the first convergent within `tol`.
inline std::optional<Rational> rational_from_real(const BigFloat& x, const Integer& bound, const BigFloat& tol) {
  const auto prec = x.precision();
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigFloat y = x;
  for (int iter = 0; iter < 200; ++iter) {
    const Integer a = y.floor();
    const Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > bound) return std::nullopt;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const BigFloat approx = BigFloat(Rational(p1, q1), prec);
    if (BigFloat::abs(x - approx) <= tol) return Rational(p1, q1);
    const BigFloat frac = y - BigFloat(a, prec);
    if (frac.is_zero()) return std::nullopt;
    y = BigFloat(1L, prec) / frac;
  }
  return std::nullopt;
}

/// Normalized coprime integer vector (first nonzero entry positive).
inline IntVector primitive_point(IntVector v) { return make_primitive(std::move(v)); }

/// Projective rational point close to v: ratios to the largest coordinate
/// by continued fractions, then denominators cleared.
inline std::optional<IntVector> rationalize_projective(const std::vector<Complex>& v, const Integer& bound,
                                                       const BigFloat& tol) {
  require(!v.empty(), ErrorCode::kDomain, "rationalize_projective: empty vector");
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].norm() > v[imax].norm()) imax = i;
  require(!v[imax].norm().is_zero(), ErrorCode::kDomain, "rationalize_projective: zero vector");
  std::vector<Rational> ratios;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex z = v[i] / v[imax];
    if (BigFloat::abs(z.im) > tol) return std::nullopt;
    auto r = rational_from_real(z.re, bound, tol);
    if (!r) return std::nullopt;
    ratios.push_back(*r);
  }
  Integer den = 1;
  for (const auto& r : ratios) den = lcm(den, r.get_den());
  IntVector out;
  for (const auto& r : ratios) out.push_back(r.get_num() * (den / r.get_den()));
  return primitive_point(std::move(out));
}

/// The point (a_1(f_1) : ... : a_1(f_g)).
inline IntVector cusp_point(const std::vector<IntSeries>& basis) {
  IntVector v;
  for (const auto& f : basis) {
    require(f.size() > 1 && sgn(f[0]) == 0, ErrorCode::kDomain, "cusp_point: basis series must vanish at q = 0");
    v.push_back(f[1]);
  }
  require(std::any_of(v.begin(), v.end(), [](const Integer& z) { return sgn(z) != 0; }), ErrorCode::kInput,
          "cusp_point: every first coefficient is zero");
  return primitive_point(std::move(v));
}

struct CMRecord {
  long discriminant = 0;
  ImaginarySurd tau_e;
  Integer c, d;
  std::array<Integer, 4> gamma_hat;
  ImaginarySurd tau_hat;
  ImaginarySurd representative;
  int derivative_order = 0;  // first k with theta^k f not identically zero at the point
  IntVector point;
  int bits = 0;                  // working precision of the accepted reconstruction
  bool verified = false;         // the point satisfies the model exactly
  bool stability_checked = false;  // same point at twice the precision
};

struct ExpectedPointsTable {
  long level = 0;
  IntVector cusp;
  std::vector<CMRecord> cm;
};

struct CMOptions {
  int bits = 256;
  int max_bits = 4096;
  Integer denominator_bound = 1000000;
  bool stability_check = true;  // repeat at twice the precision and compare
};

namespace detail {

/// Point from the first non-vanishing derivative vector, evaluated with
/// `bits` of working precision. The accuracy actually reached is governed by
/// the truncation tail; it must leave at least 40 bits for the ratios.
inline std::optional<std::pair<IntVector, int>> reconstruct_at(const std::vector<IntSeries>& basis,
                                                               const ImaginarySurd& rep, int bits,
                                                               const Integer& bound) {
  const auto prec = static_cast<mpfr_prec_t>(bits);
  const Complex tau = rep.numeric(prec);
  const BigFloat ln2(std::log(2.0), prec);
  for (int k = 0; k <= 3; ++k) {
    auto vals = evaluate_basis(basis, tau, k);
    BigFloat vmax(prec);
    for (const auto& z : vals.values) vmax = std::max(vmax, z.abs());
    if (vmax.is_zero()) continue;
    const double log2_noise = std::max(vals.log2_tail, std::log2(vals.scale) - bits) + 1;
    const double log2_vmax = (BigFloat::log(vmax) / ln2).to_double();
    if (log2_vmax <= log2_noise + 40) continue;  // vanishes: elliptic or ramified point
    const double log2_tol = std::max(-bits / 2.0, log2_noise - log2_vmax + 20);
    require(log2_tol <= -30, ErrorCode::kPrecision,
            "CM evaluation: only " + std::to_string(static_cast<int>(-log2_tol)) +
                " bits of accuracy at Im(tau) = " + std::to_string(rep.imag_double()) + "; more coefficients needed");
    const BigFloat tol = BigFloat::pow2(static_cast<long>(std::ceil(log2_tol)), prec);
    auto pt = rationalize_projective(vals.values, bound, tol);
    if (!pt) return std::nullopt;
    return std::make_pair(*pt, k);
  }
  return std::nullopt;
}

}  // namespace detail

/// Cusp plus one exactly verified point for every admissible discriminant.
inline ExpectedPointsTable expected_points(const Model& model, const std::vector<IntSeries>& basis,
                                           CMOptions opt = {}) {
  ExpectedPointsTable table;
  table.level = model.level;
  table.cusp = cusp_point(basis);
  require(verify_point_on_model(model, table.cusp), ErrorCode::kInconsistent,
          "expected_points: the cusp is not on the model");
  for (long D : heegner_discriminants(model.level)) {
    CMRecord rec;
    rec.discriminant = D;
    rec.tau_e = tau_of_discriminant(D);
    std::tie(rec.c, rec.d) = split_prime_generator(D, model.level);
    require(norm_form(rec.tau_e, rec.c, rec.d) == model.level, ErrorCode::kInconsistent, "norm check failed");
    rec.gamma_hat = unimodular_completion(rec.c, rec.d);
    require(rec.gamma_hat[0] * rec.gamma_hat[3] - rec.gamma_hat[1] * rec.gamma_hat[2] == 1,
            ErrorCode::kInconsistent, "gamma_hat has determinant != 1");
    const auto ct = cm_tau(rec.gamma_hat, D, model.level);
    rec.tau_hat = ct.tau_hat;
    rec.representative = ct.representative;
    std::optional<std::pair<IntVector, int>> found;
    int bits = opt.bits;
    for (; bits <= opt.max_bits && !found; bits *= 2) {
      try {
        found = detail::reconstruct_at(basis, rec.representative, bits, opt.denominator_bound);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kPrecision) break;
        throw;
      }
      if (found && !verify_point_on_model(model, found->first)) found.reset();
    }
    require(found.has_value(), ErrorCode::kPrecision,
            "expected_points: reconstruction failed for discriminant " + std::to_string(D));
    rec.bits = bits / 2;
    if (opt.stability_check) {
      // Doubling may exceed what the basis precision supports; the record then
      // says so instead of claiming stability.
      try {
        auto again = detail::reconstruct_at(basis, rec.representative, bits, opt.denominator_bound);
        require(again.has_value() && again->first == found->first, ErrorCode::kInconsistent,
                "expected_points: reconstruction for discriminant " + std::to_string(D) +
                    " is not stable under doubling the precision");
        rec.stability_checked = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPrecision) throw;
      }
    }
    rec.point = found->first;
    rec.derivative_order = found->second;
    rec.verified = true;
    table.cm.push_back(std::move(rec));
  }
  return table;
}

}  // namespace xzp

#endif  // XZP_CM_POINTS_HPP
