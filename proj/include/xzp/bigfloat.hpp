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

#ifndef XZP_BIGFLOAT_HPP
#define XZP_BIGFLOAT_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "xzp/common.hpp"

namespace xzp {

/// Owning wrapper around an MPFR number. Binary operators round to nearest
/// at the larger operand precision; the static helpers take an explicit
/// rounding mode for directed (outward) rounding.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(long x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(double x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const Integer& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  BigFloat(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  BigFloat(const BigFloat& o) : BigFloat(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.precision());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Decimal string with the given number of significant digits, rounded
  /// in the given direction.
  std::string str(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const {
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
    mpfr_asprintf(&buf, fmt, digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static BigFloat parse(const std::string& text, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    BigFloat x(prec);
    require(mpfr_set_str(x.v_, text.c_str(), 10, rnd) == 0, ErrorCode::kInput, "not a decimal number: " + text);
    return x;
  }

  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  template <class Op>
  static BigFloat unary(const BigFloat& a, Op op, mpfr_rnd_t rnd) {
    BigFloat r(a.precision());
    op(r.v_, a.v_, rnd);
    return r;
  }
  template <class Op>
  static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op, mpfr_rnd_t rnd) {
    BigFloat r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, rnd);
    return r;
  }
  static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { return binary(a, b, mpfr_add, r); }
  static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { return binary(a, b, mpfr_sub, r); }
  static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { return binary(a, b, mpfr_mul, r); }
  static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { return binary(a, b, mpfr_div, r); }
  static BigFloat log(const BigFloat& a, mpfr_rnd_t r = MPFR_RNDN) { return unary(a, mpfr_log, r); }
  static BigFloat exp(const BigFloat& a, mpfr_rnd_t r = MPFR_RNDN) { return unary(a, mpfr_exp, r); }
  static BigFloat sqrt(const BigFloat& a, mpfr_rnd_t r = MPFR_RNDN) { return unary(a, mpfr_sqrt, r); }
  static BigFloat sin(const BigFloat& a) { return unary(a, mpfr_sin, MPFR_RNDN); }
  static BigFloat cos(const BigFloat& a) { return unary(a, mpfr_cos, MPFR_RNDN); }
  static BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  /// Exactly representable 2^e.
  static BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  Integer floor() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  /// log max(1, |q|) rounded in the given direction.
  static BigFloat log_plus(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat a(q, prec, rnd == MPFR_RNDU ? MPFR_RNDA : MPFR_RNDZ);
    mpfr_abs(a.v_, a.v_, MPFR_RNDN);
    if (mpfr_cmp_ui(a.v_, 1) <= 0) return BigFloat(0L, prec);
    return log(a, rnd);
  }

  /// log |z| of a nonzero integer, rounded in the given direction.
  static BigFloat log_abs(const Integer& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    require(sgn(z) != 0, ErrorCode::kDomain, "log of zero");
    BigFloat a(abs_value(z), prec, rnd == MPFR_RNDU ? MPFR_RNDU : MPFR_RNDD);
    return log(a, rnd);
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN); }
  BigFloat operator-() const { return unary(*this, mpfr_neg, MPFR_RNDN); }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

/// Complex number with BigFloat parts.
struct Complex {
  BigFloat re, im;

  explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  BigFloat norm() const { return re * re + im * im; }
  BigFloat abs() const { return BigFloat::sqrt(norm()); }

  /// e^{2 pi i tau}.
  static Complex q_of_tau(const Complex& tau) {
    const auto prec = tau.precision();
    const BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
    const BigFloat mod = BigFloat::exp(-(two_pi * tau.im));
    const BigFloat arg = two_pi * tau.re;
    return {mod * BigFloat::cos(arg), mod * BigFloat::sin(arg)};
  }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const BigFloat n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex scaled(const BigFloat& s) const { return {re * s, im * s}; }
};

}  // namespace xzp

#endif  // XZP_BIGFLOAT_HPP
