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

#ifndef XZP_QSERIES_HPP
#define XZP_QSERIES_HPP

#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/modint.hpp"

namespace xzp {

/// Truncated Laurent series sum_{n >= start} c_n q^n known modulo q^{precision+1}.
///
/// A series is either *exact* (a Laurent polynomial, precision() == kExact) or
/// carries a finite precision m. Stored coefficients always cover
/// [start, precision] for finite series, so "zero modulo q^{m+1}" and "exactly
/// zero" are different values. Arithmetic never claims more precision than its
/// inputs justify.
template <class R>
class TruncatedSeries {
 public:
  using Traits = RingTraits<R>;
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  /// Exact zero (precision == kExact) or O(q^{precision+1}).
  explicit TruncatedSeries(R zero = R(), long precision = kExact)
      : zero_(std::move(zero)), start_(precision == kExact ? 0 : precision + 1), precision_(precision) {}

  /// Coefficients c[i] belong to q^{start+i}. For finite precision the vector
  /// is padded/truncated to exactly cover [start, precision].
  TruncatedSeries(long start, std::vector<R> coeffs, long precision, R zero)
      : zero_(std::move(zero)), start_(start), coeffs_(std::move(coeffs)), precision_(precision) {
    if (precision_ != kExact) {
      if (precision_ < start_ - 1) {
        coeffs_.clear();
        start_ = precision_ + 1;
      } else {
        coeffs_.resize(static_cast<std::size_t>(precision_ - start_ + 1), zero_);
      }
    }
    normalize();
  }

  static TruncatedSeries monomial(const R& c, long exponent, long precision = kExact) {
    return TruncatedSeries(exponent, {c}, precision, Traits::zero(c));
  }

  long precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return precision_ == kExact; }
  const R& zero_element() const noexcept { return zero_; }

  /// Lowest exponent with a nonzero known coefficient.
  std::optional<long> valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return start_;
  }
  /// valuation(), or precision+1 when nothing nonzero is known.
  long valuation_bound() const {
    if (!coeffs_.empty()) return start_;
    return precision_ == kExact ? kExact : precision_ + 1;
  }
  /// True when every known coefficient is zero.
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Last exponent with a stored coefficient (for exact series: the degree).
  long last_exponent() const {
    if (precision_ != kExact) return precision_;
    return coeffs_.empty() ? start_ - 1 : start_ + static_cast<long>(coeffs_.size()) - 1;
  }

  R coefficient(long n) const {
    if (precision_ != kExact && n > precision_)
      fail(ErrorCode::kPrecision, "coefficient of q^" + std::to_string(n) +
                                      " is beyond the known precision " + std::to_string(precision_));
    if (n < start_ || n > last_exponent()) return zero_;
    return coeffs_[static_cast<std::size_t>(n - start_)];
  }
  R operator[](long n) const { return coefficient(n); }

  /// Coefficient list for exponents valuation()..precision() (the stored window).
  const std::vector<R>& coefficients() const noexcept { return coeffs_; }
  long start() const noexcept { return start_; }

  TruncatedSeries truncated(long precision) const {
    if (precision >= precision_) return *this;
    std::vector<R> c;
    for (long n = start_; n <= precision && n <= last_exponent(); ++n) c.push_back(coefficient(n));
    return TruncatedSeries(start_, std::move(c), precision, zero_);
  }

  /// Multiplication by q^k.
  TruncatedSeries shifted(long k) const {
    TruncatedSeries out = *this;
    out.start_ += k;
    if (precision_ != kExact) out.precision_ += k;
    return out;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  TruncatedSeries scaled(const R& s) const {
    check_ring(s);
    if (Traits::is_zero(s)) return TruncatedSeries(zero_, precision_);
    TruncatedSeries out = *this;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    return combine(a, b, false);
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return combine(a, b, true);
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_ring(b.zero_);
    const long va = a.valuation_bound(), vb = b.valuation_bound();
    long prec = kExact;
    if (!a.is_exact()) prec = std::min(prec, a.precision_ + (vb == kExact ? kExact : vb));
    if (!b.is_exact()) prec = std::min(prec, b.precision_ + (va == kExact ? kExact : va));
    if (prec >= kExact) prec = kExact;
    if (a.coeffs_.empty() || b.coeffs_.empty()) return TruncatedSeries(a.zero_, prec);
    const long start = a.start_ + b.start_;
    long last = a.last_exponent() + b.last_exponent();
    if (prec != kExact) last = std::min(last, prec);
    if (last < start) return TruncatedSeries(a.zero_, prec);
    std::vector<R> out(static_cast<std::size_t>(last - start + 1), a.zero_);
    const long na = static_cast<long>(a.coeffs_.size()), nb = static_cast<long>(b.coeffs_.size());
    const long span = last - start;
    for (long i = 0; i < na && i <= span; ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      const long jmax = std::min(nb - 1, span - i);
      for (long j = 0; j <= jmax; ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return TruncatedSeries(start, std::move(out), prec, a.zero_);
  }

  TruncatedSeries& operator+=(const TruncatedSeries& b) { return *this = *this + b; }
  TruncatedSeries& operator-=(const TruncatedSeries& b) { return *this = *this - b; }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }

  /// Same known precision and same known coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.precision_ == b.precision_ && a.start_ == b.start_ && a.coeffs_ == b.coeffs_ &&
           Traits::same_ring(a.zero_, b.zero_);
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  /// Agreement on every coefficient known in both series.
  bool agrees_with(const TruncatedSeries& b) const {
    long hi = std::min(precision_, b.precision_);
    if (hi == kExact) hi = std::max(last_exponent(), b.last_exponent());
    long lo = std::min(start_, b.start_);
    for (long n = lo; n <= hi; ++n)
      if (coefficient(n) != b.coefficient(n)) return false;
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    bool first = true;
    for (long n = s.start_; n <= s.last_exponent(); ++n) {
      const R c = s.coefficient(n);
      if (Traits::is_zero(c)) continue;
      if (!first) os << " + ";
      os << "(" << c << ")*q^" << n;
      first = false;
    }
    if (first) os << "0";
    if (!s.is_exact()) os << " + O(q^" << s.precision_ + 1 << ")";
    return os;
  }

  void check_ring(const R& other) const {
    if (!Traits::same_ring(zero_, other))
      fail(ErrorCode::kDomain, "mixed coefficient rings: " + Traits::name(zero_) + " vs " +
                                   Traits::name(other));
  }

 private:
  static TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, bool subtract) {
    a.check_ring(b.zero_);
    const long prec = std::min(a.precision_, b.precision_);
    long lo = std::min(a.start_, b.start_);
    long hi = std::max(a.last_exponent(), b.last_exponent());
    if (prec != kExact) hi = prec;
    if (hi < lo) return TruncatedSeries(a.zero_, prec);
    std::vector<R> out(static_cast<std::size_t>(hi - lo + 1), a.zero_);
    for (long n = a.start_; n <= std::min(hi, a.last_exponent()); ++n) out[n - lo] += a.coeffs_[n - a.start_];
    for (long n = b.start_; n <= std::min(hi, b.last_exponent()); ++n) {
      if (subtract)
        out[n - lo] -= b.coeffs_[n - b.start_];
      else
        out[n - lo] += b.coeffs_[n - b.start_];
    }
    return TruncatedSeries(lo, std::move(out), prec, a.zero_);
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && Traits::is_zero(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      start_ = precision_ == kExact ? 0 : precision_ + 1;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      start_ += static_cast<long>(lead);
    }
    if (precision_ == kExact)
      while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  R zero_;
  long start_ = 0;
  std::vector<R> coeffs_;
  long precision_ = kExact;
};

using QSeries = TruncatedSeries<Rational>;
using FpSeries = TruncatedSeries<ModInt>;

/// Series with rational coefficients c[0] q^start + c[1] q^{start+1} + ...
inline QSeries make_qseries(long start, const std::vector<Rational>& c, long precision) {
  return QSeries(start, c, precision, Rational(0));
}

inline QSeries make_qseries(long start, std::initializer_list<long> c, long precision) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QSeries(start, std::move(v), precision, Rational(0));
}

/// Multiplicative inverse. For an exact (polynomial) input the result is an
/// infinite series, so `cap` must bound its precision.
template <class R>
TruncatedSeries<R> series_invert(const TruncatedSeries<R>& a,
                                 long cap = TruncatedSeries<R>::kExact) {
  using S = TruncatedSeries<R>;
  using T = RingTraits<R>;
  auto val = a.valuation();
  require(val.has_value(), ErrorCode::kDomain, "series_invert: leading coefficient is zero");
  const long v = *val;
  const R lead = a.coefficient(v);
  // a = q^v u with u a unit known to precision a.precision() - v.
  long prec = a.is_exact() ? S::kExact : a.precision() - 2 * v;
  if (prec == S::kExact) {
    if (a.last_exponent() == v) return S::monomial(T::inverse(lead), -v, S::kExact);
    require(cap != S::kExact, ErrorCode::kDomain,
            "series_invert: inverse of a non-monomial polynomial needs a precision cap");
  }
  prec = std::min(prec, cap);
  const long len = prec + v + 1;  // coefficients of u^{-1} needed: exponents 0..prec+v
  if (len <= 0) return S(a.zero_element(), prec);
  const R inv_lead = T::inverse(lead);
  std::vector<R> u(static_cast<std::size_t>(len), a.zero_element());
  for (long i = 0; i < len; ++i) {
    if (a.is_exact() && v + i > a.last_exponent()) break;
    if (!a.is_exact() && v + i > a.precision()) break;
    u[i] = a.coefficient(v + i);
  }
  std::vector<R> w(static_cast<std::size_t>(len), a.zero_element());
  w[0] = inv_lead;
  for (long n = 1; n < len; ++n) {
    R acc = a.zero_element();
    for (long k = 1; k <= n; ++k)
      if (!T::is_zero(u[k])) acc += u[k] * w[n - k];
    w[n] = -acc * inv_lead;
  }
  return S(-v, std::move(w), prec, a.zero_element());
}

template <class R>
TruncatedSeries<R> operator/(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  if (b.is_exact() && !a.is_exact())
    return a * series_invert(b, a.precision() - b.valuation_bound() - a.valuation_bound());
  return a * series_invert(b);
}

/// outer(inner(q)). The inner series must have valuation >= 1; a Laurent outer
/// series additionally needs an invertible inner series.
template <class R>
TruncatedSeries<R> series_compose(const TruncatedSeries<R>& outer, const TruncatedSeries<R>& inner,
                                  long cap = TruncatedSeries<R>::kExact) {
  using S = TruncatedSeries<R>;
  using T = RingTraits<R>;
  outer.check_ring(inner.zero_element());
  auto iv = inner.valuation();
  require(iv.has_value(), ErrorCode::kDomain, "series_compose: inner series has no known nonzero term");
  require(*iv >= 1, ErrorCode::kDomain, "series_compose: inner series must have valuation >= 1");
  const long vi = *iv;
  if (outer.is_zero()) {
    if (outer.is_exact()) return S(outer.zero_element(), S::kExact);
    return S(outer.zero_element(), std::min(cap, (outer.precision() + 1) * vi - 1));
  }
  const long vo = *outer.valuation();
  long target = cap;
  if (!outer.is_exact()) target = std::min(target, (outer.precision() + 1) * vi - 1);
  if (!inner.is_exact()) {
    for (long k = vo; k <= outer.last_exponent(); ++k) {
      if (k == 0 || T::is_zero(outer.coefficient(k))) continue;
      target = std::min(target, (k - 1) * vi + inner.precision());
      break;
    }
  }
  if (target == S::kExact && vo < 0)
    fail(ErrorCode::kDomain, "series_compose: exact Laurent composition needs a precision cap");
  long top = outer.last_exponent();
  if (target != S::kExact) top = std::min(top, target / vi);
  // P(z) = sum_{k=vo}^{top} o_k z^{k-vo}; result = P(inner) * inner^{vo}.
  const long work = target == S::kExact ? S::kExact : target - vo * vi;
  S acc(outer.zero_element(), S::kExact);
  S in = inner;
  if (work != S::kExact) in = in.truncated(work);
  for (long k = top; k >= vo; --k) {
    acc = acc * in;
    const R c = outer.coefficient(k);
    if (!T::is_zero(c)) acc = acc + S::monomial(c, 0);
    if (work != S::kExact) acc = acc.truncated(work);
  }
  if (vo != 0) {
    S base = vo > 0 ? inner : series_invert(inner, target == S::kExact ? S::kExact : target + (-vo - 1) * vi);
    const long n = vo > 0 ? vo : -vo;
    S pw = base;
    for (long i = 2; i <= n; ++i) {
      pw = pw * base;
      if (target != S::kExact) pw = pw.truncated(vo < 0 ? target + (n - i) * vi : target);
    }
    acc = acc * pw;
  }
  if (target != S::kExact) acc = acc.truncated(target);
  return acc;
}

/// sum a_n q^n  ->  sum (a_n / n) q^n (the integral of f dq/q).
inline QSeries integrate_dlog(const QSeries& f) {
  require(f.valuation_bound() >= 1, ErrorCode::kDomain,
          "integrate_dlog: series must have valuation >= 1");
  std::vector<Rational> c;
  for (long n = f.start(); n <= f.last_exponent(); ++n) c.push_back(f.coefficient(n) / Rational(n));
  return QSeries(f.start(), std::move(c), f.precision(), Rational(0));
}

/// q d/dq.
template <class R>
TruncatedSeries<R> theta(const TruncatedSeries<R>& f) {
  std::vector<R> c;
  for (long n = f.start(); n <= f.last_exponent(); ++n)
    c.push_back(f.coefficient(n) * RingTraits<R>::from_int(n, f.zero_element()));
  return TruncatedSeries<R>(f.start(), std::move(c), f.precision(), f.zero_element());
}

/// Coefficientwise reduction of a rational series modulo a prime.
inline FpSeries reduce_mod(const QSeries& f, std::uint32_t ell) {
  require(is_prime_u64(ell), ErrorCode::kDomain, "reduce_mod: modulus must be prime");
  std::vector<ModInt> c;
  for (long n = f.start(); n <= f.last_exponent(); ++n) {
    const Rational& a = f.coefficient(n);
    if (mpz_divisible_ui_p(a.get_den().get_mpz_t(), ell))
      fail(ErrorCode::kDomain, "bad prime for this series: " + std::to_string(ell) +
                                   " divides the denominator of the q^" + std::to_string(n) +
                                   " coefficient");
    c.push_back(ModInt::from_rational(a, ell));
  }
  return FpSeries(f.start(), std::move(c), f.precision(), ModInt(0, ell));
}

}  // namespace xzp

#endif  // XZP_QSERIES_HPP
