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

#ifndef XZP_MODINT_HPP
#define XZP_MODINT_HPP

#include <cstdint>
#include <ostream>

#include "xzp/common.hpp"

namespace xzp {

/// Element of F_ell for a word-sized prime ell (< 2^31). The modulus travels
/// with the value; combining elements of different fields throws.
class ModInt {
 public:
  ModInt() = default;
  ModInt(std::int64_t v, std::uint32_t modulus) : mod_(modulus) {
    require(modulus >= 2, ErrorCode::kDomain, "ModInt modulus must be >= 2");
    std::int64_t r = v % static_cast<std::int64_t>(modulus);
    if (r < 0) r += modulus;
    val_ = static_cast<std::uint32_t>(r);
  }
  static ModInt from_integer(const Integer& z, std::uint32_t modulus) {
    Integer r = mod_floor(z, Integer(modulus));
    return ModInt(static_cast<std::int64_t>(r.get_ui()), modulus);
  }
  static ModInt from_rational(const Rational& q, std::uint32_t modulus) {
    ModInt den = from_integer(q.get_den(), modulus);
    require(!den.is_zero(), ErrorCode::kDomain,
            "denominator " + q.get_den().get_str() + " divisible by " + std::to_string(modulus));
    return from_integer(q.get_num(), modulus) / den;
  }

  std::uint32_t value() const noexcept { return val_; }
  std::uint32_t modulus() const noexcept { return mod_; }
  bool is_zero() const noexcept { return val_ == 0; }

  ModInt operator-() const { return ModInt(raw(val_ == 0 ? 0 : mod_ - val_)); }
  ModInt& operator+=(const ModInt& o) {
    check(o);
    std::uint64_t s = std::uint64_t(val_) + o.val_;
    val_ = static_cast<std::uint32_t>(s >= mod_ ? s - mod_ : s);
    return *this;
  }
  ModInt& operator-=(const ModInt& o) {
    check(o);
    val_ = val_ >= o.val_ ? val_ - o.val_ : static_cast<std::uint32_t>(std::uint64_t(val_) + mod_ - o.val_);
    return *this;
  }
  ModInt& operator*=(const ModInt& o) {
    check(o);
    val_ = static_cast<std::uint32_t>(std::uint64_t(val_) * o.val_ % mod_);
    return *this;
  }
  ModInt& operator/=(const ModInt& o) { return *this *= o.inverse(); }

  ModInt inverse() const {
    require(val_ != 0, ErrorCode::kDomain, "division by zero in F_" + std::to_string(mod_));
    return pow(mod_ - 2);
  }
  ModInt pow(std::uint64_t e) const {
    ModInt base = *this, acc(1, mod_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
  friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
  friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }
  friend ModInt operator/(ModInt a, const ModInt& b) { return a /= b; }
  friend bool operator==(const ModInt& a, const ModInt& b) {
    return a.val_ == b.val_ && a.mod_ == b.mod_;
  }
  friend bool operator!=(const ModInt& a, const ModInt& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const ModInt& a) { return os << a.val_; }

 private:
  ModInt raw(std::uint32_t v) const {
    ModInt r;
    r.val_ = v;
    r.mod_ = mod_;
    return r;
  }
  void check(const ModInt& o) const {
    if (mod_ != o.mod_)
      fail(ErrorCode::kDomain, "mixed coefficient rings: F_" + std::to_string(mod_) + " vs F_" +
                                   std::to_string(o.mod_));
  }

  std::uint32_t val_ = 0;
  std::uint32_t mod_ = 0;
};

/// Coefficient-ring glue used by the generic series, matrix and curve code.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_int(long v, const Rational&) { return Rational(v); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational inverse(const Rational& x) {
    require(sgn(x) != 0, ErrorCode::kDomain, "division by zero");
    return Rational(1) / x;
  }
  static bool same_ring(const Rational&, const Rational&) { return true; }
  static std::string name(const Rational&) { return "Q"; }
};

template <>
struct RingTraits<ModInt> {
  static ModInt zero(const ModInt& like) { return ModInt(0, like.modulus()); }
  static ModInt one(const ModInt& like) { return ModInt(1, like.modulus()); }
  static ModInt from_int(long v, const ModInt& like) { return ModInt(v, like.modulus()); }
  static bool is_zero(const ModInt& x) { return x.is_zero(); }
  static ModInt inverse(const ModInt& x) { return x.inverse(); }
  static bool same_ring(const ModInt& a, const ModInt& b) { return a.modulus() == b.modulus(); }
  static std::string name(const ModInt& x) { return "F_" + std::to_string(x.modulus()); }
};

}  // namespace xzp

#endif  // XZP_MODINT_HPP
