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

#ifndef XZP_COMMON_HPP
#define XZP_COMMON_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace xzp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Error categories. The CLI maps them onto process exit codes.
enum class ErrorCode {
  kInput = 3,         // malformed file, schema violation, bad argument
  kRankDeficient = 5, // fixture rows not independent
  kPrecision = 6,     // not enough q-expansion coefficients
  kInconsistent = 4,  // an exact identity failed (internal inconsistency)
  kDomain = 7,        // precondition of an operation violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "a" or "a/b" (optional sign, optional surrounding blanks).
inline Rational parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t.empty()) fail(ErrorCode::kInput, "empty rational literal");
  Rational q;
  if (q.set_str(t, 10) != 0) fail(ErrorCode::kInput, "bad rational literal '" + t + "'");
  if (q.get_den() == 0) fail(ErrorCode::kInput, "zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}

inline Integer abs_value(const Integer& z) { return z < 0 ? Integer(-z) : z; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {g, s, t};
}

/// Floor division towards -infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Nearest integer to a/b, ties towards +infinity.
inline Integer round_div(const Integer& a, const Integer& b) {
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  return floor_div(num, den);
}

/// Non-negative residue of a mod m.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs_value(m);
  return r;
}

inline bool is_probable_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n < bound; ++n)
    if (is_prime_u64(n)) out.push_back(n);
  return out;
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Integer& v) {
      Integer w = v * v + c;
      return mod_floor(w, n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mod_floor(q * abs_value(x - y), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs_value(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Distinct prime divisors of |n| in increasing order (empty for |n| <= 1).
inline std::vector<Integer> prime_divisors(const Integer& n_in) {
  Integer n = abs_value(n_in);
  std::vector<Integer> out;
  if (n <= 1) return out;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n > 1) detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Kronecker symbol (a|n) for odd prime n.
inline int legendre(const Integer& a, const Integer& p) {
  return mpz_legendre(mod_floor(a, p).get_mpz_t(), p.get_mpz_t());
}

}  // namespace xzp

#endif  // XZP_COMMON_HPP
