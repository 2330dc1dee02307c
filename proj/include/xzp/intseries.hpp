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

#ifndef XZP_INTSERIES_HPP
#define XZP_INTSERIES_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/monomials.hpp"
#include "xzp/qseries.hpp"

namespace xzp {

/// Integer q-expansion: entry n is the coefficient of q^n, n = 0..size()-1.
/// Used for the (large) basis expansions where exact rational series would
/// be needlessly slow.
using IntSeries = std::vector<Integer>;

namespace detail {

inline bool fits_int64(const IntSeries& a, std::int64_t& maxabs) {
  maxabs = 0;
  for (const auto& x : a) {
    if (!x.fits_slong_p()) return false;
    maxabs = std::max<std::int64_t>(maxabs, std::abs(x.get_si()));
  }
  return true;
}

}  // namespace detail

/// a*b truncated to exponents 0..n. Uses 128-bit accumulation when the
/// inputs are small enough for it to be exact, arbitrary precision otherwise.
inline IntSeries product_truncated(const IntSeries& a, const IntSeries& b, std::size_t n) {
  IntSeries out(n + 1, 0);
  std::int64_t ma = 0, mb = 0;
  const bool fast = detail::fits_int64(a, ma) && detail::fits_int64(b, mb) &&
                    (ma == 0 || mb == 0 ||
                     static_cast<long double>(ma) * mb * static_cast<long double>(n + 1) < 1.0e37L);
  if (fast) {
    std::vector<std::int64_t> x(a.size()), y(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i].get_si();
    for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i].get_si();
    for (std::size_t k = 0; k <= n; ++k) {
      __int128 s = 0;
      const std::size_t lo = k >= y.size() ? k - y.size() + 1 : 0;
      const std::size_t hi = std::min(k, x.size() == 0 ? 0 : x.size() - 1);
      for (std::size_t i = lo; i <= hi && i < x.size(); ++i) s += static_cast<__int128>(x[i]) * y[k - i];
      if (s >= std::numeric_limits<std::int64_t>::min() && s <= std::numeric_limits<std::int64_t>::max()) {
        out[k] = static_cast<long>(static_cast<std::int64_t>(s));
      } else {
        const bool neg = s < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-s) : static_cast<unsigned __int128>(s);
        Integer hi_part = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
        Integer lo_part = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
        out[k] = (hi_part << 64) + lo_part;
        if (neg) out[k] = -out[k];
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Products of the basis series over all degree-d monomials (in monomial
/// order), each truncated to exponents 0..n.
inline std::vector<IntSeries> monomial_products(const std::vector<IntSeries>& basis, int d, std::size_t n) {
  require(d >= 1, ErrorCode::kDomain, "monomial_products: degree must be >= 1");
  const int g = static_cast<int>(basis.size());
  std::vector<IntSeries> out;
  // Reuse the degree-(d-1) prefix products.
  std::vector<IntSeries> prev;
  std::vector<Monomial> prev_mons;
  for (int deg = 1; deg <= d; ++deg) {
    auto mons = monomials(g, deg);
    std::vector<IntSeries> cur;
    for (const auto& m : mons) {
      IntSeries last = basis[static_cast<std::size_t>(m.back())];
      last.resize(std::min(last.size(), n + 1));
      if (deg == 1) {
        cur.push_back(last);
        continue;
      }
      Monomial head(m.begin(), m.end() - 1);
      std::size_t idx = 0;
      while (prev_mons[idx] != head) ++idx;
      cur.push_back(product_truncated(prev[idx], last, n));
    }
    prev = std::move(cur);
    prev_mons = std::move(mons);
  }
  out = std::move(prev);
  for (auto& s : out) s.resize(n + 1, 0);
  return out;
}

/// Conversion to an exact rational series known modulo q^{n+1}.
inline QSeries to_qseries(const IntSeries& a, long precision) {
  std::vector<Rational> c;
  for (long i = 0; i <= precision && i < static_cast<long>(a.size()); ++i) c.emplace_back(a[static_cast<std::size_t>(i)]);
  return make_qseries(0, c, precision);
}

}  // namespace xzp

#endif  // XZP_INTSERIES_HPP
