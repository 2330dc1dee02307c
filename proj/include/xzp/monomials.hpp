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

#ifndef XZP_MONOMIALS_HPP
#define XZP_MONOMIALS_HPP

#include <string>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/modint.hpp"

namespace xzp {

/// A monomial of degree d written as a non-decreasing list of variable
/// indices (0-based): x_1 x_3^2 is {0, 2, 2}.
using Monomial = std::vector<int>;

/// All degree-d monomials in g variables, graded lexicographic with
/// x_1 > ... > x_g: for d = 2 the order is x1^2, x1x2, ..., x1xg, x2^2, ...
inline std::vector<Monomial> monomials(int g, int d) {
  std::vector<Monomial> out;
  if (d == 0) return {Monomial{}};
  Monomial cur(static_cast<std::size_t>(d), 0);
  while (true) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == g - 1) --i;
    if (i < 0) break;
    const int v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < d; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

inline std::size_t monomial_count(int g, int d) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(g + d - 1), static_cast<unsigned long>(d));
  return c.get_ui();
}

/// Index of a monomial in monomials(g, d).
inline std::size_t monomial_index(const Monomial& m, int g) {
  const auto all = monomials(g, static_cast<int>(m.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == m) return i;
  fail(ErrorCode::kDomain, "monomial_index: not a sorted monomial");
}

/// "x1*x2^2"-style label with 1-based variable names.
inline std::string monomial_label(const Monomial& m) {
  std::string s;
  std::size_t i = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(m[i] + 1);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s.empty() ? "1" : s;
}

template <class T>
T evaluate_monomial(const Monomial& m, const std::vector<T>& x) {
  T acc = x.at(0) * 0 + 1;
  for (int v : m) acc *= x[static_cast<std::size_t>(v)];
  return acc;
}

inline ModInt evaluate_monomial(const Monomial& m, const std::vector<ModInt>& x) {
  ModInt acc(1, x.at(0).modulus());
  for (int v : m) acc *= x[static_cast<std::size_t>(v)];
  return acc;
}

/// Value of sum_j c_j m_j at x.
template <class T, class C>
T evaluate_form(const std::vector<C>& coeffs, const std::vector<Monomial>& mons, const std::vector<T>& x) {
  T acc = x.at(0) * 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) acc += T(coeffs[j]) * evaluate_monomial(mons[j], x);
  return acc;
}

}  // namespace xzp

#endif  // XZP_MONOMIALS_HPP
