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

#ifndef XZP_POLYNOMIAL_TEXT_HPP
#define XZP_POLYNOMIAL_TEXT_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/linalg.hpp"
#include "xzp/monomials.hpp"

namespace xzp {

/// Sparse integer polynomial in x_1, x_2, ... keyed by sorted 0-based
/// variable lists.
struct Polynomial {
  std::map<Monomial, Integer> terms;

  /// Total degree when every term has the same degree.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms) {
      if (sgn(c) == 0) continue;
      if (d && *d != static_cast<int>(m.size())) return std::nullopt;
      d = static_cast<int>(m.size());
    }
    return d;
  }

  int max_variable() const {
    int v = -1;
    for (const auto& [m, c] : terms)
      for (int i : m) v = std::max(v, i);
    return v;
  }
};

/// Reads sums of integer multiples of monomials such as "-2x_1^2 + x_1x_5",
/// "3*x1*x2" or "x_1^2x3". Whitespace is ignored and runs of signs combine,
/// so a line-broken "... + + 10x_2x_5" reads as a single plus.
inline Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  require(!s.empty(), ErrorCode::kInput, "empty polynomial");
  Polynomial out;
  std::size_t i = 0;
  auto error = [&](const std::string& why) {
    fail(ErrorCode::kInput, "cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_number = [&]() {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    Integer z(s.substr(i, j - i));
    i = j;
    return z;
  };
  while (i < s.size()) {
    int sign = 1;
    bool saw_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      saw_sign = true;
      ++i;
    }
    if (!saw_sign && !out.terms.empty()) error("missing operator");
    if (i >= s.size()) error("dangling sign");
    Integer coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = read_number();
      has_coeff = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    Monomial m;
    while (i < s.size() && s[i] == 'x') {
      ++i;
      if (i < s.size() && s[i] == '_') ++i;
      if (i < s.size() && s[i] == '{') ++i;
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) error("variable without index");
      const long v = read_number().get_si();
      if (i < s.size() && s[i] == '}') ++i;
      if (v < 1) error("variable indices start at 1");
      long e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) error("bad exponent");
        e = read_number().get_si();
      }
      for (long k = 0; k < e; ++k) m.push_back(static_cast<int>(v - 1));
      if (i < s.size() && s[i] == '*') ++i;
    }
    if (m.empty() && !has_coeff) error("expected a term at offset " + std::to_string(i));
    std::sort(m.begin(), m.end());
    out.terms[m] += sign * coeff;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (sgn(it->second) == 0) it = out.terms.erase(it);
    else ++it;
  }
  return out;
}

/// Dense coefficient vector over monomials(g, d).
inline IntVector form_coefficients(const Polynomial& p, int g, int d) {
  const auto mons = monomials(g, d);
  IntVector v(mons.size(), 0);
  for (const auto& [m, c] : p.terms) {
    require(static_cast<int>(m.size()) == d, ErrorCode::kInput,
            "polynomial is not homogeneous of degree " + std::to_string(d) + " (term " + monomial_label(m) + ")");
    for (int x : m) require(x < g, ErrorCode::kInput, "variable x" + std::to_string(x + 1) + " exceeds the genus");
    v[monomial_index(m, g)] += c;
  }
  return v;
}

/// Parses a homogeneous form in g variables; the degree is read off.
inline std::pair<int, IntVector> parse_form(std::string_view text, int g) {
  const auto p = parse_polynomial(text);
  const auto d = p.homogeneous_degree();
  require(d.has_value(), ErrorCode::kInput, "'" + std::string(text) + "' is not a homogeneous form");
  return {*d, form_coefficients(p, g, *d)};
}

/// "x1^2 - x1*x2 + 3*x4*x5"; the zero form prints as "0".
inline std::string format_form(const IntVector& coeffs, int g, int d) {
  const auto mons = monomials(g, d);
  std::string s;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const auto& c = coeffs[j];
    if (sgn(c) == 0) continue;
    const Integer a = abs_value(c);
    if (s.empty()) s += sgn(c) < 0 ? "-" : "";
    else s += sgn(c) < 0 ? " - " : " + ";
    const auto label = monomial_label(mons[j]);
    if (a != 1 || label == "1") s += a.get_str() + (label == "1" ? "" : "*");
    if (label != "1") s += label;
  }
  return s.empty() ? "0" : s;
}

}  // namespace xzp

#endif  // XZP_POLYNOMIAL_TEXT_HPP
