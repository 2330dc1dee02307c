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

#ifndef XZP_PUBLISHED_HPP
#define XZP_PUBLISHED_HPP

#include <optional>
#include <string>
#include <vector>

#include "xzp/common.hpp"
#include "xzp/polynomial_text.hpp"
#include "xzp/serialize.hpp"

namespace xzp {

/// A known misprint: where it is, what was printed and the likely intent.
struct PublishedNote {
  std::string kind;
  std::optional<int> index;  // 1-based equation index
  std::string printed, proposed, reason;
};

struct PublishedPoint {
  IntVector point;
  std::optional<int> discriminant;  // none for the cusp
};

struct PublishedRatio {
  std::string numerator, denominator;
};

struct PublishedMap {
  std::string weierstrass;
  std::vector<std::string> generator;
  int modular_degree = 0;
  PublishedRatio x, y;
};

/// Literature model of X0+(p), kept as printed.
struct PublishedModel {
  long level = 0;
  int genus = 0;
  std::vector<std::string> equations;
  std::vector<PublishedPoint> points;
  std::optional<PublishedMap> map;
  std::vector<PublishedNote> notes;

  /// Equations as quadric coefficient vectors; throws kInput when one is
  /// not a quadric in genus variables.
  std::vector<IntVector> quadrics() const {
    std::vector<IntVector> out;
    for (const auto& e : equations) out.push_back(form_coefficients(parse_polynomial(e), genus, 2));
    return out;
  }

  /// Equations with every noted misprint replaced by its proposed reading.
  std::vector<IntVector> corrected_quadrics() const {
    auto eqs = equations;
    for (const auto& n : notes) {
      if (n.kind != "equation" || !n.index) continue;
      auto& e = eqs.at(static_cast<std::size_t>(*n.index - 1));
      const auto at = e.find(n.printed);
      require(at != std::string::npos, ErrorCode::kInput, "note text '" + n.printed + "' not found in equation");
      e.replace(at, n.printed.size(), n.proposed);
    }
    std::vector<IntVector> out;
    for (const auto& e : eqs) out.push_back(form_coefficients(parse_polynomial(e), genus, 2));
    return out;
  }

  bool points_are_listed_as_printed() const {
    for (const auto& n : notes)
      if (n.kind == "points") return false;
    return true;
  }
};

inline PublishedModel published_from_json(const Json& j) {
  PublishedModel m;
  m.level = j.at("level").get<long>();
  m.genus = j.at("genus").get<int>();
  m.equations = j.at("equations").get<std::vector<std::string>>();
  for (const auto& p : j.at("points")) {
    PublishedPoint q;
    for (const auto& c : p.at("point")) q.point.push_back(integer_from_json(c));
    if (!p.at("discriminant").is_null()) q.discriminant = p.at("discriminant").get<int>();
    m.points.push_back(std::move(q));
  }
  if (j.contains("parametrization") && !j.at("parametrization").is_null()) {
    const auto& a = j.at("parametrization");
    PublishedMap pm;
    pm.weierstrass = a.at("weierstrass").get<std::string>();
    pm.generator = a.at("generator").get<std::vector<std::string>>();
    pm.modular_degree = a.at("modular_degree").get<int>();
    pm.x = {a.at("x").at("numerator").get<std::string>(), a.at("x").at("denominator").get<std::string>()};
    pm.y = {a.at("y").at("numerator").get<std::string>(), a.at("y").at("denominator").get<std::string>()};
    m.map = std::move(pm);
  }
  if (j.contains("notes"))
    for (const auto& n : j.at("notes")) {
      PublishedNote note;
      note.kind = n.at("kind").get<std::string>();
      if (n.contains("index")) note.index = n.at("index").get<int>();
      note.printed = n.value("printed", "");
      note.proposed = n.value("proposed", "");
      note.reason = n.value("reason", "");
      m.notes.push_back(std::move(note));
    }
  return m;
}

inline PublishedModel load_published(const std::string& path) { return published_from_json(read_json_file(path)); }

}  // namespace xzp

#endif  // XZP_PUBLISHED_HPP
