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

#ifndef XZP_PUBLISHED_CHECK_HPP
#define XZP_PUBLISHED_CHECK_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xzp/cm_points.hpp"
#include "xzp/model.hpp"
#include "xzp/model_match.hpp"
#include "xzp/modular_param.hpp"
#include "xzp/published.hpp"

namespace xzp {

/// Value of a parsed polynomial at an integer point; nullopt when it uses a
/// variable the point does not have.
inline std::optional<Integer> polynomial_at(const Polynomial& f, const IntVector& x) {
  Integer s = 0;
  for (const auto& [m, c] : f.terms) {
    Integer t = c;
    for (int i : m) {
      if (i >= static_cast<int>(x.size())) return std::nullopt;
      t *= x[static_cast<std::size_t>(i)];
    }
    s += t;
  }
  return s;
}

/// Rows of the printed point table checked against the printed equations
/// by literal integer evaluation.
struct PrintedPointsCheck {
  std::size_t rows = 0;
  std::vector<std::size_t> failing;  // 0-based row indices
  std::vector<std::string> reasons;
  bool ok() const { return rows > 0 && failing.empty(); }
};

inline PrintedPointsCheck check_printed_points(const PublishedModel& pub, bool apply_notes = false) {
  std::vector<std::string> eqs = pub.equations;
  if (apply_notes)
    for (const auto& n : pub.notes)
      if (n.kind == "equation" && n.index) {
        auto& e = eqs.at(static_cast<std::size_t>(*n.index - 1));
        const auto at = e.find(n.printed);
        if (at != std::string::npos) e.replace(at, n.printed.size(), n.proposed);
      }
  std::vector<Polynomial> polys;
  for (const auto& e : eqs) polys.push_back(parse_polynomial(e));
  PrintedPointsCheck out;
  out.rows = pub.points.size();
  for (std::size_t i = 0; i < pub.points.size(); ++i) {
    const auto& pt = pub.points[i].point;
    std::string why;
    if (static_cast<int>(pt.size()) != pub.genus)
      why = std::to_string(pt.size()) + " coordinates in genus " + std::to_string(pub.genus);
    for (std::size_t e = 0; e < polys.size() && why.empty(); ++e) {
      const auto v = polynomial_at(polys[e], pt);
      if (!v) why = "equation " + std::to_string(e + 1) + " uses a missing coordinate";
      else if (sgn(*v) != 0) why = "equation " + std::to_string(e + 1) + " evaluates to " + v->get_str();
    }
    if (!why.empty()) {
      out.failing.push_back(i);
      out.reasons.push_back(why);
    }
  }
  return out;
}

/// Discriminant label of a printed row, optionally after label notes.
inline std::optional<long> printed_label(const PublishedModel& pub, std::size_t row, bool apply_notes) {
  const auto& d = pub.points.at(row).discriminant;
  if (!d) return std::nullopt;
  long v = *d;
  if (apply_notes)
    for (const auto& n : pub.notes)
      if (n.kind == "label" && n.printed == std::to_string(v)) v = std::stol(n.proposed);
  return v;
}

inline std::set<long> printed_discriminants(const PublishedModel& pub, bool apply_notes) {
  std::set<long> s;
  for (std::size_t i = 0; i < pub.points.size(); ++i)
    if (auto d = printed_label(pub, i, apply_notes)) s.insert(*d);
  return s;
}

/// Coordinate change between the computed model and the printed one.
struct PublishedMatch {
  std::optional<std::vector<IntVector>> T;  // printed point ~ T * our point
  bool span_equal = false;                  // pulled-back printed quadrics span the same space as ours
  bool quadrics_parsed = false;
  bool labeled = false;                     // points matched by their discriminant labels
  std::string detail;
};

/// Matches against the printed equations. With apply_notes the noted
/// misprints are corrected first and a mislisted point table is replaced by
/// the small integer points of the corrected model.
inline PublishedMatch match_published(const Model& model, const ExpectedPointsTable& table, const PublishedModel& pub,
                                      bool apply_notes) {
  PublishedMatch out;
  const int g = model.genus;
  if (pub.genus != g) {
    out.detail = "genus differs";
    return out;
  }
  std::vector<IntVector> theirs;
  try {
    theirs = apply_notes ? pub.corrected_quadrics() : pub.quadrics();
  } catch (const Error& e) {
    out.detail = std::string("printed equations are not quadrics: ") + e.what();
    return out;
  }
  out.quadrics_parsed = true;
  if (pub.points_are_listed_as_printed()) {
    std::vector<IntVector> u, v;
    for (std::size_t i = 0; i < pub.points.size(); ++i) {
      const auto d = printed_label(pub, i, apply_notes);
      if (!d) {
        u.push_back(table.cusp);
        v.push_back(pub.points[i].point);
        continue;
      }
      for (const auto& r : table.cm)
        if (r.discriminant == *d) {
          u.push_back(r.point);
          v.push_back(pub.points[i].point);
        }
    }
    out.labeled = true;
    out.T = find_coordinate_change(model.quadrics, theirs, u, v, g);
  } else if (apply_notes) {
    std::vector<IntVector> ours{table.cusp};
    for (const auto& r : table.cm) ours.push_back(r.point);
    auto pts = small_points(theirs, g, 6);
    out.T = find_coordinate_change_unlabeled(model.quadrics, theirs, ours, pts, g);
  } else {
    out.detail = "printed point table does not belong to this curve";
  }
  if (out.T) out.span_equal = same_rational_span(substitute_linear(theirs, *out.T), model.quadrics);
  else if (out.detail.empty()) out.detail = "no coordinate change found";
  return out;
}

/// Series identities of the printed parametrization in our coordinates.
struct PrintedMapCheck {
  bool x_ok = false, y_ok = false;
  int dx = 0, dy = 0;
  long checked_through = 0;  // q-exponent through which both identities were checked
};

inline long ratio_check_limit(const std::vector<IntSeries>& basis, const QSeries& phi, int d) {
  return std::min(phi.precision() + d, static_cast<long>(basis[0].size()) - 1 + *phi.valuation());
}

inline PrintedMapCheck check_printed_map(const std::vector<IntSeries>& basis, const PublishedModel& pub,
                                         const std::vector<IntVector>& T, const ParamSeries& phi) {
  require(pub.map.has_value(), ErrorCode::kDomain, "check_printed_map: no printed parametrization");
  const int g = pub.genus;
  auto conv = [&](const std::string& s) {
    auto [d, c] = parse_form(s, g);
    return std::make_pair(d, substitute_form(c, d, T));
  };
  const auto [dpx, px] = conv(pub.map->x.numerator);
  const auto [dqx, qx] = conv(pub.map->x.denominator);
  const auto [dpy, py] = conv(pub.map->y.numerator);
  const auto [dqy, qy] = conv(pub.map->y.denominator);
  PrintedMapCheck out;
  out.dx = dpx;
  out.dy = dpy;
  const long lx = ratio_check_limit(basis, phi.x, dpx), ly = ratio_check_limit(basis, phi.y, dpy);
  out.checked_through = std::min(lx, ly);
  out.x_ok = dpx == dqx && verify_ratio(basis, phi.x, dpx, {px, qx, dpx}, lx);
  out.y_ok = dpy == dqy && verify_ratio(basis, phi.y, dpy, {py, qy, dpy}, ly);
  return out;
}

}  // namespace xzp

#endif  // XZP_PUBLISHED_CHECK_HPP
