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

#ifndef XZP_SERIALIZE_HPP
#define XZP_SERIALIZE_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "xzp/common.hpp"
#include "xzp/model.hpp"

namespace xzp {

using Json = nlohmann::json;

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kInput, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInput, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

/// Writes through a temporary file and a rename so readers never observe a
/// partially written file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kInput, "cannot write " + tmp.string());
    out << text;
    require(static_cast<bool>(out), ErrorCode::kInput, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_json_atomic(const std::filesystem::path& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

/// Integers travel as JSON numbers when they fit in 64 bits, else as strings.
inline Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    require(z.set_str(j.get<std::string>(), 10) == 0, ErrorCode::kInput, "bad integer literal " + j.dump());
    return z;
  }
  fail(ErrorCode::kInput, "expected an integer, got " + j.dump());
}

/// Rationals travel as "num/den" strings (or plain integers).
inline Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return Json(to_string(q));
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::kInput, "expected a rational, got " + j.dump());
}

inline Json int_vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

inline IntVector int_vector_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::kInput, "expected an integer array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json int_matrix_to_json(const std::vector<IntVector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(int_vector_to_json(r));
  return a;
}

inline std::vector<IntVector> int_matrix_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::kInput, "expected an array of integer arrays");
  std::vector<IntVector> out;
  for (const auto& r : j) out.push_back(int_vector_from_json(r));
  return out;
}

template <class T>
T field(const Json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), ErrorCode::kInput, where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInput, where + ": field '" + key + "' has the wrong type");
  }
}

inline BasisFixture fixture_from_json(const Json& j) {
  const std::string where = "fixture";
  BasisFixture fx;
  fx.level = field<long>(j, "level", where);
  fx.genus = field<int>(j, "genus", where);
  fx.precision = field<long>(j, "precision", where);
  if (j.contains("provenance")) fx.provenance = j.at("provenance").get<std::string>();
  require(j.contains("orbits") && j.at("orbits").is_array(), ErrorCode::kInput, "fixture: missing orbits");
  for (const auto& o : j.at("orbits")) {
    FixtureOrbit orb;
    orb.degree = field<int>(o, "degree", "fixture orbit");
    if (o.contains("field_polynomial")) orb.field_polynomial = o.at("field_polynomial").get<std::string>();
    if (o.contains("integral_basis")) orb.integral_basis = o.at("integral_basis").get<std::vector<std::string>>();
    require(o.contains("forms") && o.at("forms").is_array(), ErrorCode::kInput, "fixture orbit: missing forms");
    for (const auto& f : o.at("forms")) {
      require(f.contains("coefficients"), ErrorCode::kInput, "fixture form: missing coefficients");
      const auto& c = f.at("coefficients");
      require(c.is_array(), ErrorCode::kInput, "fixture form: coefficients must be an array");
      std::vector<Integer> v;
      v.reserve(c.size());
      for (const auto& x : c) v.push_back(integer_from_json(x));
      orb.forms.push_back(std::move(v));
    }
    if (o.contains("trace_a_ell"))
      for (const auto& [k, v] : o.at("trace_a_ell").items()) orb.trace_a_ell[std::stol(k)] = v.get<long>();
    fx.orbits.push_back(std::move(orb));
  }
  fx.validate();
  return fx;
}

inline BasisFixture load_fixture(const std::filesystem::path& path) {
  try {
    return fixture_from_json(read_json_file(path));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

inline Json model_to_json(const Model& m) {
  Json j;
  j["level"] = m.level;
  j["genus"] = m.genus;
  j["monomial_order"] = "grlex-x1..x" + std::to_string(m.genus);
  j["precision"] = m.precision;
  j["quadrics"] = int_matrix_to_json(m.quadrics);
  j["basis_transform"] = int_matrix_to_json(m.basis_transform);
  return j;
}

inline Model model_from_json(const Json& j) {
  Model m;
  m.level = field<long>(j, "level", "model");
  m.genus = field<int>(j, "genus", "model");
  if (j.contains("precision")) m.precision = j.at("precision").get<long>();
  m.quadrics = int_matrix_from_json(j.at("quadrics"));
  if (j.contains("basis_transform")) m.basis_transform = int_matrix_from_json(j.at("basis_transform"));
  const auto r = monomial_count(m.genus, 2);
  for (const auto& q : m.quadrics)
    require(q.size() == r, ErrorCode::kInput, "model: quadric has the wrong number of coefficients");
  return m;
}

}  // namespace xzp

#endif  // XZP_SERIALIZE_HPP
