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

#ifndef XZP_TESTS_SUPPORT_HPP
#define XZP_TESTS_SUPPORT_HPP

// Data paths and memoized pipeline stages shared by the test binaries.

#include <array>
#include <map>
#include <string>

#include "xzp/xzp.hpp"

namespace testdata {

inline constexpr std::array<long, 13> kLevels = {163, 193, 197, 211, 223, 229, 233, 241, 257, 269, 271, 281, 359};
inline constexpr std::array<long, 5> kMapLevels = {163, 197, 229, 269, 359};

inline std::string data(const std::string& rel) { return std::string(XZP_DATA_DIR) + "/" + rel; }
inline std::string tests(const std::string& rel) { return std::string(XZP_TESTS_DIR) + "/" + rel; }
inline std::string fixture_path(long p) { return data("fixtures/X0plus_" + std::to_string(p) + ".json"); }
inline std::string curve_path(long p) { return data("curves/E_" + std::to_string(p) + ".json"); }
inline std::string published_path(long p) { return data("published/X0plus_" + std::to_string(p) + ".json"); }

inline const xzp::BasisFixture& fixture(long p) {
  static std::map<long, xzp::BasisFixture> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::load_fixture(fixture_path(p))).first;
  return it->second;
}

inline const xzp::ModelBuild& build(long p) {
  static std::map<long, xzp::ModelBuild> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::canonical_model(fixture(p))).first;
  return it->second;
}

inline const xzp::ExpectedPointsTable& points(long p) {
  static std::map<long, xzp::ExpectedPointsTable> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::expected_points(build(p).model, build(p).basis)).first;
  return it->second;
}

inline const xzp::PublishedModel& published(long p) {
  static std::map<long, xzp::PublishedModel> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::load_published(published_path(p))).first;
  return it->second;
}

inline const xzp::CurveData& curve(long p) {
  static std::map<long, xzp::CurveData> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::load_curve(curve_path(p))).first;
  return it->second;
}

inline const xzp::ParamSeries& series(long p) {
  static std::map<long, xzp::ParamSeries> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::parametrization_series(curve(p).E, curve(p).an, 256)).first;
  return it->second;
}

inline const xzp::MapRepresentation& map(long p) {
  static std::map<long, xzp::MapRepresentation> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::derive_parametrization(build(p).basis, curve(p), series(p))).first;
  return it->second;
}

inline const xzp::Interval& hhat_generator(long p) {
  static std::map<long, xzp::Interval> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, xzp::canonical_height(curve(p).E, curve(p).generator).value).first;
  return it->second;
}

inline xzp::IntVector iv(std::initializer_list<long> xs) {
  xzp::IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace testdata

#endif  // XZP_TESTS_SUPPORT_HPP
