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

#ifndef XZP_PIPELINE_HPP
#define XZP_PIPELINE_HPP

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xzp/cm_points.hpp"
#include "xzp/common.hpp"
#include "xzp/heights.hpp"
#include "xzp/model.hpp"
#include "xzp/modular_param.hpp"
#include "xzp/polynomial_text.hpp"
#include "xzp/serialize.hpp"
#include "xzp/sieve.hpp"

namespace xzp {

// ---------------------------------------------------------------------------
// Hashing and canonical text.

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorCode::kInconsistent,
          "sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kInput, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Serialized form used for every artifact: two-space indent, sorted keys,
/// trailing newline.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Stage payloads that are not serialized elsewhere.

/// Model-basis q-expansions from the fixture and a model's basis transform
/// (fixture rows = T * model rows).
inline std::vector<IntSeries> model_basis(const BasisFixture& fx, const Model& model) {
  const auto rows = rational_basis_rows(fx, model.precision);
  const std::size_t g = rows.size();
  require(model.basis_transform.size() == g, ErrorCode::kInput, "model_basis: transform has the wrong size");
  // Invert T by Gauss-Jordan over Q on [T | I].
  std::vector<std::vector<Rational>> a(g, std::vector<Rational>(2 * g));
  for (std::size_t i = 0; i < g; ++i) {
    require(model.basis_transform[i].size() == g, ErrorCode::kInput, "model_basis: transform is not square");
    for (std::size_t j = 0; j < g; ++j) a[i][j] = model.basis_transform[i][j];
    a[i][g + i] = 1;
  }
  for (std::size_t c = 0; c < g; ++c) {
    std::size_t piv = c;
    while (piv < g && sgn(a[piv][c]) == 0) ++piv;
    require(piv < g, ErrorCode::kInput, "model_basis: singular transform");
    std::swap(a[piv], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < g; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * g; ++k) a[r][k] -= f * a[c][k];
    }
  }
  // T^-1 is rational when the saturation index exceeds 1; the rows are not.
  std::vector<IntVector> out(g, IntVector(rows[0].size(), 0));
  for (std::size_t i = 0; i < g; ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < g; ++j) den = lcm(den, a[i][g + j].get_den());
    IntVector acc(rows[0].size(), 0);
    for (std::size_t j = 0; j < g; ++j) {
      const Rational& c = a[i][g + j];
      if (sgn(c) == 0) continue;
      const Integer s = c.get_num() * (den / c.get_den());
      for (std::size_t n = 0; n < rows[j].size(); ++n) acc[n] += s * rows[j][n];
    }
    for (std::size_t n = 0; n < acc.size(); ++n) {
      require(mpz_divisible_p(acc[n].get_mpz_t(), den.get_mpz_t()) != 0, ErrorCode::kInput,
              "model_basis: transform does not map the fixture onto an integral basis");
      out[i][n] = acc[n] / den;
    }
  }
  return rows_to_series(out);
}

inline Json points_to_json(const ExpectedPointsTable& t) {
  Json cm = Json::array();
  for (const auto& r : t.cm)
    cm.push_back({{"discriminant", r.discriminant},
                  {"point", int_vector_to_json(r.point)},
                  {"derivative_order", r.derivative_order},
                  {"bits", r.bits},
                  {"on_model", r.verified},
                  {"stable_at_double_precision", r.stability_checked}});
  return {{"level", t.level}, {"cusp", int_vector_to_json(t.cusp)}, {"cm", cm}};
}

inline ExpectedPointsTable points_from_json(const Json& j) {
  ExpectedPointsTable t;
  t.level = field<long>(j, "level", "points");
  t.cusp = int_vector_from_json(j.at("cusp"));
  for (const auto& r : j.at("cm")) {
    CMRecord c;
    c.discriminant = r.at("discriminant").get<long>();
    c.point = int_vector_from_json(r.at("point"));
    c.derivative_order = r.value("derivative_order", 0);
    c.bits = r.value("bits", 0);
    c.verified = r.value("on_model", false);
    c.stability_checked = r.value("stable_at_double_precision", false);
    t.cm.push_back(std::move(c));
  }
  return t;
}

inline std::string format_weierstrass(const WeierstrassCurve& E) {
  auto term = [](const Integer& c, const std::string& mono) -> std::string {
    if (sgn(c) == 0) return "";
    std::string s = sgn(c) < 0 ? " - " : " + ";
    const Integer a = abs_value(c);
    if (mono.empty()) return s + a.get_str();
    return s + (a == 1 ? "" : a.get_str()) + mono;
  };
  return "y^2" + term(E.a1, "xy") + term(E.a3, "y") + " = x^3" + term(E.a2, "x^2") + term(E.a4, "x") + term(E.a6, "");
}

inline std::string format_point(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + v[i].get_str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// Configuration, cache and bundle.

enum class Stage { kModel = 0, kPoints = 1, kMap = 2, kSieve = 3 };

struct RunConfig {
  std::filesystem::path fixture;
  std::filesystem::path curve;  // empty: no elliptic factor configured
  std::filesystem::path out = "out";
  long delta = 10000;
  std::uint32_t lmax = 200;
  int precision_bits = 256;    // CM point reconstruction
  long series_precision = 256; // q-expansion length of the parametrization
  std::filesystem::path cache_dir;  // empty: no cache
  Stage last = Stage::kSieve;
  bool write_report = true;

  void validate() const {
    require(!fixture.empty(), ErrorCode::kInput, "config: a fixture is required");
    require(delta >= 0, ErrorCode::kInput, "config: delta must be nonnegative");
    require(lmax <= 4096, ErrorCode::kInput, "config: lmax above the enumeration cap 4096");
    require(precision_bits >= 64 && precision_bits <= 65536, ErrorCode::kInput,
            "config: precision bits must lie in [64, 65536]");
    require(series_precision >= 64, ErrorCode::kInput, "config: series precision must be at least 64");
  }
};

/// Stage results keyed by a hash of everything they depend on.
class StageCache {
 public:
  explicit StageCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }
  std::optional<std::string> get(const std::string& stage, const std::string& key) const {
    if (!enabled()) return std::nullopt;
    const auto p = path(stage, key);
    if (!std::filesystem::exists(p)) return std::nullopt;
    return read_text_file(p);
  }
  void put(const std::string& stage, const std::string& key, const std::string& text) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    write_text_atomic(path(stage, key), text);
  }

 private:
  std::filesystem::path path(const std::string& stage, const std::string& key) const {
    return dir_ / (stage + "-" + key + ".json");
  }
  std::filesystem::path dir_;
};

struct StageRecord {
  std::string name;
  std::string key;     // hash of the stage inputs
  std::string output;  // hash of the stage output bytes
  bool cache_hit = false;
  bool ran = false;
  std::string notice;
};

struct Bundle {
  RunConfig config;
  std::string fixture_hash, curve_hash;
  Model model;
  std::vector<IntSeries> basis;
  Integer saturation_index;
  ExpectedPointsTable points;
  std::optional<CurveData> curve;
  std::optional<MapRepresentation> map;
  std::optional<SieveCertificate> certificate;
  std::vector<ExpectedImage> images;
  std::vector<StageRecord> stages;
  std::string model_json, points_json, map_json, certificate_json, report;

  const StageRecord* stage(const std::string& name) const {
    for (const auto& s : stages)
      if (s.name == name) return &s;
    return nullptr;
  }
};

/// Prefixes stage failures with the stage name, keeping the error code.
template <class Fn>
auto run_stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), "[" + name + "] " + e.what());
  }
}

inline constexpr const char* kArtifactVersion = "xzp-1";

// ---------------------------------------------------------------------------
// Report.

inline std::string emit_report(const Bundle& b) {
  std::ostringstream os;
  const int g = b.model.genus;
  os << "X0+(" << b.model.level << "), genus " << g << "\n\n";
  os << "Canonical model in P^" << g - 1 << " (" << b.model.quadrics.size() << " quadrics):\n";
  for (const auto& q : b.model.quadrics) os << "  " << format_form(q, g, 2) << " = 0\n";
  os << "\nRational points (" << 1 + b.points.cm.size() << "):\n";
  std::map<std::string, long> kval;
  for (const auto& e : b.images) kval[format_point(e.point)] = e.k;
  auto row = [&](const IntVector& pt, const std::string& label) {
    os << "  " << std::left << std::setw(36) << format_point(pt) << std::setw(8) << label;
    auto it = kval.find(format_point(pt));
    if (it != kval.end()) os << "  k = " << it->second;
    os << "\n";
  };
  row(b.points.cusp, "cusp");
  for (const auto& r : b.points.cm) row(r.point, std::to_string(r.discriminant));
  os << "\n";
  if (!b.curve) {
    os << "Parametrization: not run (no elliptic factor configured)\n";
    os << "Sieve: not run\n";
    return os.str();
  }
  const auto& c = *b.curve;
  os << "Elliptic factor " << c.label << ": " << format_weierstrass(c.E) << "\n";
  os << "  generator P0 = (" << to_string(c.generator.x) << ", " << to_string(c.generator.y) << ")\n";
  os << "  Modular degree deg(phi+) = " << c.plus_degree() << "\n";
  if (b.map) {
    const auto& m = *b.map;
    os << "  x = (" << format_form(m.x[0].p, g, m.x[0].degree) << ") / (" << format_form(m.x[0].q, g, m.x[0].degree)
       << ")\n";
    os << "  y = (" << format_form(m.y[0].p, g, m.y[0].degree) << ") / (" << format_form(m.y[0].q, g, m.y[0].degree)
       << ")\n";
    os << "  alternates: " << m.x.size() - 1 << " for x, " << m.y.size() - 1 << " for y\n\n";
  } else {
    os << "  parametrization: not run\n\n";
  }
  if (!b.certificate) {
    os << "Sieve: not run\n";
    return os.str();
  }
  const auto& s = *b.certificate;
  std::size_t wild = 0;
  for (const auto& p : s.primes) wild += p.wildcard;
  os << "Sieve: delta = " << s.delta << ", " << s.primes.size() << " primes below " << b.config.lmax << " (" << wild
     << " with wildcards)\n";
  os << "  height budget from " << s.budgets.size() << " x representation(s)";
  if (s.covered()) os << ", every rational point covered (checked mod " << s.coverage.ell << ")";
  else os << ", coverage NOT established";
  os << "\n";
  if (!s.budgets.empty()) {
    os << "  mu(E) <= " << s.budgets[0].mu.hi.str(10) << ", hhat(P0) in [" << s.budgets[0].hhat_p0.lo.str(12) << ", "
       << s.budgets[0].hhat_p0.hi.str(12) << "]\n";
  }
  os << "  k_max = " << s.k_max << "\n";
  os << "  surviving k: ";
  if (s.surviving_k.empty()) os << "none";
  for (std::size_t i = 0; i < s.surviving_k.size(); ++i) os << (i ? ", " : "") << s.surviving_k[i];
  os << "\n\nVerdict: " << (s.certified() ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
  if (s.certified())
    os << "The only rational points of naive height <= 10^" << s.delta << " are the cusp and the CM points above.\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Orchestration.

inline Bundle run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  Bundle b;
  b.config = cfg;
  const StageCache cache(cfg.cache_dir);
  const std::string fixture_text = run_stage("input", [&] { return read_text_file(cfg.fixture); });
  b.fixture_hash = sha256_hex(fixture_text);
  const BasisFixture fx = run_stage("input", [&] { return fixture_from_json(Json::parse(fixture_text)); });

  // Runs one stage through the cache: produce() returns the artifact JSON.
  auto stage = [&](const std::string& name, const std::string& key_material, const std::function<Json()>& produce) {
    StageRecord rec;
    rec.name = name;
    rec.key = sha256_hex(std::string(kArtifactVersion) + "|" + name + "|" + key_material);
    rec.ran = true;
    std::string text;
    if (auto hit = cache.get(name, rec.key)) {
      text = *hit;
      rec.cache_hit = true;
    } else {
      text = canonical_dump(run_stage(name, produce));
      cache.put(name, rec.key, text);
    }
    rec.output = sha256_hex(text);
    b.stages.push_back(rec);
    return text;
  };

  // Model.
  b.model_json = stage("model", b.fixture_hash, [&] {
    auto mb = canonical_model(fx);
    b.basis = std::move(mb.basis);
    b.saturation_index = mb.saturation_index;
    Json j{{"inputs", {{"fixture", b.fixture_hash}}}, {"model", model_to_json(mb.model)}};
    j["saturation_index"] = integer_to_json(mb.saturation_index);
    return j;
  });
  {
    const auto j = Json::parse(b.model_json);
    b.model = model_from_json(j.at("model"));
    b.saturation_index = integer_from_json(j.at("saturation_index"));
    if (b.basis.empty()) b.basis = run_stage("model", [&] { return model_basis(fx, b.model); });
  }
  const std::string model_hash = b.stages.back().output;

  auto finish = [&]() -> Bundle& {
    std::filesystem::create_directories(cfg.out);
    write_text_atomic(cfg.out / "model.json", b.model_json);
    if (!b.points_json.empty()) write_text_atomic(cfg.out / "points.json", b.points_json);
    if (!b.map_json.empty()) write_text_atomic(cfg.out / "map.json", b.map_json);
    if (!b.certificate_json.empty()) write_text_atomic(cfg.out / "certificate.json", b.certificate_json);
    if (cfg.write_report) {
      b.report = emit_report(b);
      write_text_atomic(cfg.out / "report.txt", b.report);
    }
    return b;
  };
  if (cfg.last == Stage::kModel) return finish();

  // Points.
  b.points_json = stage("points", model_hash + "|bits=" + std::to_string(cfg.precision_bits), [&] {
    CMOptions o;
    o.bits = cfg.precision_bits;
    auto t = expected_points(b.model, b.basis, o);
    Json j{{"inputs", {{"model", model_hash}}}, {"points", points_to_json(t)}};
    return j;
  });
  b.points = points_from_json(Json::parse(b.points_json).at("points"));
  const std::string points_hash = b.stages.back().output;
  if (cfg.last == Stage::kPoints) return finish();

  if (cfg.curve.empty()) {
    b.stages.push_back({"map", "", "", false, false, "no elliptic factor configured"});
    b.stages.push_back({"sieve", "", "", false, false, "no elliptic factor configured"});
    return finish();
  }
  const std::string curve_text = run_stage("input", [&] { return read_text_file(cfg.curve); });
  b.curve_hash = sha256_hex(curve_text);
  b.curve = run_stage("input", [&] { return curve_from_json(Json::parse(curve_text)); });

  // Parametrization.
  b.map_json = stage("map", model_hash + "|" + b.curve_hash + "|m=" + std::to_string(cfg.series_precision), [&] {
    const auto ps = parametrization_series(b.curve->E, b.curve->an, cfg.series_precision);
    const auto rep = derive_parametrization(b.basis, *b.curve, ps);
    Json j{{"inputs", {{"model", model_hash}, {"curve", b.curve_hash}}},
           {"curve", {{"label", b.curve->label}, {"plus_degree", b.curve->plus_degree()}}},
           {"series_precision", cfg.series_precision},
           {"primes_used", ps.primes_used},
           {"map", map_to_json(rep)}};
    return j;
  });
  b.map = map_from_json(Json::parse(b.map_json).at("map"));
  const std::string map_hash = b.stages.back().output;

  // Images of the expected points are cheap and feed the report.
  const auto hhat = canonical_height(b.curve->E, b.curve->generator);
  b.images = run_stage("map", [&] { return expected_k_values(b.points, *b.map, *b.curve, hhat.value); });
  if (cfg.last == Stage::kMap) return finish();

  // Sieve.
  b.certificate_json = stage("sieve",
                             model_hash + "|" + points_hash + "|" + map_hash + "|" + b.curve_hash +
                                 "|delta=" + std::to_string(cfg.delta) + "|lmax=" + std::to_string(cfg.lmax),
                             [&] {
                               const auto ells = sieve_primes(b.model.level, b.curve->E, cfg.lmax);
                               auto cert = residue_sieve(b.model, *b.map, *b.curve, b.images, hhat.value, cfg.delta, ells);
                               Json j = certificate_to_json(cert);
                               j["inputs"] = {{"model", model_hash},
                                              {"points", points_hash},
                                              {"map", map_hash},
                                              {"curve", b.curve_hash},
                                              {"fixture", b.fixture_hash}};
                               return j;
                             });
  b.certificate = certificate_from_json(Json::parse(b.certificate_json));
  return finish();
}

}  // namespace xzp

#endif  // XZP_PIPELINE_HPP
