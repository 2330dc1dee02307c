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

#ifndef XZP_SIEVE_HPP
#define XZP_SIEVE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xzp/cm_points.hpp"
#include "xzp/common.hpp"
#include "xzp/elliptic.hpp"
#include "xzp/heights.hpp"
#include "xzp/model.hpp"
#include "xzp/modular_param.hpp"
#include "xzp/serialize.hpp"

namespace xzp {

/// An expected point together with its image k P0.
struct ExpectedImage {
  std::optional<long> discriminant;  // none for the cusp
  IntVector point;
  long k = 0;
};

/// Images of the cusp and the CM points as multiples of the generator.
inline std::vector<ExpectedImage> expected_k_values(const ExpectedPointsTable& table, const MapRepresentation& rep,
                                                    const CurveData& curve, const Interval& hhat_p0) {
  std::vector<std::pair<std::optional<long>, IntVector>> pts{{std::nullopt, table.cusp}};
  for (const auto& r : table.cm) pts.emplace_back(r.discriminant, r.point);
  std::vector<ExpectedImage> out;
  for (const auto& [disc, pt] : pts) {
    const auto v = evaluate_map(rep, curve.E, pt);
    const std::string what = disc ? "CM point " + std::to_string(*disc) : std::string("cusp");
    require(!std::holds_alternative<Undefined>(v), ErrorCode::kInconsistent,
            "expected_k_values: map undefined at the " + what);
    const auto& P = std::get<RationalPoint>(v);
    const long bound = multiple_search_bound(curve.E, P, hhat_p0);
    const auto k = multiple_of_generator(curve.E, curve.generator, P, bound);
    require(k.has_value(), ErrorCode::kInconsistent, "expected_k_values: image of the " + what + " is not a multiple of P0");
    out.push_back({disc, pt, *k});
  }
  return out;
}

/// Per-prime sieve data. Residues are the values of k mod N that some
/// F_ell-point of the model can reach.
struct SievePrime {
  std::uint32_t ell = 0;
  long order = 0;  // N_ell, order of P0 mod ell
  std::size_t points = 0;
  std::vector<long> residues;
  bool wildcard = false;
  std::size_t undefined = 0;       // points where neither coordinate is known
  std::size_t partial = 0;         // points where only one coordinate is known
  std::size_t impossible = 0;      // points no rational point can reduce to
  std::size_t outside = 0;         // images outside the subgroup generated by P0
};

/// Which x representations the height bound covers, and the prime
/// proving that every rational point is reached by one of them.
struct HeightCoverage {
  std::size_t representations = 0;
  std::uint32_t ell = 0;
};

struct SieveCertificate {
  long level = 0;
  long delta = 0;
  long k_max = 0;
  HeightCoverage coverage;
  std::vector<HeightBudget> budgets;  // one per covering x representation
  std::vector<ExpectedImage> expected;
  std::vector<SievePrime> primes;
  std::vector<long> surviving_k;
  bool covered() const { return coverage.ell != 0; }
  bool certified() const { return covered() && surviving_k.empty(); }
};

namespace detail {

/// The F_ell image data of one model point.
struct PointImage {
  enum Kind { kPoint, kX, kY, kUnknown, kImpossible } kind = kUnknown;
  ModPoint point;
  ModInt value;
};

inline PointImage image_mod_ell(const MapRepresentation& rep, const WeierstrassCurve& E, const std::vector<ModInt>& x) {
  const int g = static_cast<int>(x.size());
  const auto X = coordinate_at(rep.x, g, x);
  const auto Y = coordinate_at(rep.y, g, x);
  using CV = CoordinateValue<ModInt>;
  // A reduced rational point has x and y either both integral or both poles.
  if (X.kind == CV::kPole || Y.kind == CV::kPole) {
    if (X.kind == CV::kValue || Y.kind == CV::kValue) return {PointImage::kImpossible, {}, {}};
    return {PointImage::kPoint, ModPoint::zero(), {}};
  }
  if (X.kind == CV::kValue && Y.kind == CV::kValue) {
    auto P = ModPoint::affine(X.value, Y.value);
    if (!on_curve(E, P)) return {PointImage::kImpossible, {}, {}};
    return {PointImage::kPoint, P, {}};
  }
  if (X.kind == CV::kValue) return {PointImage::kX, {}, X.value};
  if (Y.kind == CV::kValue) return {PointImage::kY, {}, Y.value};
  return {PointImage::kUnknown, {}, {}};
}

inline std::vector<ModInt> lift_point(const FpPoint& p, std::uint32_t ell) {
  std::vector<ModInt> x;
  x.reserve(p.x.size());
  for (auto c : p.x) x.emplace_back(c, ell);
  return x;
}

inline std::vector<ModInt> reduce_vector(const IntVector& v, std::uint32_t ell) {
  std::vector<ModInt> x;
  for (const auto& c : v) x.push_back(ModInt::from_integer(c, ell));
  return x;
}

/// Index of the first x representation that is not 0/0 at the point, or
/// reps.size() if all are.
inline std::size_t first_x_defined(const std::vector<RatioForm>& reps, const std::vector<ModInt>& x,
                                   std::map<int, std::vector<Monomial>>& mons) {
  const int g = static_cast<int>(x.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto it = mons.find(reps[i].degree);
    if (it == mons.end()) it = mons.emplace(reps[i].degree, monomials(g, reps[i].degree)).first;
    if (!form_at(reps[i].q, it->second, x).is_zero() || !form_at(reps[i].p, it->second, x).is_zero()) return i;
  }
  return reps.size();
}

}  // namespace detail

/// Primes below ell_max at which the sieve may run: not the level and of
/// good reduction for E.
inline std::vector<std::uint32_t> sieve_primes(long level, const WeierstrassCurve& E, std::uint32_t ell_max) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t ell = 2; ell < ell_max; ++ell)
    if (is_prime_u64(ell) && static_cast<long>(ell) != level && E.good_reduction_at(ell)) out.push_back(ell);
  return out;
}

/// Sieve data at one prime, plus the number of x representations needed to
/// reach every F_ell point (reps.size() + 1 if some point is 0/0 for all).
struct PrimePass {
  SievePrime record;
  std::size_t x_cover = 0;
};

inline PrimePass sieve_at_prime(const Model& model, const MapRepresentation& rep, const CurveData& curve,
                                std::uint32_t ell) {
  const auto& E = curve.E;
  require(E.good_reduction_at(ell), ErrorCode::kDomain, "sieve: E has bad reduction at " + std::to_string(ell));
  PrimePass pass;
  auto& rec = pass.record;
  rec.ell = ell;
  const ModPoint P0 = reduce_point(curve.generator, ell);
  // Multiples of P0 until O; index by affine coordinates.
  std::map<std::pair<std::uint32_t, std::uint32_t>, long> dlog;
  std::vector<ModPoint> multiples{ModPoint::zero()};
  for (ModPoint R = P0; !R.infinity; R = ec_add(E, R, P0)) {
    dlog[{R.x.value(), R.y.value()}] = static_cast<long>(multiples.size());
    multiples.push_back(R);
  }
  rec.order = static_cast<long>(multiples.size());
  std::vector<char> allowed(static_cast<std::size_t>(rec.order), 0);
  EnumerationOptions eo;
  eo.smoothness = false;
  const auto pts = enumerate_points_mod_ell(model, ell, eo);
  rec.points = pts.size();
  std::map<int, std::vector<Monomial>> mons;
  for (const auto& fp : pts) {
    const auto x = detail::lift_point(fp, ell);
    pass.x_cover = std::max(pass.x_cover, detail::first_x_defined(rep.x, x, mons) + 1);
    const auto im = detail::image_mod_ell(rep, E, x);
    switch (im.kind) {
      case detail::PointImage::kImpossible: ++rec.impossible; break;
      case detail::PointImage::kPoint: {
        if (im.point.infinity) {
          allowed[0] = 1;
          break;
        }
        auto it = dlog.find({im.point.x.value(), im.point.y.value()});
        if (it == dlog.end()) ++rec.outside;
        else allowed[static_cast<std::size_t>(it->second)] = 1;
        break;
      }
      case detail::PointImage::kX:
      case detail::PointImage::kY: {
        ++rec.partial;
        for (long r = 1; r < rec.order; ++r) {
          const auto& R = multiples[static_cast<std::size_t>(r)];
          if ((im.kind == detail::PointImage::kX ? R.x : R.y) == im.value) allowed[static_cast<std::size_t>(r)] = 1;
        }
        break;
      }
      case detail::PointImage::kUnknown: ++rec.undefined; rec.wildcard = true; break;
    }
  }
  for (long r = 0; r < rec.order; ++r)
    if (allowed[static_cast<std::size_t>(r)]) rec.residues.push_back(r);
  return pass;
}

inline long floor_mod(long a, long n) { return ((a % n) + n) % n; }

/// First prime whose residue data rules out k, if any.
inline std::optional<std::uint32_t> excluding_prime(const std::vector<SievePrime>& primes, long k) {
  for (const auto& pr : primes)
    if (!pr.wildcard && !std::binary_search(pr.residues.begin(), pr.residues.end(), floor_mod(k, pr.order)))
      return pr.ell;
  return std::nullopt;
}

/// Height budgets, prime passes and surviving k. A rational point of height
/// at most 10^delta maps to k P0 with |k| <= k_max; the k not carried by an
/// expected point must be excluded by some prime.
inline SieveCertificate residue_sieve(const Model& model, const MapRepresentation& rep, const CurveData& curve,
                                      const std::vector<ExpectedImage>& expected, const Interval& hhat_p0, long delta,
                                      const std::vector<std::uint32_t>& ells) {
  SieveCertificate cert;
  cert.level = model.level;
  cert.delta = delta;
  cert.expected = expected;
  std::size_t cover = rep.x.size() + 1;
  for (auto ell : ells) {
    auto pass = sieve_at_prime(model, rep, curve, ell);
    if (pass.x_cover < cover) {
      cover = pass.x_cover;
      cert.coverage.ell = ell;
    }
    cert.primes.push_back(std::move(pass.record));
  }
  // Without a covering prime the budget of the smallest-degree
  // representations is reported, and the certificate cannot certify.
  if (cover > rep.x.size()) {
    cover = 0;
    while (cover < rep.x.size() && rep.x[cover].degree == rep.dx) ++cover;
    cert.coverage.ell = 0;
  }
  cert.coverage.representations = cover;
  for (std::size_t i = 0; i < cover; ++i) {
    cert.budgets.push_back(height_bound(curve.E, rep.x[i], delta, hhat_p0));
    cert.k_max = std::max(cert.k_max, cert.budgets.back().k_max);
  }
  std::set<long> exp;
  for (const auto& e : expected) exp.insert(e.k);
  for (const auto& e : expected)
    for (const auto& pr : cert.primes)
      require(pr.wildcard || std::binary_search(pr.residues.begin(), pr.residues.end(), floor_mod(e.k, pr.order)),
              ErrorCode::kInconsistent,
              "sieve: residue of an expected point excluded at ell = " + std::to_string(pr.ell));
  for (long k = -cert.k_max; k <= cert.k_max; ++k)
    if (!exp.count(k) && !excluding_prime(cert.primes, k)) cert.surviving_k.push_back(k);
  return cert;
}

// ---------------------------------------------------------------------------
// Serialization.

/// Endpoints as 25-digit decimals rounded outward.
inline Json interval_to_json(const Interval& v) {
  return Json{{"lo", v.lo.str(25, MPFR_RNDD)}, {"hi", v.hi.str(25, MPFR_RNDU)}};
}

inline Interval interval_from_json(const Json& j, mpfr_prec_t prec = 128) {
  return {BigFloat::parse(j.at("lo").get<std::string>(), prec, MPFR_RNDD),
          BigFloat::parse(j.at("hi").get<std::string>(), prec, MPFR_RNDU)};
}

inline Json certificate_to_json(const SieveCertificate& c) {
  Json j;
  j["level"] = c.level;
  j["delta"] = c.delta;
  j["k_max"] = c.k_max;
  j["coverage"] = {{"representations", c.coverage.representations}, {"ell", c.coverage.ell}};
  Json budgets = Json::array();
  for (const auto& b : c.budgets)
    budgets.push_back({{"mu", interval_to_json(b.mu)},
                       {"alpha", interval_to_json(b.alpha)},
                       {"dx", b.dx},
                       {"B", interval_to_json(b.bound)},
                       {"hhat_P0", interval_to_json(b.hhat_p0)},
                       {"k_max", b.k_max}});
  j["budgets"] = budgets;
  Json ex = Json::array();
  for (const auto& e : c.expected) {
    Json r{{"point", int_vector_to_json(e.point)}, {"k", e.k}};
    r["discriminant"] = e.discriminant ? Json(*e.discriminant) : Json(nullptr);
    ex.push_back(r);
  }
  j["expected"] = ex;
  Json pr = Json::array();
  for (const auto& p : c.primes)
    pr.push_back({{"ell", p.ell},
                  {"N", p.order},
                  {"points", p.points},
                  {"residues", p.residues},
                  {"wildcard", p.wildcard},
                  {"undefined", p.undefined},
                  {"partial", p.partial},
                  {"impossible", p.impossible},
                  {"outside", p.outside}});
  j["primes"] = pr;
  j["surviving_k"] = c.surviving_k;
  j["verdict"] = c.certified() ? "CERTIFIED" : "NOT CERTIFIED";
  return j;
}

inline SieveCertificate certificate_from_json(const Json& j) {
  SieveCertificate c;
  c.level = field<long>(j, "level", "certificate");
  c.delta = field<long>(j, "delta", "certificate");
  c.k_max = field<long>(j, "k_max", "certificate");
  c.coverage.representations = j.at("coverage").at("representations").get<std::size_t>();
  c.coverage.ell = j.at("coverage").at("ell").get<std::uint32_t>();
  for (const auto& b : j.at("budgets")) {
    HeightBudget h;
    h.mu = interval_from_json(b.at("mu"));
    h.alpha = interval_from_json(b.at("alpha"));
    h.dx = b.at("dx").get<int>();
    h.delta = c.delta;
    h.bound = interval_from_json(b.at("B"));
    h.hhat_p0 = interval_from_json(b.at("hhat_P0"));
    h.k_max = b.at("k_max").get<long>();
    c.budgets.push_back(std::move(h));
  }
  for (const auto& e : j.at("expected")) {
    ExpectedImage x;
    if (!e.at("discriminant").is_null()) x.discriminant = e.at("discriminant").get<long>();
    x.point = int_vector_from_json(e.at("point"));
    x.k = e.at("k").get<long>();
    c.expected.push_back(std::move(x));
  }
  for (const auto& p : j.at("primes")) {
    SievePrime s;
    s.ell = p.at("ell").get<std::uint32_t>();
    s.order = p.at("N").get<long>();
    s.points = p.at("points").get<std::size_t>();
    s.residues = p.at("residues").get<std::vector<long>>();
    s.wildcard = p.at("wildcard").get<bool>();
    s.undefined = p.at("undefined").get<std::size_t>();
    s.partial = p.at("partial").get<std::size_t>();
    s.impossible = p.at("impossible").get<std::size_t>();
    s.outside = p.at("outside").get<std::size_t>();
    c.primes.push_back(std::move(s));
  }
  c.surviving_k = j.at("surviving_k").get<std::vector<long>>();
  const bool claimed = j.at("verdict").get<std::string>() == "CERTIFIED";
  require(claimed == c.certified(), ErrorCode::kInconsistent, "certificate: verdict disagrees with its data");
  return c;
}

}  // namespace xzp

#endif  // XZP_SIEVE_HPP
