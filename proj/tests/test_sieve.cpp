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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "support.hpp"

using namespace xzp;
using testdata::iv;

namespace {

std::vector<ExpectedImage> expected(long p) {
  return expected_k_values(testdata::points(p), testdata::map(p), testdata::curve(p), testdata::hhat_generator(p));
}

const SieveCertificate& full_certificate(long p) {
  static std::map<long, SieveCertificate> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    const auto& c = testdata::curve(p);
    auto cert = residue_sieve(testdata::build(p).model, testdata::map(p), c, expected(p), testdata::hhat_generator(p),
                              10000, sieve_primes(p, c.E, 200));
    it = cache.emplace(p, std::move(cert)).first;
  }
  return it->second;
}

/// Reduction of a primitive integer vector, scaled so the first nonzero entry is 1.
std::vector<std::uint32_t> normalized_reduction(const IntVector& v, std::uint32_t ell) {
  std::vector<ModInt> x = detail::reduce_vector(v, ell);
  std::size_t i = 0;
  while (i < x.size() && x[i].value() == 0) ++i;
  EXPECT_LT(i, x.size());
  const ModInt inv = x[i].inverse();
  std::vector<std::uint32_t> out;
  for (auto& c : x) out.push_back((c * inv).value());
  return out;
}

}  // namespace

TEST(ExcludingPrime, ToyResidueSet) {
  SievePrime a;
  a.ell = 5;
  a.order = 4;
  a.residues = {0};
  const std::vector<SievePrime> primes{a};
  EXPECT_FALSE(excluding_prime(primes, 0));
  EXPECT_FALSE(excluding_prime(primes, 4));
  EXPECT_FALSE(excluding_prime(primes, -8));
  EXPECT_EQ(excluding_prime(primes, 1), 5u);
  EXPECT_EQ(excluding_prime(primes, -3), 5u);
  SievePrime w = a;
  w.wildcard = true;
  EXPECT_FALSE(excluding_prime({w}, 1));
}

TEST(ExcludingPrime, FloorMod) {
  EXPECT_EQ(floor_mod(-1, 4), 3);
  EXPECT_EQ(floor_mod(-8, 4), 0);
  EXPECT_EQ(floor_mod(9, 4), 1);
}

TEST(SievePrimes, SkipTheLevelAndBadPrimes) {
  for (long p : testdata::kMapLevels) {
    const auto& E = testdata::curve(p).E;
    for (auto ell : sieve_primes(p, E, 200)) {
      EXPECT_NE(static_cast<long>(ell), p);
      EXPECT_NE(mod_floor(E.discriminant, Integer(ell)), 0);
    }
  }
  const auto s = sieve_primes(163, testdata::curve(163).E, 200);
  EXPECT_EQ(std::count(s.begin(), s.end(), 163u), 0);
  EXPECT_EQ(s.front(), 2u);
}

TEST(GeneratorOrders, AgreeWithAnIndependentImplementation) {
  const auto j = read_json_file(testdata::tests("data/generator_orders.json"));
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    for (const auto& [ells, v] : j.at("orders").at(std::to_string(p)).items()) {
      const auto ell = static_cast<std::uint32_t>(std::stoul(ells));
      EXPECT_EQ(ec_order_mod(c.E, c.generator, ell), v.at("order").get<long>()) << "p=" << p << " ell=" << ell;
      EXPECT_EQ(ec_count_points(c.E, ell), v.at("card").get<long>()) << "p=" << p << " ell=" << ell;
    }
  }
}

TEST(SieveAtPrime, OrderMatchesTheGroupLaw) {
  const auto& c = testdata::curve(163);
  for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u}) {
    const auto pass = sieve_at_prime(testdata::build(163).model, testdata::map(163), c, ell);
    EXPECT_EQ(pass.record.order, ec_order_mod(c.E, c.generator, ell));
    EXPECT_TRUE(std::is_sorted(pass.record.residues.begin(), pass.record.residues.end()));
    EXPECT_EQ(pass.record.points, enumerate_points_mod_ell(testdata::build(163).model, ell).size());
  }
}

TEST(ExpectedImages, CuspGivesZero) {
  for (long p : testdata::kMapLevels) {
    const auto e = expected(p);
    ASSERT_EQ(e.size(), testdata::points(p).cm.size() + 1);
    long cusp_k = -1;
    for (const auto& x : e)
      if (!x.discriminant) cusp_k = x.k;
    EXPECT_EQ(cusp_k, 0) << "p=" << p;
  }
}

TEST(Soundness, ExpectedPointsReduceToAllowedResidues) {
  // Each rational point reduces to an enumerated F_ell point, and the
  // residue of its k is among those the sieve allows.
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    const auto& m = testdata::build(p).model;
    const auto e = expected(p);
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) {
      if (!c.E.good_reduction_at(ell)) continue;
      std::set<std::vector<std::uint32_t>> pts;
      EnumerationOptions eo;
      eo.smoothness = false;
      for (const auto& fp : enumerate_points_mod_ell(m, ell, eo)) pts.insert(fp.x);
      const auto pass = sieve_at_prime(m, testdata::map(p), c, ell);
      for (const auto& x : e) {
        EXPECT_TRUE(pts.count(normalized_reduction(x.point, ell))) << "p=" << p << " ell=" << ell;
        const auto& r = pass.record.residues;
        EXPECT_TRUE(pass.record.wildcard || std::binary_search(r.begin(), r.end(), floor_mod(x.k, pass.record.order)))
            << "p=" << p << " ell=" << ell << " k=" << x.k;
        // Where the image is fully defined it is the reduction of k P0.
        const auto im = detail::image_mod_ell(testdata::map(p), c.E, detail::reduce_vector(x.point, ell));
        if (im.kind == detail::PointImage::kPoint) {
          EXPECT_EQ(im.point, reduce_point(ec_mul(c.E, Integer(x.k), c.generator), ell)) << "p=" << p << " ell=" << ell;
        }
        EXPECT_NE(im.kind, detail::PointImage::kImpossible);
      }
    }
  }
}

TEST(Soundness, HeightInequalityHoldsAtExpectedPoints) {
  // hhat(phi(Q)) <= mu + 1.07 + (alpha + dx log H(Q))/2 for every expected
  // point Q where the representation is defined.
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    const auto& m = testdata::map(p);
    const auto mons = monomials(testdata::build(p).model.genus, m.x.front().degree);
    for (const auto& x : expected(p)) {
      Integer den = 0;
      for (std::size_t j = 0; j < mons.size(); ++j) {
        Integer t = m.x.front().q[j];
        for (int i : mons[j]) t *= x.point[static_cast<std::size_t>(i)];
        den += t;
      }
      if (sgn(den) == 0) continue;
      Integer H = 0;
      for (const auto& v : x.point) H = std::max(H, abs_value(v));
      const long delta = static_cast<long>(std::ceil(std::log10(std::max(H.get_d(), 1.0))));
      const auto b = height_bound(c.E, m.x.front(), delta, testdata::hhat_generator(p));
      const double lhs = static_cast<double>(x.k * x.k) * testdata::hhat_generator(p).lo.to_double();
      EXPECT_LE(lhs, b.bound.hi.to_double()) << "p=" << p << " k=" << x.k;
      EXPECT_LE(std::labs(x.k), b.k_max) << "p=" << p;
    }
  }
}

TEST(ResidueSieve, CertifiesLevel163) {
  const auto& cert = full_certificate(163);
  EXPECT_TRUE(cert.covered());
  EXPECT_TRUE(cert.certified());
  EXPECT_TRUE(cert.surviving_k.empty());
  EXPECT_GE(cert.k_max, height_bound(testdata::curve(163).E, testdata::map(163).x.front(), 10000,
                                     testdata::hhat_generator(163))
                            .k_max);
  EXPECT_EQ(cert.budgets.size(), cert.coverage.representations);
  for (const auto& pr : cert.primes) EXPECT_LT(pr.ell, 200u);
}

TEST(ResidueSieve, NoPrimesMeansNotCertified) {
  const auto& c = testdata::curve(163);
  const auto e = expected(163);
  const auto cert = residue_sieve(testdata::build(163).model, testdata::map(163), c, e, testdata::hhat_generator(163),
                                  10000, {});
  EXPECT_FALSE(cert.covered());
  EXPECT_FALSE(cert.certified());
  std::set<long> ks;
  for (const auto& x : e) ks.insert(x.k);
  std::size_t inside = 0;
  for (long k : ks)
    if (std::labs(k) <= cert.k_max) ++inside;
  EXPECT_EQ(cert.surviving_k.size(), static_cast<std::size_t>(2 * cert.k_max + 1) - inside);
}

TEST(ResidueSieve, SmallDeltaLeavesFewerCandidates) {
  const auto& c = testdata::curve(269);
  const auto ells = sieve_primes(269, c.E, 30);
  const auto a = residue_sieve(testdata::build(269).model, testdata::map(269), c, expected(269),
                               testdata::hhat_generator(269), 10, ells);
  const auto b = residue_sieve(testdata::build(269).model, testdata::map(269), c, expected(269),
                               testdata::hhat_generator(269), 1000, ells);
  EXPECT_LT(a.k_max, b.k_max);
  EXPECT_LE(a.surviving_k.size(), b.surviving_k.size());
}

TEST(Certificate, JsonRoundTrip) {
  // Intervals are printed to 25 digits and read back outward, so a reload
  // encloses the original; everything else survives exactly.
  const auto& cert = full_certificate(163);
  const auto j = certificate_to_json(cert);
  EXPECT_EQ(j.at("verdict"), "CERTIFIED");
  const auto back = certificate_from_json(j);
  auto a = certificate_to_json(back), b = j;
  a.erase("budgets");
  b.erase("budgets");
  EXPECT_EQ(a.dump(), b.dump());
  ASSERT_EQ(back.budgets.size(), cert.budgets.size());
  for (std::size_t i = 0; i < cert.budgets.size(); ++i) {
    EXPECT_EQ(back.budgets[i].k_max, cert.budgets[i].k_max);
    EXPECT_LE(back.budgets[i].bound.lo, cert.budgets[i].bound.lo);
    EXPECT_GE(back.budgets[i].bound.hi, cert.budgets[i].bound.hi);
    EXPECT_LE(back.budgets[i].hhat_p0.lo, cert.budgets[i].hhat_p0.lo);
    EXPECT_GE(back.budgets[i].hhat_p0.hi, cert.budgets[i].hhat_p0.hi);
  }
}

TEST(Certificate, ReductionOfPointsWithEllInTheDenominator) {
  const auto& c = testdata::curve(163);
  for (long k = 1; k <= 8; ++k) {
    const auto P = ec_mul(c.E, Integer(k), c.generator);
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
      // Reduction is a homomorphism: red(kP0) = k red(P0).
      EXPECT_EQ(reduce_point(P, ell), ec_mul(c.E, Integer(k), reduce_point(c.generator, ell))) << "k=" << k << " ell=" << ell;
    }
  }
}

TEST(Certificate, VerdictMustAgreeWithTheData) {
  auto j = certificate_to_json(full_certificate(163));
  j["verdict"] = "NOT CERTIFIED";
  EXPECT_THROW(certificate_from_json(j), Error);
}

TEST(Certificate, IntervalsAreRoundedOutward) {
  const Interval v = Interval::exact(Rational(1, 3), 128);
  const auto back = interval_from_json(interval_to_json(v));
  EXPECT_LE(back.lo, v.lo);
  EXPECT_GE(back.hi, v.hi);
}
