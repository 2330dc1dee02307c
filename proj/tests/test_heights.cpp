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

#include <cmath>

#include "support.hpp"

using namespace xzp;
using testdata::iv;

namespace {

double lo(const Interval& x) { return x.lo.to_double(); }
double hi(const Interval& x) { return x.hi.to_double(); }

RatioForm printed_x(long p) {
  const auto& pub = testdata::published(p);
  auto [d, num] = parse_form(pub.map->x.numerator, pub.genus);
  auto [e, den] = parse_form(pub.map->x.denominator, pub.genus);
  EXPECT_EQ(d, e);
  return {num, den, d};
}

}  // namespace

TEST(NaiveHeight, Examples) {
  EXPECT_NEAR(lo(naive_height(iv({1, 2}))), std::log(2.0), 1e-15);
  EXPECT_NEAR(hi(naive_height(iv({24, 10, 13, 15, -50, 42}))), std::log(50.0), 1e-15);
  EXPECT_EQ(hi(naive_height(iv({0, 0, 0, 0, 0, 1}))), 0.0);
  EXPECT_THROW(naive_height(iv({2, 4})), Error);
  EXPECT_THROW(naive_height(iv({0, 0})), Error);
}

TEST(NaiveHeight, EnclosuresAreOrdered) {
  const auto h = naive_height(iv({3, 7, -1000003}));
  EXPECT_LE(h.lo, h.hi);
  EXPECT_TRUE(h.contains(BigFloat::log_abs(Integer(1000003), 128, MPFR_RNDN)));
}

TEST(CurveInvariants, Level163) {
  const auto& E = testdata::curve(163).E;
  EXPECT_EQ(E.c4, 96);
  EXPECT_EQ(E.c6, -1080);
  EXPECT_EQ(E.discriminant, -163);
  // c4^3 - c6^2 = 1728 Delta.
  for (long p : testdata::kMapLevels) {
    const auto& F = testdata::curve(p).E;
    EXPECT_EQ(F.c4 * F.c4 * F.c4 - F.c6 * F.c6, 1728 * F.discriminant) << "p=" << p;
  }
}

TEST(CanonicalHeight, OriginHasHeightZero) {
  const auto h = canonical_height(testdata::curve(163).E, RationalPoint::zero());
  EXPECT_TRUE(h.value.lo.is_zero());
  EXPECT_TRUE(h.value.hi.is_zero());
}

TEST(CanonicalHeight, AgreesWithAnIndependentImplementation) {
  const auto j = read_json_file(testdata::tests("data/canonical_heights.json"));
  for (long p : testdata::kMapLevels) {
    const auto& v = j.at("values").at(std::to_string(p));
    const auto& c = testdata::curve(p);
    EXPECT_EQ(c.generator.x, Rational(v.at("point")[0].get<std::string>()));
    EXPECT_EQ(c.generator.y, Rational(v.at("point")[1].get<std::string>()));
    const double pari = v.at("ellheight").get<double>() / 2;
    const auto& h = testdata::hhat_generator(p);
    EXPECT_LE(lo(h) - 1e-9, pari) << "p=" << p;
    EXPECT_GE(hi(h) + 1e-9, pari) << "p=" << p;
    EXPECT_LT(hi(h) - lo(h), 3e-6) << "p=" << p;
  }
}

TEST(CanonicalHeight, IsQuadratic) {
  for (long p : {163L, 359L}) {
    const auto& c = testdata::curve(p);
    const auto& h1 = testdata::hhat_generator(p);
    for (long k = 2; k <= 10; ++k) {
      // A loose target keeps the doubled points small; the enclosure stays certified.
      const auto hk = canonical_height(c.E, ec_mul(c.E, Integer(k), c.generator), 1e-2).value;
      const double k2 = static_cast<double>(k * k);
      EXPECT_LE(lo(hk), k2 * hi(h1) + 1e-12) << "p=" << p << " k=" << k;
      EXPECT_GE(hi(hk), k2 * lo(h1) - 1e-12) << "p=" << p << " k=" << k;
    }
    const auto neg = canonical_height(c.E, ec_neg(c.E, c.generator)).value;
    EXPECT_NEAR(neg.mid().to_double(), h1.mid().to_double(), 3e-6);
  }
}

TEST(CanonicalHeight, DifferenceBoundsHoldOnMultiples) {
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    const auto b = silverman_bounds(c.E);
    EXPECT_GE(lo(silverman_mu(c.E)), 0.0);
    EXPECT_LT(hi(b.lower), 0.0);
    EXPECT_GT(lo(b.upper), 0.0);
    for (long k = 1; k <= 12; ++k) {
      const auto P = ec_mul(c.E, Integer(k), c.generator);
      const auto h = canonical_height(c.E, P, 1e-2).value;
      const double hx = hi(height_of_rational(P.x)) / 2;
      EXPECT_GE(hi(h) - hx, lo(b.lower)) << "p=" << p << " k=" << k;
      EXPECT_LE(lo(h) - hx, hi(b.upper)) << "p=" << p << " k=" << k;
    }
  }
}

TEST(CanonicalHeight, TorsionIsRejected) {
  // y^2 = x^3 + 1 has the 6-torsion point (2, 3).
  const auto E = WeierstrassCurve::from_a({0, 0, 0, 0, 1});
  EXPECT_THROW(canonical_height(E, RationalPoint::affine(Rational(2), Rational(3))), Error);
}

TEST(HeightBound, AlphaOfPrintedRepresentations) {
  EXPECT_NEAR(hi(alpha_constant(printed_x(163))), std::log(5.0), 1e-12);
  EXPECT_NEAR(hi(alpha_constant(printed_x(269))), std::log(2.0), 1e-12);
  auto r = printed_x(163);
  for (auto& c : r.p) c *= 3;
  for (auto& c : r.q) c *= 3;
  EXPECT_NEAR(hi(alpha_constant(r)), std::log(15.0), 1e-12);
}

TEST(HeightBound, DeltaZeroSpecialization) {
  const auto& c = testdata::curve(163);
  const auto r = printed_x(163);
  const auto b = height_bound(c.E, r, 0, testdata::hhat_generator(163));
  const double B = hi(silverman_mu(c.E)) + 1.07 + std::log(5.0) / 2;
  EXPECT_NEAR(hi(b.bound), B, 1e-9);
  EXPECT_EQ(b.k_max, static_cast<long>(std::floor(std::sqrt(B / lo(testdata::hhat_generator(163))))));
}

TEST(HeightBound, GrowsLikeTheSquareRootOfDelta) {
  const auto& c = testdata::curve(197);
  const auto& rep = testdata::map(197).x.front();
  long prev = 0;
  for (long delta : {100L, 1000L, 10000L, 100000L}) {
    const long k = height_bound(c.E, rep, delta, testdata::hhat_generator(197)).k_max;
    const long k2 = height_bound(c.E, rep, 2 * delta, testdata::hhat_generator(197)).k_max;
    EXPECT_GT(k, prev);
    EXPECT_NEAR(static_cast<double>(k2) / static_cast<double>(k), std::sqrt(2.0), 0.05) << "delta=" << delta;
    prev = k;
  }
}

TEST(HeightBound, MorePrecisionNeverLoosensTheBound) {
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    const auto& rep = testdata::map(p).x.front();
    const auto h128 = canonical_height(c.E, c.generator, 1e-6, 128).value;
    const auto h256 = canonical_height(c.E, c.generator, 1e-6, 256).value;
    EXPECT_LE(height_bound(c.E, rep, 10000, h256, 256).k_max, height_bound(c.E, rep, 10000, h128, 128).k_max);
  }
}

TEST(HeightBound, RejectsAnEnclosureContainingZero) {
  const auto& c = testdata::curve(163);
  const Interval bad{BigFloat(-1e-3, 128), BigFloat(1e-3, 128)};
  EXPECT_THROW(height_bound(c.E, printed_x(163), 10, bad), Error);
  EXPECT_THROW(height_bound(c.E, printed_x(163), -1, testdata::hhat_generator(163)), Error);
}

TEST(Multiples, RecoversSmallMultiples) {
  const auto& c = testdata::curve(229);
  for (long k = -6; k <= 6; ++k) {
    const auto P = ec_mul(c.E, Integer(k), c.generator);
    const auto found = multiple_of_generator(c.E, c.generator, P, multiple_search_bound(c.E, P, testdata::hhat_generator(229)));
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(*found, k);
  }
}
