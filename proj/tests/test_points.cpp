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

#include <set>

#include "support.hpp"

using namespace xzp;
using testdata::iv;

namespace {

/// Legendre symbol by Euler's criterion, independent of the library.
long euler_symbol(long a, long p) {
  Integer r;
  const Integer base = mod_floor(Integer(a), Integer(p));
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), Integer(p).get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST(Heegner, DiscriminantsAgreeWithEulersCriterion) {
  for (long p : testdata::kLevels) {
    std::vector<long> want;
    for (long D : kClassNumberOneDiscriminants)
      if (euler_symbol(D, p) >= 0) want.push_back(D);
    EXPECT_EQ(heegner_discriminants(p), want) << "p=" << p;
  }
}

TEST(Heegner, Level163HasTenCMPoints) {
  const auto d = heegner_discriminants(163);
  EXPECT_EQ(d.size(), 10u);
  EXPECT_NE(std::find(d.begin(), d.end(), -163), d.end());  // ramified
}

TEST(Heegner, SplitGeneratorHasNormP) {
  for (long p : testdata::kLevels)
    for (long D : heegner_discriminants(p)) {
      if (D == -p) continue;
      const auto [c, d] = split_prime_generator(D, p);
      EXPECT_EQ(norm_form(tau_of_discriminant(D), c, d), Rational(p)) << "p=" << p << " D=" << D;
      EXPECT_EQ(gcd(c, d), 1);
    }
}

TEST(Heegner, UnimodularCompletionHasDeterminantOne) {
  for (long c : {1L, 2L, 7L, -5L, 12L})
    for (long d : {1L, 3L, -11L, 35L}) {
      if (gcd(Integer(c), Integer(d)) != 1) continue;
      const auto m = unimodular_completion(c, d);
      EXPECT_EQ(m[0] * m[3] - m[1] * m[2], 1);
      EXPECT_EQ(m[2], c);
      EXPECT_EQ(m[3], d);
    }
}

TEST(Heegner, FrickeIsAnInvolution) {
  for (long D : kClassNumberOneDiscriminants) {
    const auto t = tau_of_discriminant(D);
    EXPECT_EQ(fricke(fricke(t, 163), 163), t);
  }
}

TEST(Reconstruction, ContinuedFractionRecoversSmallRationals) {
  const BigFloat x(Rational(355, 113), 200);
  const auto r = rational_from_real(x, Integer(1000), BigFloat::pow2(-150, 200));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Rational(355, 113));
  EXPECT_FALSE(rational_from_real(BigFloat::sqrt(BigFloat(2L, 200)), Integer(1000), BigFloat::pow2(-150, 200)));
}

TEST(ExpectedPoints, CuspIsTheLeadingCoefficientVector) {
  for (long p : {163L, 193L, 359L}) {
    const auto& b = testdata::build(p);
    IntVector lead;
    for (const auto& f : b.basis) lead.push_back(f[1]);
    EXPECT_EQ(testdata::points(p).cusp, make_primitive(lead));
    EXPECT_TRUE(verify_point_on_model(b.model, testdata::points(p).cusp));
  }
}

TEST(ExpectedPoints, EveryCMPointIsExactStableAndDistinct) {
  for (long p : testdata::kLevels) {
    const auto& t = testdata::points(p);
    const auto& m = testdata::build(p).model;
    std::set<IntVector> seen{t.cusp};
    std::vector<long> ds;
    for (const auto& r : t.cm) {
      ds.push_back(r.discriminant);
      EXPECT_TRUE(r.verified) << "p=" << p << " D=" << r.discriminant;
      EXPECT_TRUE(r.stability_checked) << "p=" << p << " D=" << r.discriminant;
      EXPECT_TRUE(verify_point_on_model(m, r.point)) << "p=" << p << " D=" << r.discriminant;
      EXPECT_EQ(make_primitive(r.point), r.point);
      EXPECT_TRUE(seen.insert(r.point).second) << "p=" << p << " D=" << r.discriminant << " repeats a point";
    }
    EXPECT_EQ(ds, heegner_discriminants(p)) << "p=" << p;
  }
}

TEST(ExpectedPoints, Level163HasElevenRationalPoints) {
  const auto& t = testdata::points(163);
  EXPECT_EQ(t.cm.size() + 1, 11u);
}

TEST(ExpectedPoints, ReconstructionIsIndependentOfStartingPrecision) {
  CMOptions o;
  o.bits = 512;
  o.stability_check = false;
  const auto hi = expected_points(testdata::build(197).model, testdata::build(197).basis, o);
  const auto& lo = testdata::points(197);
  ASSERT_EQ(hi.cm.size(), lo.cm.size());
  for (std::size_t i = 0; i < hi.cm.size(); ++i) EXPECT_EQ(hi.cm[i].point, lo.cm[i].point);
}

TEST(PublishedPoints, PrintedPointsSatisfyPrintedEquations) {
  for (long p : testdata::kLevels) {
    if (p == 359) continue;
    const auto c = check_printed_points(testdata::published(p));
    EXPECT_TRUE(c.ok()) << "p=" << p << (c.reasons.empty() ? "" : ": " + c.reasons[0]);
  }
}

TEST(PublishedPoints, Level359PrintedTableDoesNotFitItsEquations) {
  const auto c = check_printed_points(testdata::published(359));
  EXPECT_FALSE(c.ok());
  EXPECT_FALSE(testdata::published(359).points_are_listed_as_printed());
}

TEST(PublishedPoints, DiscriminantLabelsMatchComputedPoints) {
  for (long p : testdata::kLevels) {
    std::set<long> ours;
    for (const auto& r : testdata::points(p).cm) ours.insert(r.discriminant);
    const auto& pub = testdata::published(p);
    if (p == 271) {
      // One point is printed under -4 although it is the -3 point.
      EXPECT_NE(printed_discriminants(pub, false), ours);
      EXPECT_EQ(printed_discriminants(pub, true), ours);
    } else if (p != 359) {
      EXPECT_EQ(printed_discriminants(pub, false), ours) << "p=" << p;
    }
  }
}

TEST(PublishedPoints, PrintedPointsAreImagesOfComputedPoints) {
  // Through the coordinate change, every printed point is proportional to
  // the computed point with the same label.
  for (long p : {163L, 193L, 229L, 271L}) {
    const auto& pub = testdata::published(p);
    const auto m = match_published(testdata::build(p).model, testdata::points(p), pub, p == 271);
    ASSERT_TRUE(m.T.has_value()) << "p=" << p;
    const auto& T = *m.T;
    for (std::size_t i = 0; i < pub.points.size(); ++i) {
      const auto d = printed_label(pub, i, p == 271);
      IntVector ours = testdata::points(p).cusp;
      for (const auto& r : testdata::points(p).cm)
        if (d && r.discriminant == *d) ours = r.point;
      IntVector img(T.size(), 0);
      for (std::size_t a = 0; a < T.size(); ++a)
        for (std::size_t b = 0; b < T.size(); ++b) img[a] += T[a][b] * ours[b];
      auto want = make_primitive(pub.points[i].point);
      img = make_primitive(img);
      auto neg = img;
      for (auto& x : neg) x = -x;
      EXPECT_TRUE(img == want || neg == want) << "p=" << p << " row " << i + 1;
    }
  }
}

TEST(PointsJson, RoundTrip) {
  const auto& t = testdata::points(229);
  const auto j = points_to_json(t);
  const auto back = points_from_json(j);
  EXPECT_EQ(back.cusp, t.cusp);
  ASSERT_EQ(back.cm.size(), t.cm.size());
  for (std::size_t i = 0; i < t.cm.size(); ++i) {
    EXPECT_EQ(back.cm[i].point, t.cm[i].point);
    EXPECT_EQ(back.cm[i].discriminant, t.cm[i].discriminant);
  }
  EXPECT_EQ(points_to_json(back).dump(), j.dump());
}
