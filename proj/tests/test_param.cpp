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

#include <variant>

#include "support.hpp"

using namespace xzp;
using testdata::iv;

namespace {

QSeries as_qseries(const IntSeries& s) {
  std::vector<Rational> c(s.begin(), s.end());
  return make_qseries(0, c, static_cast<long>(s.size()) - 1);
}

QSeries constant(const Integer& c) { return QSeries::monomial(Rational(c), 0, QSeries::kExact); }

void expect_zero(const QSeries& s, long at_least, const std::string& what) {
  EXPECT_GE(s.precision(), at_least) << what;
  for (long n = s.start(); n <= s.precision(); ++n) ASSERT_EQ(s.coefficient(n), 0) << what << " at q^" << n;
}

}  // namespace

TEST(ParamSeries, LeadingTerms) {
  for (long p : testdata::kMapLevels) {
    const auto& s = testdata::series(p);
    EXPECT_EQ(*s.x.valuation(), -2);
    EXPECT_EQ(*s.y.valuation(), -3);
    EXPECT_EQ(s.x.coefficient(-2), 1);
    EXPECT_EQ(s.y.coefficient(-3), -1);
  }
}

TEST(ParamSeries, SatisfiesTheWeierstrassEquation) {
  for (long p : testdata::kMapLevels) {
    const auto& E = testdata::curve(p).E;
    const auto& x = testdata::series(p).x;
    const auto& y = testdata::series(p).y;
    const auto lhs = y * y + constant(E.a1) * x * y + constant(E.a3) * y;
    const auto rhs = x * x * x + constant(E.a2) * x * x + constant(E.a4) * x + constant(E.a6);
    expect_zero(lhs - rhs, 200, "p=" + std::to_string(p));
  }
}

TEST(ParamSeries, PullsBackTheInvariantDifferential) {
  // q dx/dq / (2y + a1 x + a3) = sum a_n q^n.
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    const auto& s = testdata::series(p);
    const auto w = theta(s.x) / (constant(2) * s.y + constant(c.E.a1) * s.x + constant(c.E.a3));
    std::vector<Rational> f(c.an.begin(), c.an.end());
    const auto newform = make_qseries(1, f, static_cast<long>(f.size()));
    expect_zero(w - newform.truncated(w.precision()), 200, "p=" + std::to_string(p));
  }
}

TEST(ParamSeries, CoefficientsAreIntegral) {
  for (long p : testdata::kMapLevels) {
    const auto& s = testdata::series(p);
    for (long n = -2; n <= s.x.precision(); ++n) ASSERT_EQ(s.x.coefficient(n).get_den(), 1) << "p=" << p;
    for (long n = -3; n <= s.y.precision(); ++n) ASSERT_EQ(s.y.coefficient(n).get_den(), 1) << "p=" << p;
  }
}

TEST(ParamSeries, RationalReconstruction) {
  const Integer M = Integer(1000003) * 1000033;
  for (auto q : {Rational(3, 7), Rational(-22, 5), Rational(0), Rational(41)}) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(q.get_den()).get_mpz_t(), M.get_mpz_t());
    const Integer a = mod_floor(q.get_num() * inv, M);
    const auto r = detail::rational_reconstruct(a, M);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, q);
  }
}

TEST(Parametrization, RepresentationsAreSeriesIdentities) {
  constexpr long kDepth = 200;
  // p(f) = x q(f) and p(f) = y q(f) on the basis series, checked directly.
  for (long p : testdata::kMapLevels) {
    const auto& basis = testdata::build(p).basis;
    const auto& m = testdata::map(p);
    const auto& s = testdata::series(p);
    ASSERT_FALSE(m.x.empty());
    ASSERT_FALSE(m.y.empty());
    auto check = [&](const RatioForm& r, const QSeries& phi, const std::string& what) {
      const auto prods = monomial_products(basis, r.degree, kDepth);
      const auto P = as_qseries(combine_products(prods, r.p, kDepth));
      const auto Q = as_qseries(combine_products(prods, r.q, kDepth));
      expect_zero(P - phi.truncated(kDepth) * Q, 150, what);
    };
    for (const auto& r : m.x) check(r, s.x, "x p=" + std::to_string(p));
    for (const auto& r : m.y) check(r, s.y, "y p=" + std::to_string(p));
    EXPECT_EQ(m.x.front().degree, m.dx);
    EXPECT_EQ(m.y.front().degree, m.dy);
  }
}

TEST(Parametrization, PrintedFormulasHoldInComputedCoordinates) {
  for (long p : testdata::kMapLevels) {
    const auto& pub = testdata::published(p);
    auto mt = match_published(testdata::build(p).model, testdata::points(p), pub, false);
    if (!mt.T) mt = match_published(testdata::build(p).model, testdata::points(p), pub, true);
    ASSERT_TRUE(mt.T.has_value()) << "p=" << p;
    const auto c = check_printed_map(testdata::build(p).basis, pub, *mt.T, testdata::series(p));
    EXPECT_TRUE(c.x_ok) << "p=" << p;
    EXPECT_TRUE(c.y_ok) << "p=" << p;
    EXPECT_GE(c.checked_through, 200) << "p=" << p;
    EXPECT_EQ(c.dx, testdata::map(p).dx) << "p=" << p;
  }
}

TEST(Parametrization, PerturbedFormulaIsRejected) {
  const auto& basis = testdata::build(163).basis;
  auto r = testdata::map(163).x.front();
  for (auto& c : r.p)
    if (sgn(c) != 0) {
      c += 1;
      break;
    }
  EXPECT_FALSE(verify_ratio(basis, testdata::series(163).x, r.degree, r, 200));
}

TEST(Parametrization, CuspMapsToTheOrigin) {
  for (long p : testdata::kMapLevels) {
    const auto v = evaluate_map(testdata::map(p), testdata::curve(p).E, testdata::points(p).cusp);
    ASSERT_TRUE(std::holds_alternative<RationalPoint>(v)) << "p=" << p;
    EXPECT_TRUE(std::get<RationalPoint>(v).infinity) << "p=" << p;
  }
}

TEST(Parametrization, CMPointsMapToMultiplesOfTheGenerator) {
  for (long p : testdata::kMapLevels) {
    const auto& c = testdata::curve(p);
    for (const auto& r : testdata::points(p).cm) {
      const auto v = evaluate_map(testdata::map(p), c.E, r.point);
      ASSERT_TRUE(std::holds_alternative<RationalPoint>(v)) << "p=" << p << " D=" << r.discriminant;
      const auto& P = std::get<RationalPoint>(v);
      EXPECT_TRUE(on_curve(c.E, P));
      const long bound = multiple_search_bound(c.E, P, testdata::hhat_generator(p));
      const auto k = multiple_of_generator(c.E, c.generator, P, bound);
      ASSERT_TRUE(k.has_value()) << "p=" << p << " D=" << r.discriminant;
      EXPECT_EQ(ec_mul(c.E, Integer(*k), c.generator), P);
    }
  }
}

TEST(Parametrization, ModularDegreeOfTheQuotientMap) {
  EXPECT_EQ(testdata::curve(197).plus_degree(), 5);
  for (long p : testdata::kMapLevels) EXPECT_EQ(testdata::curve(p).modular_degree % 2, 0) << "p=" << p;
}

TEST(Parametrization, JsonRoundTrip) {
  const auto& m = testdata::map(269);
  const auto j = map_to_json(m);
  const auto back = map_from_json(j);
  EXPECT_EQ(map_to_json(back).dump(), j.dump());
  EXPECT_EQ(back.dx, m.dx);
  ASSERT_EQ(back.x.size(), m.x.size());
  EXPECT_EQ(back.x[0].p, m.x[0].p);
}
