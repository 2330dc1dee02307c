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

#include <random>

#include "xzp/qseries.hpp"

using namespace xzp;

namespace {

QSeries random_series(std::mt19937_64& rng, long start, long precision, bool unit = false) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (long n = start; n <= precision; ++n) c.emplace_back(num(rng), den(rng));
  for (auto& x : c) x.canonicalize();
  if (unit && sgn(c[0]) == 0) c[0] = 1;
  return make_qseries(start, c, precision);
}

}  // namespace

TEST(SeriesArithmetic, DifferenceOfSquares) {
  auto a = make_qseries(0, {1, 1}, 5);
  auto b = make_qseries(0, {1, -1}, 5);
  auto p = a * b;
  EXPECT_EQ(p.precision(), 5);
  EXPECT_EQ(p, make_qseries(0, {1, 0, -1}, 5));
  EXPECT_EQ(p.coefficients().size(), 6u);
}

TEST(SeriesArithmetic, ValuationsAdd) {
  auto q = QSeries::monomial(Rational(1), 1);
  auto q2 = q * q;
  EXPECT_EQ(q2.valuation(), 2);
  EXPECT_EQ(q2, QSeries::monomial(Rational(1), 2));
  auto a = make_qseries(3, {1, 2}, 10);
  auto b = make_qseries(-2, {5}, 4);
  auto c = a * b;
  EXPECT_EQ(c.valuation(), 1);
  EXPECT_EQ(c.precision(), std::min(10 - 2, 4 + 3));
}

TEST(SeriesArithmetic, ZeroIsAbsorbingWithJustifiedPrecision) {
  auto f = make_qseries(0, {1, 2, 3}, 7);
  QSeries z(Rational(0), 7);
  auto p = f * z;
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.precision(), 7);
  // Zero to precision 7 is not the exact zero.
  EXPECT_NE(p, QSeries());
  EXPECT_TRUE(QSeries().is_exact());
  EXPECT_FALSE(p.is_exact());
}

TEST(SeriesArithmetic, LengthInvariant) {
  auto f = make_qseries(-2, {1, 0, 3, 0}, 6);
  EXPECT_EQ(static_cast<long>(f.coefficients().size()), f.precision() - *f.valuation() + 1);
  auto g = make_qseries(0, {0, 0, 5}, 6);
  EXPECT_EQ(g.valuation(), 2);
  EXPECT_EQ(static_cast<long>(g.coefficients().size()), g.precision() - *g.valuation() + 1);
}

TEST(SeriesArithmetic, MixedRingsRejected) {
  FpSeries a(0, {ModInt(1, 5)}, 3, ModInt(0, 5));
  FpSeries b(0, {ModInt(1, 7)}, 3, ModInt(0, 7));
  try {
    (void)(a + b);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
    EXPECT_NE(std::string(e.what()).find("mixed coefficient rings"), std::string::npos);
  }
}

TEST(SeriesInvert, GeometricSeries) {
  auto a = make_qseries(0, {1, 1}, 6);
  auto inv = series_invert(a);
  EXPECT_EQ(inv, make_qseries(0, {1, -1, 1, -1, 1, -1, 1}, 6));
}

TEST(SeriesInvert, LaurentMonomialAndConstant) {
  auto q = QSeries::monomial(Rational(1), 1);
  EXPECT_EQ(series_invert(q), QSeries::monomial(Rational(1), -1));
  auto two = QSeries::monomial(Rational(2), 0);
  EXPECT_EQ(series_invert(two), QSeries::monomial(Rational(1, 2), 0));
}

TEST(SeriesInvert, ZeroLeadingCoefficientRejected) {
  QSeries z(Rational(0), 4);
  EXPECT_THROW(series_invert(z), Error);
  auto poly = make_qseries(0, {1, 1}, QSeries::kExact);
  EXPECT_THROW(series_invert(poly), Error);  // needs a cap
  EXPECT_EQ(series_invert(poly, 3), make_qseries(0, {1, -1, 1, -1}, 3));
}

TEST(SeriesInvert, RandomUnitsMultiplyToOne) {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    long v = static_cast<long>(rng() % 5) - 2;
    auto a = random_series(rng, v, v + 12, true);
    auto prod = a * series_invert(a);
    EXPECT_EQ(prod, make_qseries(0, {1}, prod.precision())) << a;
    EXPECT_EQ(prod.precision(), 12 - 0);
  }
}

TEST(SeriesCompose, Square) {
  auto outer = make_qseries(2, {1}, QSeries::kExact);
  auto inner = make_qseries(1, {1, 1}, QSeries::kExact);
  EXPECT_EQ(series_compose(outer, inner), make_qseries(2, {1, 2, 1}, QSeries::kExact));
}

TEST(SeriesCompose, InverseOfIdentity) {
  auto outer = make_qseries(-1, {1}, QSeries::kExact);
  auto inner = make_qseries(1, {1}, QSeries::kExact);
  EXPECT_EQ(series_compose(outer, inner, 10), make_qseries(-1, {1}, 10));
}

TEST(SeriesCompose, LaurentAgainstDirectExpansion) {
  // z^-2 + z at z = q + q^2. Independently: (q+q^2)^-2 = q^-2 (1+q)^-2 =
  // q^-2 sum (-1)^n (n+1) q^n, so the series is
  // q^-2 - 2q^-1 + 3 - 4q + 5q^2 + ... plus q + q^2.
  auto outer = make_qseries(-2, {1, 0, 0, 1}, QSeries::kExact);
  auto inner = make_qseries(1, {1, 1}, QSeries::kExact);
  auto r = series_compose(outer, inner, 4);
  std::vector<Rational> expect;
  for (long n = 0; n <= 6; ++n) expect.emplace_back((n % 2 ? -1 : 1) * (n + 1));
  expect[3] += 1;  // q^1
  expect[4] += 1;  // q^2
  EXPECT_EQ(r, make_qseries(-2, expect, 4));
  EXPECT_EQ(r.coefficient(-2), 1);
  EXPECT_EQ(r.coefficient(-1), -2);
  EXPECT_EQ(r.coefficient(0), 3);
  EXPECT_EQ(r.coefficient(1), -3);
}

TEST(SeriesCompose, PrecisionIsJustified) {
  // A finite-precision inner series limits the result.
  auto outer = make_qseries(1, {1, 1, 1}, QSeries::kExact);
  auto inner = make_qseries(1, {1, 3}, 5);
  auto r = series_compose(outer, inner);
  EXPECT_EQ(r.precision(), 5);
  // A finite-precision outer series in z limits the result through v(inner).
  auto outer2 = make_qseries(0, {1, 1}, 3);
  auto inner2 = make_qseries(2, {1}, QSeries::kExact);
  EXPECT_EQ(series_compose(outer2, inner2).precision(), 7);
}

TEST(SeriesCompose, ValuationZeroInnerRejected) {
  auto outer = make_qseries(0, {1, 1}, QSeries::kExact);
  auto inner = make_qseries(0, {1, 1}, QSeries::kExact);
  EXPECT_THROW(series_compose(outer, inner), Error);
}

TEST(SeriesCompose, IdentityInnerIsNeutral) {
  std::mt19937_64 rng(77);
  auto id = QSeries::monomial(Rational(1), 1);
  for (int trial = 0; trial < 50; ++trial) {
    long v = static_cast<long>(rng() % 4) - 2;
    auto outer = random_series(rng, v, v + 9, true);
    EXPECT_EQ(series_compose(outer, id), outer);
  }
}

TEST(IntegrateDlog, Basics) {
  EXPECT_EQ(integrate_dlog(make_qseries(1, {1}, 5)), make_qseries(1, {1}, 5));
  std::vector<Rational> half{Rational(1), Rational(1, 2)};
  EXPECT_EQ(integrate_dlog(make_qseries(1, {1, 1}, 5)), make_qseries(1, half, 5));
}

TEST(IntegrateDlog, EigenformHeadMatchesCoefficientwiseDivision) {
  auto f = make_qseries(1, {1, 0, -2, 3, -4}, 5);
  auto z = integrate_dlog(f);
  for (long n = 1; n <= 5; ++n) EXPECT_EQ(z.coefficient(n), f.coefficient(n) / Rational(n));
  EXPECT_EQ(z.coefficient(3), Rational(-2, 3));
}

TEST(IntegrateDlog, NonpositiveValuationRejected) {
  EXPECT_THROW(integrate_dlog(make_qseries(0, {1, 1}, 5)), Error);
  EXPECT_THROW(integrate_dlog(make_qseries(-1, {1}, 5)), Error);
}

TEST(IntegrateDlog, ThetaUndoesIntegration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_series(rng, 1, 20);
    EXPECT_EQ(theta(integrate_dlog(f)), f);
  }
}

TEST(ReduceMod, Examples) {
  auto f = make_qseries(0, {1, 3}, 4);
  auto r = reduce_mod(f, 3);
  EXPECT_EQ(r, FpSeries(0, {ModInt(1, 3)}, 4, ModInt(0, 3)));
  std::vector<Rational> half{Rational(1, 2)};
  auto g = make_qseries(1, half, 4);
  try {
    (void)reduce_mod(g, 2);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bad prime for this series"), std::string::npos);
  }
  EXPECT_EQ(reduce_mod(g, 3), FpSeries(1, {ModInt(2, 3)}, 4, ModInt(0, 3)));
}

TEST(RingAxioms, RandomSeriesAtFixedPrecision) {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_series(rng, 0, 15), b = random_series(rng, 0, 15), c = random_series(rng, 0, 15);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a - b) + b, a);
  }
}

TEST(RingAxioms, PrimeFieldSeries) {
  std::mt19937_64 rng(99);
  const std::uint32_t ell = 101;
  auto rnd = [&]() {
    std::vector<ModInt> c;
    for (int i = 0; i < 12; ++i) c.emplace_back(static_cast<long>(rng() % ell), ell);
    return FpSeries(0, c, 11, ModInt(0, ell));
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero() && !a.coefficient(0).is_zero()) {
      EXPECT_EQ(a * series_invert(a), FpSeries(0, {ModInt(1, ell)}, 11, ModInt(0, ell)));
    }
  }
}
