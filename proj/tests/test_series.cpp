// Copyright 2026 The frob Authors.
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

#include "frob/series.hpp"
#include "test_util.hpp"

namespace frob {
namespace {

using C = Coefficient;
using testing::random_series;

const MarkedPoint kInf = MarkedPoint::infinity();
const MarkedPoint kZero = MarkedPoint::zero();
const MarkedPoint kV = MarkedPoint::finite(1, C(0.7, 0.4));

TEST(Series, AddCancelsAndKeepsWindow) {
  const LaurentSeries f(kInf, -1, {1.0, 0.0, 1.0});  // p + p^-1 on [-1, 1]
  const LaurentSeries g(kInf, -1, {0.0, 0.0, -1.0});
  const auto h = f + g;
  EXPECT_EQ(h.lo(), -1);
  EXPECT_EQ(h[-1], C(1.0));
  EXPECT_EQ(h[0], C(0.0));
  EXPECT_EQ(h[1], C(0.0));
  EXPECT_THROW(h[-2], Error);
}

TEST(Series, AddIdentityAndLinearity) {
  const auto f = LaurentSeries::monomial(kInf, 2, 2.0);
  const auto g = LaurentSeries::monomial(kInf, 2, 3.0);
  EXPECT_EQ((f + g)[2], C(5.0));
  EXPECT_EQ(max_difference(f + LaurentSeries::zero(kInf), f), 0.0);
}

TEST(Series, PolynomialProduct) {
  const LaurentSeries a(kInf, 0, {1.0, 1.0}, true), b(kInf, 0, {-1.0, 1.0}, true);
  const auto c = a * b;
  EXPECT_EQ(c[2], C(1.0));
  EXPECT_EQ(c[1], C(0.0));
  EXPECT_EQ(c[0], C(-1.0));
  EXPECT_EQ(max_difference(a * LaurentSeries::constant(kInf, 1.0), a), 0.0);
}

TEST(Series, ProductWindowAgainstSymbolicExpansion) {
  const C u(0.3, -1.2);
  const LaurentSeries f(kInf, -1, {u, 0.0, 1.0});               // p + u/p, known on [-1, 1]
  const auto g = LaurentSeries::monomial(kInf, -1);              // 1/p exactly
  const auto h = f * g;
  EXPECT_EQ(h.lo(), -2);
  EXPECT_EQ(h.hi(), 0);
  EXPECT_EQ(h[0], C(1.0));
  EXPECT_EQ(h[-1], C(0.0));
  EXPECT_EQ(h[-2], u);
  EXPECT_THROW(h[-3], Error);
}

TEST(Series, ProjectionAtInfinity) {
  const LaurentSeries f(kInf, -1, {1.0, 3.0, 0.0, 1.0}, true);  // p^2 + 3 + p^-1
  const auto g = project(f, 0, Side::geq);
  EXPECT_EQ(g[2], C(1.0));
  EXPECT_EQ(g[0], C(3.0));
  EXPECT_EQ(g[-1], C(0.0));
}

TEST(Series, ProjectionOfQuarticDerivativeTimesInversePower) {
  const C u(0.4, 0.1), v(-0.2, 0.9);
  const LaurentSeries lp(kInf, 0, {v, 2.0 * u, 0.0, 4.0}, true);  // 4p^3 + 2u p + v
  const auto g = project(lp * LaurentSeries::monomial(kInf, -1), 0, Side::geq);
  EXPECT_EQ(g[2], C(4.0));
  EXPECT_EQ(g[1], C(0.0));
  EXPECT_EQ(g[0], 2.0 * u);
  EXPECT_EQ(g[-1], C(0.0));
}

TEST(Series, ProjectionNeedsWindow) {
  const LaurentSeries f(kZero, 0, {1.0, 2.0});  // known up to p^1 only
  EXPECT_THROW(project(f, 3, Side::lt), Error);
  try {
    project(f, 3, Side::lt);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientWindow);
  }
}

TEST(Series, DerivationMonomials) {
  const auto p3 = LaurentSeries::monomial(kInf, 3);
  EXPECT_EQ(derive(p3, 0)[2], C(3.0));
  EXPECT_EQ(derive(p3, 1)[3], C(3.0));
  EXPECT_EQ(derive(LaurentSeries::constant(kZero, 1.0), 1).max_abs(), 0.0);
}

TEST(Series, Residues) {
  EXPECT_EQ(residue(LaurentSeries::monomial(kInf, -1)), C(-1.0));
  EXPECT_EQ(residue(LaurentSeries::monomial(kZero, -1)), C(1.0));
  const LaurentSeries f(kInf, -1, {5.0, 0.0, 0.0, 1.0}, true);
  EXPECT_EQ(residue(f), C(-5.0));
}

TEST(Series, Traces) {
  EXPECT_EQ(trace(LaurentSeries::monomial(kInf, -1), 0), C(1.0));
  EXPECT_EQ(trace(LaurentSeries::constant(kZero, 1.0), 1), C(1.0));
  EXPECT_EQ(trace(LaurentSeries::constant(kInf, 1.0), 1), C(1.0));
}

TEST(Series, TraceAtFinitePointAgainstDirectResidue) {
  // Tr_v(f) = res_v(f / p) for s = 1; compare with the product by the expansion of 1/p
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_series(kV, rng, -3, 3);
    const auto direct = residue(mul(f, p_power(kV, -1, 12)));
    EXPECT_LT(std::abs(trace(f, 1) - direct), 1e-13);
  }
}

TEST(Series, SquareRootOfSquare) {
  const auto root = pow_rational(LaurentSeries::monomial(kInf, 2), Rational(1, 2));
  EXPECT_EQ(root.ramification, 2);
  EXPECT_EQ(root.coefficient(Rational(1)), C(1.0));
  EXPECT_EQ(root.to_laurent()[1], C(1.0));
}

TEST(Series, QuarticRootBinomialOracle) {
  const C u(0.6, -0.3);
  const LaurentSeries f(kInf, 2, {u, 0.0, 1.0}, true);  // p^4 + u p^2
  const auto g = pow_rational(f, Rational(1, 4), 12).to_laurent(1e-14);
  EXPECT_LT(std::abs(g[1] - C(1.0)), 1e-15);
  EXPECT_LT(std::abs(g[-1] - u / 4.0), 1e-15);
  EXPECT_LT(std::abs(g[-3] + 3.0 * u * u / 32.0), 1e-15);
  EXPECT_LT(std::abs(g[-5] - 7.0 * u * u * u / 128.0), 1e-15);
  EXPECT_EQ(g[0], C(0.0));
}

TEST(Series, ZeroPowerIsOne) {
  const LaurentSeries f(kInf, 0, {2.0, 1.0}, true);
  const auto g = pow_rational(f, Rational(0)).to_laurent();
  EXPECT_EQ(max_difference(g, LaurentSeries::constant(kInf, 1.0)), 0.0);
}

TEST(Series, FractionalLeakageIsReported) {
  const auto f = LaurentSeries::monomial(kInf, 3);
  try {
    pow_rational(f, Rational(1, 2)).to_laurent();
    FAIL() << "expected FractionalLeakage";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FractionalLeakage);
  }
}

TEST(Series, LogarithmMercatorSeries) {
  EXPECT_EQ(log_unit(LaurentSeries::constant(kInf, 1.0)).max_abs(), 0.0);
  const LaurentSeries f(kInf, -1, {1.0, 1.0}, true);  // 1 + 1/p
  const auto l = log_unit(f, 10);
  for (int k = 1; k < 10; ++k)
    EXPECT_LT(std::abs(l[-k] - C((k % 2 == 1 ? 1.0 : -1.0) / k)), 1e-15) << k;
  const auto l2 = log_unit(2.0 * f, 10);
  EXPECT_LT(std::abs(l2[0] - std::log(2.0)), 1e-15);
  EXPECT_LT(std::abs(l2[-2] + 0.5), 1e-15);
}

TEST(Series, LogarithmRejectsNonUnit) {
  try {
    log_unit(LaurentSeries::monomial(kInf, 1), 5);
    FAIL() << "expected NonUnitInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnitInput);
  }
}

TEST(Series, ErrorKinds) {
  try {
    (void)(LaurentSeries::monomial(kInf, 1) + LaurentSeries::monomial(kZero, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedPoints);
  }
  try {
    inverse(LaurentSeries::zero(kInf), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroLeadingTerm);
  }
}

// ---------------------------------------------------------------------------
// Properties over random series at the three kinds of point

class SeriesProperties : public ::testing::TestWithParam<MarkedPoint> {};

TEST_P(SeriesProperties, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_series(GetParam(), rng), b = random_series(GetParam(), rng),
               c = random_series(GetParam(), rng);
    EXPECT_LT(max_difference(a + b, b + a), 1e-15);
    EXPECT_LT(max_difference(a * b, b * a), 1e-14);
    EXPECT_LT(max_difference((a * b) * c, a * (b * c)), 1e-13);
    EXPECT_LT(max_difference(a * (b + c), a * b + a * c), 1e-13);
  }
}

TEST_P(SeriesProperties, ProjectionsAreComplementary) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_series(GetParam(), rng);
    for (int k = -3; k <= 3; ++k)
      EXPECT_EQ(max_difference(project(f, k, Side::geq) + project(f, k, Side::lt), f), 0.0);
  }
}

TEST_P(SeriesProperties, TraceOfDerivativeVanishes) {
  std::mt19937_64 rng(13);
  for (int s : {0, 1}) {
    if (s == 1 && GetParam().is_finite()) continue;  // p^s d/dp at v: covered below
    for (int i = 0; i < 30; ++i) {
      const auto f = random_series(GetParam(), rng);
      EXPECT_LT(std::abs(trace(derive(f, s), s)), 1e-13);
    }
  }
}

TEST_P(SeriesProperties, InverseAndPowers) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i) {
    // nonzero leading term: at infinity that is the top power
    const bool inf = GetParam().is_infinity();
    auto f = random_series(GetParam(), rng, inf ? -5 : 0, inf ? 0 : 5);
    f = f + LaurentSeries::constant(GetParam(), 2.0);
    const auto g = inverse(f, 20);
    EXPECT_LT(max_difference(f * g, LaurentSeries::constant(GetParam(), 1.0)), 1e-12);
    const auto sq = pow_rational(f * f, Rational(1, 2), 20).to_laurent(1e-12);
    const auto h = pow_rational(f, Rational(1, 3), 20).to_laurent(1e-12);
    const auto cube = h * h * h;
    // principal branches: the square root of f^2 is +f or -f
    const double plus = max_difference(sq, f), minus = max_difference(sq, -f);
    EXPECT_LT(std::min(plus, minus), 1e-12);
    EXPECT_LT(max_difference(cube, f), 1e-12);
  }
}

TEST_P(SeriesProperties, LogarithmicDerivative) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 20; ++i) {
    // a unit: nonzero constant plus terms of positive valuation
    const bool inf = GetParam().is_infinity();
    const auto f = random_series(GetParam(), rng, inf ? -5 : 1, inf ? -1 : 5) +
                   LaurentSeries::constant(GetParam(), 2.0);
    const auto l = log_unit(f, 20);
    const auto lhs = derive(l, 0);
    const auto rhs = derive(f, 0) * inverse(f, 20);
    EXPECT_LT(max_difference(lhs, rhs), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Points, SeriesProperties, ::testing::Values(kInf, kZero, kV),
                         [](const auto& info) {
                           return info.param.is_infinity() ? std::string("Infinity")
                                  : info.param.is_zero()   ? std::string("Origin")
                                                           : std::string("Finite");
                         });

TEST(Series, TraceOfDerivativeVanishesAtFinitePointWithShift) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_series(kV, rng, -4, 4);
    EXPECT_LT(std::abs(trace(derive(f, 1), 1)), 1e-12);
  }
}

}  // namespace
}  // namespace frob
