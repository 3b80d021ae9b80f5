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

#include "frob/meromorphic.hpp"
#include "test_util.hpp"

namespace frob {
namespace {

using C = Coefficient;

const MarkedPoint kInf = MarkedPoint::infinity();
const MarkedPoint kZero = MarkedPoint::zero();

TEST(Admissibility, Classification) {
  EXPECT_EQ(validate({0, 4, 0, {}}).kind, Admissibility::FlatUnit);
  EXPECT_EQ(validate({0, 3, 0, {1, 1}}).kind, Admissibility::FlatUnit);
  EXPECT_EQ(validate({1, 1, -1, {1}}).kind, Admissibility::NonflatUnit);
  EXPECT_EQ(validate({0, 4, 2, {}}).kind, Admissibility::Inadmissible);
  EXPECT_EQ(validate({0, 4, 1, {}}).kind, Admissibility::Inadmissible);
  EXPECT_EQ(validate({1, 2, 0, {}}).kind, Admissibility::Inadmissible);
  EXPECT_EQ(validate({0, 1, 0, {1}}).kind, Admissibility::Inadmissible);  // n = 0
  EXPECT_EQ(validate({2, 1, 0, {}}).kind, Admissibility::Inadmissible);
  const auto r = validate({1, 2, 1, {}});
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(r.dimension, 2);
}

TEST(BuildLambda, FactoredFormAgainstExpandedForm) {
  const C a1(0.3, 0.2), a2(-0.7, 0.5);
  const SuperpotentialSpec spec{1, 2, 1, {}};
  const auto lambda = build_lambda(spec, {{a1, a2}, {}});
  const C u = -a1 - a2, v = a1 * a2;
  for (C p : {C(0.4, 1.1), C(-2.0, 0.3), C(3.0, -1.0)})
    EXPECT_LT(std::abs(lambda(p) - (p + u + v / p)), 1e-14);
}

TEST(BuildLambda, DegenerateLinearCase) {
  const SuperpotentialSpec spec{0, 1, 0, {}};
  EXPECT_EQ(validate(spec).dimension, 0);
  const auto lambda = build_lambda(spec, {{0.0}, {}});
  EXPECT_EQ(lambda(C(2.5, 1.0)), C(2.5, 1.0));
}

TEST(BuildLambda, DoublePoleShapeFromPartialFractions) {
  const auto& ex = testing::example("double-pole");
  const std::vector<C> t{C(0.3, 0.1), C(0.9, 0.1), C(0.5, -0.2)};
  const auto raw = raw_from_partial_fractions(ex.spec, ex.fractions(t));
  const auto lambda = build_lambda(ex.spec, raw);
  for (C p : {C(2.0, 1.0), C(-1.0, 0.5), C(0.1, -2.0)}) {
    const C expected = p + t[2] / (p - t[0]) + t[1] * t[1] / ((p - t[0]) * (p - t[0]));
    EXPECT_LT(std::abs(lambda(p) - expected), 1e-12);
  }
}

TEST(BuildLambda, RejectsCoincidentAndUnnormalized) {
  const SuperpotentialSpec spec{0, 3, 0, {1, 1}};
  try {
    build_lambda(spec, {{0.5, 0.5, -0.4}, {0.3, 0.3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CoincidentPoints);
  }
  try {
    build_lambda(spec, {{0.5, 0.1, 0.2}, {0.3, 0.7}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NormalizationViolated);
  }
}

TEST(Expansion, AlreadyLaurentAtInfinity) {
  const C a1(0.3, 0.2), a2(-0.7, 0.5);
  const auto lambda = build_lambda({1, 2, 1, {}}, {{a1, a2}, {}});
  const auto f = lambda.expand_at(kInf, 6);
  EXPECT_LT(std::abs(f[1] - 1.0), 1e-15);
  EXPECT_LT(std::abs(f[0] + a1 + a2), 1e-15);
  EXPECT_LT(std::abs(f[-1] - a1 * a2), 1e-15);
  EXPECT_LT(std::abs(f[-2]), 1e-15);
}

TEST(Expansion, PolynomialDivisionAtOrigin) {
  const C a1(0.3, 0.2), a2(-0.7, 0.5);
  const auto lambda = build_lambda({1, 2, 1, {}}, {{a1, a2}, {}});
  const auto f = lambda.expand_at(kZero, 6);
  EXPECT_LT(std::abs(f[-1] - a1 * a2), 1e-15);
  EXPECT_LT(std::abs(f[0] + a1 + a2), 1e-15);
  EXPECT_LT(std::abs(f[1] - 1.0), 1e-15);
  EXPECT_LT(std::abs(f[2]), 1e-15);
}

TEST(Expansion, RearrangementAtMovablePole) {
  const C a(0.8, -0.3), v(0.4, 0.6);
  const RationalFunction lambda = RationalFunction::monomial(0.0, 1) + RationalFunction::monomial(v, -1, a);
  const auto f = lambda.expand_at(MarkedPoint::finite(1, v), 4);
  EXPECT_LT(std::abs(f[-1] - a), 1e-15);
  EXPECT_LT(std::abs(f[0] - v), 1e-15);
  EXPECT_LT(std::abs(f[1] - 1.0), 1e-15);
}

TEST(Expansion, AgreesWithEvaluationNearThePoint) {
  std::mt19937_64 rng(3);
  const SuperpotentialSpec spec{1, 3, 1, {1}};
  const auto raw = sample_raw(spec, rng);
  const auto mp = ManifoldPoint::make(spec, raw);
  for (const auto& pt : mp->marked_points()) {
    const auto f = mp->lambda.expand_at(pt, 40);
    const C z = pt.is_infinity() ? C(0.02, 0.01) : C(0.003, -0.002);  // uniformizer value
    const C p = pt.is_infinity() ? 1.0 / z : pt.location() + z;
    C sum{};
    for (int e = f.lo(); e <= f.hi(); ++e) sum += f[e] * std::pow(pt.is_infinity() ? p : z, e);
    EXPECT_LT(std::abs(sum - mp->lambda(p)) / std::abs(mp->lambda(p)), 1e-12) << pt.name();
  }
}

TEST(Derivative, Examples) {
  const auto sq = RationalFunction::monomial(0.0, 2);
  EXPECT_LT(std::abs(lambda_p(sq)(C(1.5, 0.5)) - 2.0 * C(1.5, 0.5)), 1e-15);
  const C v(0.4, -0.2), p(1.3, 0.9);
  EXPECT_LT(std::abs(lambda_p(RationalFunction::monomial(v, -1))(p) + 1.0 / ((p - v) * (p - v))), 1e-14);
  const C a1(0.3, 0.2), a2(-0.7, 0.5);
  const auto lambda = build_lambda({1, 2, 1, {}}, {{a1, a2}, {}});
  EXPECT_LT(std::abs(lambda_p(lambda)(p) - (1.0 - a1 * a2 / (p * p))), 1e-14);
}

TEST(TangentBasis, DimensionAndDifferences) {
  for (const auto& spec : {SuperpotentialSpec{0, 3, 0, {2}}, SuperpotentialSpec{1, 5, 2, {1}},
                           SuperpotentialSpec{0, 3, 0, {1, 1}}, SuperpotentialSpec{1, 1, -1, {1}}}) {
    std::mt19937_64 rng(5);
    const auto raw = sample_raw(spec, rng);
    const auto basis = tangent_basis(spec, raw);
    ASSERT_EQ(static_cast<int>(basis.size()), spec.dimension());
    const auto x = raw.independent(spec);
    const C p(1.7, -0.8);
    for (int b = 0; b < spec.dimension(); ++b) {
      const double h = 1e-5;
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(b)] += h;
      xm[static_cast<std::size_t>(b)] -= h;
      const C fd = (build_lambda(spec, RawCoordinates::from_independent(spec, xp))(p) -
                    build_lambda(spec, RawCoordinates::from_independent(spec, xm))(p)) /
                   (2.0 * h);
      EXPECT_LT(std::abs(fd - basis[static_cast<std::size_t>(b)](p)), 1e-8);
    }
  }
}

TEST(ResidueTheorem, SumOverAllPolesVanishes) {
  std::mt19937_64 rng(9);
  for (const auto& spec : {SuperpotentialSpec{0, 3, 0, {2}}, SuperpotentialSpec{1, 5, 2, {1}},
                           SuperpotentialSpec{0, 4, 0, {1, 1, 1}}}) {
    const auto mp = ManifoldPoint::make(spec, sample_raw(spec, rng));
    // lambda^2 times 1/p when s = 1 has poles only at the marked points
    RationalFunction f = mp->lambda * mp->lambda;
    if (spec.s == 1) f = RationalFunction::monomial(0.0, -1) * f;
    C total{};
    for (const auto& pt : mp->marked_points()) total += residue(f.expand_at(pt, 30));
    EXPECT_LT(std::abs(total), 1e-10);
  }
}

TEST(PartialFractions, RoundTripForEveryExample) {
  for (const auto& ex : examples()) {
    const auto raw = raw_from_partial_fractions(ex.spec, ex.fractions(ex.reference));
    const auto lambda = build_lambda(ex.spec, raw);
    const auto pf = ex.fractions(ex.reference);
    for (C p : {C(2.1, 0.7), C(-1.4, 1.9)}) {
      C expected{};
      for (std::size_t k = pf.polynomial.size(); k-- > 0;) expected = expected * p + pf.polynomial[k];
      for (std::size_t j = 0; j < pf.origin.size(); ++j) expected += pf.origin[j] * std::pow(p, -static_cast<int>(j) - 1);
      for (const auto& pole : pf.poles)
        for (std::size_t j = 0; j < pole.principal.size(); ++j)
          expected += pole.principal[j] * std::pow(p - pole.location, -static_cast<int>(j) - 1);
      EXPECT_LT(std::abs(lambda(p) - expected), 1e-11) << ex.name;
    }
  }
}

TEST(PartialFractions, RejectsMalformedInput) {
  const SuperpotentialSpec spec{1, 2, 1, {}};
  try {
    raw_from_partial_fractions(spec, {{0.3, 2.0}, {0.5}, {}});  // not monic
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Sampling, ProducesSeparatedNormalizedPoints) {
  std::mt19937_64 rng(21);
  const SuperpotentialSpec spec{0, 3, 0, {1, 1}};
  for (int i = 0; i < 20; ++i) EXPECT_NO_THROW(check_coordinates(spec, sample_raw(spec, rng), {0.2, 1e-10}));
}

}  // namespace
}  // namespace frob
