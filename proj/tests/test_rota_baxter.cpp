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

#include "frob/frobenius.hpp"
#include "frob/rota_baxter.hpp"
#include "test_util.hpp"

namespace frob {
namespace {

using C = Coefficient;
using testing::random_series;

const MarkedPoint kInf = MarkedPoint::infinity();
const MarkedPoint kZero = MarkedPoint::zero();
const MarkedPoint kV = MarkedPoint::finite(1, C(0.6, -0.5));

LaurentSeries mono(const MarkedPoint& pt, int e, C c = 1.0) { return LaurentSeries::monomial(pt, e, c); }

TEST(Ell, Examples) {
  const OperatorContext inf0(kInf, 0);
  const auto f = ell(mono(kInf, 2) + mono(kInf, -1), inf0);
  EXPECT_EQ(f[2], C(0.5));
  EXPECT_EQ(f[-1], C(-0.5));
  EXPECT_EQ(f[0], C(0.0));
  EXPECT_EQ(ell(LaurentSeries::constant(kInf, 1.0), inf0)[0], C(0.5));
  const OperatorContext zero1(kZero, 1);
  const auto g = ell(mono(kZero, -1), zero1);
  EXPECT_EQ(g[-1], C(-0.5));
  EXPECT_EQ(g[0], C(0.0));
}

TEST(EllStar, ExamplesAndAdjointness) {
  const OperatorContext inf0(kInf, 0);
  EXPECT_EQ(ell_star(mono(kInf, 2), inf0)[2], C(-0.5));
  EXPECT_EQ(ell_star(mono(kInf, -1), inf0)[-1], C(0.5));
  const auto a = mono(kInf, 1), b = mono(kInf, -2);
  EXPECT_EQ(trace(ell_star(a, inf0) * b, 0), C(-0.5));
  EXPECT_EQ(trace(a * ell(b, inf0), 0), C(-0.5));
}

struct ContextCase {
  MarkedPoint nu;
  int s;
};

class OperatorProperties : public ::testing::TestWithParam<ContextCase> {};

TEST_P(OperatorProperties, EllStarIsTheTraceAdjoint) {
  const OperatorContext ctx(GetParam().nu, GetParam().s);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_series(ctx.nu(), rng, -4, 4), b = random_series(ctx.nu(), rng, -4, 4);
    EXPECT_LT(std::abs(trace(ell_star(a, ctx) * b, ctx.s()) - trace(a * ell(b, ctx), ctx.s())), 1e-13);
  }
}

TEST_P(OperatorProperties, IdentitiesHoldOnSmallSweeps) {
  const OperatorContext ctx(GetParam().nu, GetParam().s);
  EXPECT_LT(verify_rota_baxter(ctx, 25, 5).max_residual, 1e-12);
  EXPECT_LT(verify_frel(ctx, 25, 6).max_residual, 1e-12);
  for (const auto& r : verify_rel(ctx, 25, 7)) EXPECT_LT(r.max_residual, 1e-12) << r.identity;
}

TEST_P(OperatorProperties, SweepsAreReproducible) {
  const OperatorContext ctx(GetParam().nu, GetParam().s);
  const auto a = verify_rota_baxter(ctx, 10, 42), b = verify_rota_baxter(ctx, 10, 42);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.context, b.context);
}

INSTANTIATE_TEST_SUITE_P(Contexts, OperatorProperties,
                         ::testing::Values(ContextCase{kInf, 0}, ContextCase{kInf, 1}, ContextCase{kZero, 0},
                                           ContextCase{kZero, 1}, ContextCase{kV, 0}, ContextCase{kV, 1}),
                         [](const auto& info) {
                           return info.param.nu.name() + "_s" + std::to_string(info.param.s);
                         });

TEST(Ell, ShiftedFormMatchesDefinitionAtMovablePoint) {
  // the definition builds coefficients of size |v|^-depth and cancels them
  // down to O(1); at depth 30 that is about 6e2, so 1e-10 is still tight
  const OperatorContext ctx(kV, 1, 30);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_series(kV, rng, -4, 4);
    EXPECT_LT(max_difference(ell_definition(f, ctx), ell_shifted_form(f, ctx)), 1e-10);
  }
}

TEST(RotaBaxter, HandExpansions) {
  const OperatorContext inf0(kInf, 0);
  // a = p, b = 1/p: both sides equal ab/4
  EXPECT_LT(rota_baxter_defect(mono(kInf, 1), mono(kInf, -1), inf0).max_abs(), 1e-15);
  const auto one = LaurentSeries::constant(kInf, 1.0);
  EXPECT_LT(rota_baxter_defect(one, one, inf0).max_abs(), 1e-15);
  const auto ell_one = ell(one, inf0);
  EXPECT_EQ((ell(ell_one * one + one * ell_one, inf0) - ell_one * ell_one)[0], C(0.25));
}

TEST(Relations, HandExpansions) {
  const OperatorContext zero1(kZero, 1), inf0(kInf, 0);
  EXPECT_LT(frel_defect(mono(kZero, -1), zero1).max_abs(), 1e-15);
  EXPECT_LT(rel_defect(mono(kInf, 1), mono(kInf, 1), inf0).max_abs(), 1e-15);
  const auto one = LaurentSeries::constant(kInf, 1.0);
  EXPECT_LT(drb_defect(one, one, inf0).max_abs(), 1e-15);
}

TEST(Relations, MixedRelationCarriesNegativeWeight) {
  // a = 1, b = p at infinity, s = 0: l(l*(a) b') - l(a l(b)') - l*(a) l(b)' = -1/4
  const OperatorContext inf0(kInf, 0);
  const auto a = LaurentSeries::constant(kInf, 1.0), b = mono(kInf, 1);
  const auto db = derive(b, 0), dlb = derive(ell(b, inf0), 0);
  const auto lhs = ell(ell_star(a, inf0) * db, inf0) - ell(a * dlb, inf0) - ell_star(a, inf0) * dlb;
  EXPECT_EQ(lhs[0], C(-0.25));
  EXPECT_LT(rel3_defect(a, b, inf0).max_abs(), 1e-15);
}

// ---------------------------------------------------------------------------
// Cotangent algebra bound to a superpotential

struct Bound {
  std::shared_ptr<const ManifoldPoint> mp;
  OperatorContext ctx;
};

Bound bound(const std::string& example, const MarkedPoint& which) {
  const auto& ex = testing::example(example);
  auto mp = testing::example_point(ex, ex.reference);
  MarkedPoint nu = which;
  if (nu.is_finite()) nu = mp->marked_points().back();
  return {mp, OperatorContext(mp, nu)};
}

class AlgebraProperties : public ::testing::TestWithParam<std::pair<std::string, MarkedPoint>> {};

TEST_P(AlgebraProperties, CommutativeAssociativeInvariant) {
  const auto b = bound(GetParam().first, GetParam().second);
  const auto& ctx = b.ctx;
  const int N = ctx.dimension();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto cot = [&] {
    Eigen::VectorXcd c(N);
    for (int k = 0; k < N; ++k) c(k) = C(u(rng), u(rng));
    return cotangent_from(ctx, c);
  };
  for (int i = 0; i < 5; ++i) {
    const auto x = cot(), y = cot(), z = cot();
    EXPECT_LT(max_difference(circ(x, y, ctx), circ(y, x, ctx)), 1e-10);
    EXPECT_LT(max_difference(circ(circ(x, y, ctx), z, ctx), circ(x, circ(y, z, ctx), ctx)), 1e-9);
    EXPECT_LT(std::abs(metric_eta(circ(x, y, ctx), z, ctx) - metric_eta(x, circ(y, z, ctx), ctx)), 1e-9);
    EXPECT_LT(std::abs(metric_eta(x, y, ctx) - metric_eta(y, x, ctx)), 1e-10);
    EXPECT_LT(std::abs(intersection_g(x, y, ctx) - intersection_g(y, x, ctx)), 1e-10);
  }
}

TEST_P(AlgebraProperties, SharpOfCounityIsTheUnit) {
  const auto b = bound(GetParam().first, GetParam().second);
  const auto chart = flat_coordinates(b.mp);
  const auto ft = structure_constants(chart, b.ctx);
  const auto unit = unit_field(ft, b.mp->spec);
  LaurentSeries eps = LaurentSeries::zero(b.ctx.nu());
  for (int a = 0; a < chart.dimension(); ++a) eps = eps + scale(ft.differentials[a], unit.counity(a));
  const Eigen::VectorXcd e_flat = chart.jacobian * sharp(eps, b.ctx).components;
  EXPECT_LT((e_flat - unit.components).cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), 1e-9);
  EXPECT_LT(unit_action_residual(unit, ft, b.ctx), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(
    Examples, AlgebraProperties,
    ::testing::Values(std::pair{std::string("a3"), kInf}, std::pair{std::string("p1"), kZero},
                      std::pair{std::string("two-poles"), kV}, std::pair{std::string("toda3"), kV},
                      std::pair{std::string("nonflat"), kInf}),
    [](const auto& info) {
      std::string n = info.param.first + "_" + info.param.second.name();
      for (auto& ch : n)
        if (ch == '-') ch = '_';
      return n;
    });

TEST(IntersectionForm, SameValueFromBothPoints) {
  const auto& ex = testing::example("p1");
  const auto mp = testing::example_point(ex, ex.reference);
  const auto chart = flat_coordinates(mp);
  const OperatorContext at_inf(mp, kInf), at_zero(mp, kZero);
  const auto dt_inf = transfer_differentials(chart, at_inf);
  const auto dt_zero = transfer_differentials(chart, at_zero);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      EXPECT_LT(std::abs(intersection_g(dt_inf[a], dt_inf[b], at_inf) - intersection_g(dt_zero[a], dt_zero[b], at_zero)),
                1e-10);
}

TEST(IntersectionForm, PencilWithTheFlatMetricIsNondegenerate) {
  const auto& ex = testing::example("a3");
  const auto mp = testing::example_point(ex, ex.reference);
  const OperatorContext ctx(mp, kInf);
  const int N = ctx.dimension();
  Eigen::MatrixXcd G(N, N), H(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      G(a, b) = intersection_g(ctx.basis(a), ctx.basis(b), ctx);
      H(a, b) = metric_eta(ctx.basis(a), ctx.basis(b), ctx);
    }
  EXPECT_LT((G - G.transpose()).cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), 1e-12);
  EXPECT_GT(std::abs((G + C(0.37, 0.11) * H).determinant()), 1e-8);
}

TEST(OperatorContext, RejectsPointsThatAreNotPoles) {
  const auto& ex = testing::example("a3");
  const auto mp = testing::example_point(ex, ex.reference);
  try {
    OperatorContext ctx(mp, kZero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InadmissibleCase);
  }
}

}  // namespace
}  // namespace frob
