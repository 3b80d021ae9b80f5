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

// The weight-1/4 Rota-Baxter operator l and its adjoint l*, the cotangent
// multiplication, the sharp map and the two metrics at one marked point.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "frob/errors.hpp"
#include "frob/meromorphic.hpp"
#include "frob/series.hpp"

namespace frob {

inline constexpr double kRotaBaxterWeight = 0.25;

/// Expansion point, derivation exponent and (optionally) the superpotential
/// whose expansions at that point are cached.
class OperatorContext {
 public:
  OperatorContext(MarkedPoint nu, int s, int depth = 40) : nu_(nu), s_(s), depth_(depth) {
    if (s != 0 && s != 1) throw Error(ErrorKind::InvalidInput, "s must be 0 or 1");
    if (nu.is_finite() && s == 1 && nu.value == Coefficient{})
      throw Error(ErrorKind::CoincidentPoints, "finite marked point at the origin");
  }

  OperatorContext(std::shared_ptr<const ManifoldPoint> mp, MarkedPoint nu, int depth = 0)
      : OperatorContext(nu, mp->spec.s, depth > 0 ? depth : mp->default_depth()) {
    mp_ = std::move(mp);
    bool found = false;
    for (const auto& pt : mp_->marked_points()) found = found || pt == nu_;
    if (!found)
      throw Error(ErrorKind::InadmissibleCase, "point " + nu_.name() + " is not a pole of lambda");
    lambda_ = mp_->lambda.expand_at(nu_, depth_);
    lambda_p_ = mp_->lambda_p.expand_at(nu_, depth_);
    euler_ = mp_->euler_field().expand_at(nu_, depth_);
    for (const auto& x : mp_->tangent) tangent_.push_back(x.expand_at(nu_, depth_));
    const int m = mp_->degree_at(nu_);
    const int N = mp_->dimension();
    const int n = mp_->n();
    if (nu_.is_infinity()) {
      lo_ = 1 - n;
      hi_ = N - n;
    } else {
      lo_ = m - N + 1;
      hi_ = m;
    }
    pairing_.resize(N, N);
    for (int k = 0; k < N; ++k) {
      const auto e = basis(k);
      for (int b = 0; b < N; ++b) pairing_(k, b) = trace(mul(tangent_[b], e), s_);
    }
    pairing_lu_ = Eigen::FullPivLU<Eigen::MatrixXcd>(Eigen::MatrixXcd(pairing_.transpose()));
    if (!pairing_lu_.isInvertible())
      throw Error(ErrorKind::DegeneratePoint, "tangent pairing is singular at " + nu_.name());
  }

  const MarkedPoint& nu() const noexcept { return nu_; }
  int s() const noexcept { return s_; }
  int depth() const noexcept { return depth_; }
  bool bound() const noexcept { return static_cast<bool>(mp_); }

  const ManifoldPoint& manifold() const {
    require_bound();
    return *mp_;
  }
  std::shared_ptr<const ManifoldPoint> manifold_ptr() const { return mp_; }
  const LaurentSeries& lambda() const { return require_bound(), lambda_; }
  const LaurentSeries& lambda_p() const { return require_bound(), lambda_p_; }
  const LaurentSeries& euler() const { return require_bound(), euler_; }
  const std::vector<LaurentSeries>& tangent() const { return require_bound(), tangent_; }

  /// Canonical cotangent window, exponents [lo, hi].
  int window_lo() const { return require_bound(), lo_; }
  int window_hi() const { return require_bound(), hi_; }
  int dimension() const { return manifold().dimension(); }

  /// k-th canonical cotangent monomial (exponent lo + k).
  LaurentSeries basis(int k) const { return LaurentSeries::monomial(nu_, lo_ + k); }

  /// P(k, b) = Tr(X_b e_k)
  const Eigen::MatrixXcd& pairing() const { return require_bound(), pairing_; }

  /// Canonical coefficients of the 1-form whose pairings with the tangent frame are q.
  Eigen::VectorXcd solve_pairings(const Eigen::VectorXcd& q) const {
    require_bound();
    return pairing_lu_.solve(q);
  }

  LaurentSeries p_power(int k) const { return frob::p_power(nu_, k, depth_); }

 private:
  void require_bound() const {
    if (!mp_) throw Error(ErrorKind::InvalidInput, "operator context has no superpotential");
  }

  MarkedPoint nu_;
  int s_;
  int depth_;
  std::shared_ptr<const ManifoldPoint> mp_;
  LaurentSeries lambda_, lambda_p_, euler_;
  std::vector<LaurentSeries> tangent_;
  int lo_ = 0, hi_ = 0;
  Eigen::MatrixXcd pairing_;
  Eigen::FullPivLU<Eigen::MatrixXcd> pairing_lu_;  // of the transpose
};

// ---------------------------------------------------------------------------
// l and l*

/// l(f) = p^s [p^-s f]_{>=0} - f/2, straight from the definition.
inline LaurentSeries ell_definition(const LaurentSeries& f, const OperatorContext& ctx) {
  if (ctx.s() == 0) return project(f, 0, Side::geq) - 0.5 * f;
  return ctx.p_power(1) * project(ctx.p_power(-1) * f, 0, Side::geq) - 0.5 * f;
}

/// Equivalent form at a finite point for s = 1: [f]_{>=1} - f/2 + v [p^-1 f]_0.
inline LaurentSeries ell_shifted_form(const LaurentSeries& f, const OperatorContext& ctx) {
  if (!(ctx.nu().is_finite() && ctx.s() == 1))
    throw Error(ErrorKind::InvalidInput, "shifted form applies to s = 1 at a finite point");
  const Coefficient c0 = (ctx.p_power(-1) * f)[0];
  return project(f, 1, Side::geq) - 0.5 * f +
         LaurentSeries::constant(ctx.nu(), ctx.nu().value * c0);
}

/// l. At a finite point with s = 1 the shifted form is used: it keeps exact
/// inputs exact and avoids the long geometric series of 1/p.
inline LaurentSeries ell(const LaurentSeries& f, const OperatorContext& ctx) {
  if (ctx.s() == 1 && ctx.nu().is_finite()) return ell_shifted_form(f, ctx);
  return ell_definition(f, ctx);
}

/// l*(f) = f/2 - [f]_{>=0}
inline LaurentSeries ell_star(const LaurentSeries& f, const OperatorContext&) {
  return 0.5 * f - project(f, 0, Side::geq);
}

// ---------------------------------------------------------------------------
// Cotangent algebra

using CotangentVector = LaurentSeries;

inline LaurentSeries cotangent_from(const OperatorContext& ctx, const Eigen::VectorXcd& c) {
  std::vector<Coefficient> v(c.data(), c.data() + c.size());
  return LaurentSeries(ctx.nu(), ctx.window_lo(), std::move(v), true);
}

inline Eigen::VectorXcd cotangent_coefficients(const OperatorContext& ctx, const LaurentSeries& a) {
  Eigen::VectorXcd c(ctx.dimension());
  for (int k = 0; k < ctx.dimension(); ++k) c(k) = a[ctx.window_lo() + k];
  return c;
}

/// <mu, X_b> = Tr(X_b mu) for every tangent frame vector.
inline Eigen::VectorXcd tangent_pairings(const LaurentSeries& mu, const OperatorContext& ctx) {
  Eigen::VectorXcd q(ctx.dimension());
  for (int b = 0; b < ctx.dimension(); ++b) q(b) = trace(mul(ctx.tangent()[b], mu), ctx.s());
  return q;
}

/// Canonical representative of the class of mu modulo the annihilator of the tangent space.
inline CotangentVector reduce(const LaurentSeries& mu, const OperatorContext& ctx) {
  const Eigen::VectorXcd q = tangent_pairings(mu, ctx);
  return cotangent_from(ctx, ctx.solve_pairings(q));
}

/// Unprojected product p^s[l_p a]_{>=0} b + p^s a [l_p b]_{>=0} - p^s l_p a b.
inline LaurentSeries circ_full(const LaurentSeries& a, const LaurentSeries& b,
                               const OperatorContext& ctx) {
  const auto& lp = ctx.lambda_p();
  const LaurentSeries ps = ctx.p_power(ctx.s());
  const auto pa = project(lp * a, 0, Side::geq);
  const auto pb = project(lp * b, 0, Side::geq);
  return ps * (pa * b + a * pb - lp * a * b);
}

inline CotangentVector circ(const LaurentSeries& a, const LaurentSeries& b, const OperatorContext& ctx) {
  return reduce(circ_full(a, b, ctx), ctx);
}

/// a^# = p^s[l_p a]_{>=0} - p^s l_p [a]_{>=0} as a series at the point.
inline LaurentSeries sharp_series(const LaurentSeries& a, const OperatorContext& ctx) {
  const auto& lp = ctx.lambda_p();
  const LaurentSeries ps = ctx.p_power(ctx.s());
  return ps * (project(lp * a, 0, Side::geq) - lp * project(a, 0, Side::geq));
}

struct TangentVector {
  Eigen::VectorXcd components;  // in the tangent frame
  double residual = 0.0;        // relative misfit of the frame expansion
};

/// Expands a series in the tangent frame by least squares on the common window.
inline TangentVector tangent_components(const LaurentSeries& x, const OperatorContext& ctx,
                                        double tol = 1e-8) {
  const auto& frame = ctx.tangent();
  const int N = ctx.dimension();
  int v0 = x.valuation(), end = x.exact() ? INT_MAX : x.valuation_end();
  for (const auto& t : frame) {
    v0 = std::min(v0, t.valuation());
    if (!t.exact()) end = std::min(end, t.valuation_end());
  }
  if (end == INT_MAX) {
    end = x.valuation_end();
    for (const auto& t : frame) end = std::max(end, t.valuation_end());
  }
  const int rows = end - v0;
  if (rows < N) throw Error(ErrorKind::InsufficientWindow, "too few coefficients for frame expansion");
  Eigen::MatrixXcd A(rows, N);
  Eigen::VectorXcd rhs(rows);
  for (int r = 0; r < rows; ++r) {
    rhs(r) = x.at_valuation(v0 + r);
    for (int b = 0; b < N; ++b) A(r, b) = frame[b].at_valuation(v0 + r);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(N - 1) <= 1e-13 * sv(0))
    throw Error(ErrorKind::DegeneratePoint, "tangent frame is rank deficient");
  TangentVector out;
  out.components = svd.solve(rhs);
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
  out.residual = (A * out.components - rhs).cwiseAbs().maxCoeff<Eigen::PropagateNaN>() / scale;
  if (out.residual > tol)
    throw Error(ErrorKind::DegeneratePoint,
                "series is not in the tangent space (residual " + std::to_string(out.residual) + ")");
  return out;
}

inline TangentVector sharp(const LaurentSeries& a, const OperatorContext& ctx) {
  return tangent_components(sharp_series(a, ctx), ctx);
}

/// eta*(a, b) = Tr(a^# b)
inline Coefficient metric_eta(const LaurentSeries& a, const LaurentSeries& b, const OperatorContext& ctx) {
  return trace(mul(sharp_series(a, ctx), b), ctx.s());
}

/// g*(a, b) = <E, a o b> with E = lambda - (1/n) p lambda_p
inline Coefficient intersection_g(const LaurentSeries& a, const LaurentSeries& b,
                                  const OperatorContext& ctx) {
  return trace(mul(ctx.euler(), circ_full(a, b, ctx)), ctx.s());
}

// ---------------------------------------------------------------------------
// Residual verifiers

struct ResidualReport {
  std::string identity;
  std::string context;
  double max_residual = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

inline std::string context_name(const OperatorContext& ctx) {
  return "nu=" + ctx.nu().name() + ",s=" + std::to_string(ctx.s());
}

/// Relative size of the known coefficients of `diff`.
inline double relative_residual(const LaurentSeries& diff, double scale) {
  return diff.max_abs() / std::max(scale, 1e-300);
}

struct SampleLaw {
  int lo = -4;
  int hi = 4;
};

inline LaurentSeries random_laurent(const MarkedPoint& nu, std::mt19937_64& rng, SampleLaw law = {}) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Coefficient> c;
  for (int e = law.lo; e <= law.hi; ++e) {
    for (;;) {
      Coefficient z(u(rng), u(rng));
      if (std::norm(z) <= 1.0) {
        c.push_back(z);
        break;
      }
    }
  }
  return LaurentSeries(nu, law.lo, std::move(c), true);
}

namespace detail {

inline ResidualReport sweep(const std::string& name, const OperatorContext& ctx, int samples,
                            std::uint64_t seed, SampleLaw law,
                            const std::function<LaurentSeries(const LaurentSeries&, const LaurentSeries&)>& defect) {
  ResidualReport r{name, context_name(ctx), 0.0, samples, seed};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const auto a = random_laurent(ctx.nu(), rng, law);
    const auto b = random_laurent(ctx.nu(), rng, law);
    const double scale = std::max(a.max_abs(), b.max_abs());
    r.max_residual = worst(r.max_residual, relative_residual(defect(a, b), scale * scale));
  }
  return r;
}

}  // namespace detail

/// l(l(a)b) + l(a l(b)) - l(a)l(b) - ab/4
inline LaurentSeries rota_baxter_defect(const LaurentSeries& a, const LaurentSeries& b,
                                        const OperatorContext& ctx) {
  const auto la = ell(a, ctx), lb = ell(b, ctx);
  return ell(la * b, ctx) + ell(a * lb, ctx) - la * lb - kRotaBaxterWeight * (a * b);
}

/// l(a') + l*(a)'
inline LaurentSeries frel_defect(const LaurentSeries& a, const OperatorContext& ctx) {
  return ell(derive(a, ctx.s()), ctx) + derive(ell_star(a, ctx), ctx.s());
}

/// l*(l*(a)b') + l*(a l*(b)') - l*(a) l*(b)' - k a b'
inline LaurentSeries rel_defect(const LaurentSeries& a, const LaurentSeries& b, const OperatorContext& ctx) {
  const int s = ctx.s();
  const auto ra = ell_star(a, ctx), rb = ell_star(b, ctx);
  const auto db = derive(b, s), drb = derive(rb, s);
  return ell_star(ra * db, ctx) + ell_star(a * drb, ctx) - ra * drb - kRotaBaxterWeight * (a * db);
}

/// l(l*(a)b') - l(a l(b)') - l*(a) l(b)' + k a b'
inline LaurentSeries rel3_defect(const LaurentSeries& a, const LaurentSeries& b, const OperatorContext& ctx) {
  const int s = ctx.s();
  const auto ra = ell_star(a, ctx), lb = ell(b, ctx);
  const auto db = derive(b, s), dlb = derive(lb, s);
  return ell(ra * db, ctx) - ell(a * dlb, ctx) - ra * dlb + kRotaBaxterWeight * (a * db);
}

/// l*(l*(a)b) - l*(a l(b)) + l*(a) l(b) - k a b
inline LaurentSeries drb_defect(const LaurentSeries& a, const LaurentSeries& b, const OperatorContext& ctx) {
  const auto ra = ell_star(a, ctx), lb = ell(b, ctx);
  return ell_star(ra * b, ctx) - ell_star(a * lb, ctx) + ra * lb - kRotaBaxterWeight * (a * b);
}

inline ResidualReport verify_rota_baxter(const OperatorContext& ctx, int samples, std::uint64_t seed,
                                         SampleLaw law = {}) {
  return detail::sweep("rota-baxter", ctx, samples, seed, law,
                       [&](const auto& a, const auto& b) { return rota_baxter_defect(a, b, ctx); });
}

inline ResidualReport verify_frel(const OperatorContext& ctx, int samples, std::uint64_t seed,
                                  SampleLaw law = {}) {
  ResidualReport r{"frel", context_name(ctx), 0.0, samples, seed};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const auto a = random_laurent(ctx.nu(), rng, law);
    // derivatives scale coefficients by up to the largest exponent
    const double scale = a.max_abs() * (std::max(std::abs(law.lo), std::abs(law.hi)) + 1);
    r.max_residual = worst(r.max_residual, relative_residual(frel_defect(a, ctx), scale));
  }
  return r;
}

/// Residuals of the derived relations: rel, rel3 and the dual identity.
inline std::vector<ResidualReport> verify_rel(const OperatorContext& ctx, int samples,
                                              std::uint64_t seed, SampleLaw law = {}) {
  const double dscale = std::max(std::abs(law.lo), std::abs(law.hi)) + 1;
  auto rel = detail::sweep("rel", ctx, samples, seed, law, [&](const auto& a, const auto& b) {
    return (1.0 / dscale) * rel_defect(a, b, ctx);
  });
  auto rel3 = detail::sweep("rel3", ctx, samples, seed, law, [&](const auto& a, const auto& b) {
    return (1.0 / dscale) * rel3_defect(a, b, ctx);
  });
  auto drb = detail::sweep("dual-rota-baxter", ctx, samples, seed, law,
                           [&](const auto& a, const auto& b) { return drb_defect(a, b, ctx); });
  return {rel, rel3, drb};
}

}  // namespace frob
