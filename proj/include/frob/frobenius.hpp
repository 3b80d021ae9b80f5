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

// Flat coordinates, Euler and unit fields, H-densities, the prepotential and
// the structure constants of the Frobenius manifold of a superpotential.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "frob/errors.hpp"
#include "frob/meromorphic.hpp"
#include "frob/rational.hpp"
#include "frob/rota_baxter.hpp"
#include "frob/series.hpp"
#include "frob/tensor.hpp"

namespace frob {

/// Logarithms continued from the argument recorded on first use of a key.
/// A chart built at a base point records its branches; charts at nearby
/// points reuse the record so no cut is crossed between them.
class BranchMap {
 public:
  Coefficient log(const std::string& key, Coefficient c) {
    if (c == Coefficient{}) throw Error(ErrorKind::BranchAmbiguity, "logarithm of zero (" + key + ")");
    double arg = std::arg(c);
    auto it = ref_.find(key);
    if (it == ref_.end()) {
      ref_.emplace(key, arg);
    } else {
      const double turns = std::round((it->second - arg) / (2.0 * std::numbers::pi));
      arg += 2.0 * std::numbers::pi * turns;
    }
    return {std::log(std::abs(c)), arg};
  }

  const std::map<std::string, double>& recorded() const noexcept { return ref_; }

 private:
  std::map<std::string, double> ref_;
};

struct FlatLabel {
  MarkedPoint nu;
  int index = 0;
  int order = 0;  // n at infinity, pole order elsewhere

  bool is_log() const noexcept { return !nu.is_infinity() && index == order; }
  Rational exponent() const { return Rational(index, order); }
  std::string name() const { return "t^" + std::to_string(index) + "_" + nu.name(); }
};

/// Labels ordered by point (infinity, origin, v_1..v_K), index descending at
/// infinity and ascending elsewhere.
inline std::vector<FlatLabel> flat_labels(const ManifoldPoint& mp) {
  std::vector<FlatLabel> out;
  const int n = mp.n();
  for (int i = n - 1; i >= 1; --i) out.push_back({MarkedPoint::infinity(), i, n});
  for (const auto& pt : mp.marked_points()) {
    if (pt.is_infinity()) continue;
    const int m = mp.degree_at(pt);
    for (int j = 0; j <= m; ++j) out.push_back({pt, j, m});
  }
  return out;
}

namespace detail {

inline std::string lead_key(const MarkedPoint& pt) { return "lead:" + pt.name(); }

/// Expansions of lambda at the points used by traces, built once per chart.
class Expansions {
 public:
  Expansions(std::shared_ptr<const ManifoldPoint> mp, int depth) : mp_(std::move(mp)), depth_(depth) {}

  const ManifoldPoint& manifold() const { return *mp_; }
  int depth() const noexcept { return depth_; }

  const LaurentSeries& lambda(const MarkedPoint& pt) {
    auto key = pt.name();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, mp_->lambda.expand_at(pt, depth_)).first;
    return it->second;
  }

  /// Log of the leading coefficient of lambda at a pole, branch-continued.
  Coefficient log_leading(const MarkedPoint& pt, BranchMap& br) {
    if (pt.is_infinity()) return 0.0;  // lambda is monic
    const auto& l = lambda(pt);
    const auto w = l.leading_valuation();
    if (!w) throw Error(ErrorKind::BranchAmbiguity, "vanishing leading coefficient at " + pt.name());
    return br.log(lead_key(pt), l.at_valuation(*w));
  }

  /// lambda^q at a pole with the recorded branch.
  LaurentSeries power(const MarkedPoint& pt, Rational q, BranchMap& br) {
    if (q.is_integer() && q.num() >= 0) {
      LaurentSeries acc = LaurentSeries::constant(pt, 1.0);
      for (std::int64_t i = 0; i < q.num(); ++i) acc = mul(acc, lambda(pt));
      return acc;
    }
    const Coefficient lg = log_leading(pt, br);
    return pow_rational(lambda(pt), q, depth_, lg).to_laurent(1e-12);
  }

 private:
  std::shared_ptr<const ManifoldPoint> mp_;
  int depth_;
  std::map<std::string, LaurentSeries> cache_;
};

/// Tr_v(lambda^mu log lambda) + (m/n) Tr_inf(lambda^mu log lambda) for the pole
/// `pt`, split into single-valued pieces: the unit-part logarithm at the pole,
/// the unit-part logarithm at infinity and the log(p - v) terms traced at the
/// remaining finite singular points.
inline Coefficient log_trace(Expansions& ex, const MarkedPoint& pt, int mu, BranchMap& br) {
  const ManifoldPoint& mp = ex.manifold();
  const int s = mp.spec.s;
  const int n = mp.n();
  const int m = mp.degree_at(pt);
  const int D = ex.depth();
  const Coefficient v = pt.location();

  // Tr_v(lambda^mu log[(p - v)^m lambda])
  const auto& lv = ex.lambda(pt);
  const LaurentSeries unit_v =
      LaurentSeries::from_valuations(pt, lv.valuation() + m, lv.data(), lv.exact());
  const LaurentSeries log_v = log_unit(unit_v, D, ex.log_leading(pt, br));
  const Coefficient at_pole = trace(mul(ex.power(pt, Rational(mu), br), log_v), s);

  // (m/n) Tr_inf(lambda^mu log[(p - v)^-n lambda])
  const MarkedPoint inf = MarkedPoint::infinity();
  const LaurentSeries unit_inf = mul(ex.lambda(inf), detail::factor_series(inf, v, -n, D));
  const LaurentSeries log_inf = log_unit(unit_inf, D, Coefficient{});
  const Coefficient at_inf = trace(mul(ex.power(inf, Rational(mu), br), log_inf), s);

  // m sum_j Tr_{v_j}(lambda^mu log(p - v)) over the other finite singular points
  std::vector<MarkedPoint> others;
  if (s == 1 && !pt.is_zero()) others.push_back(MarkedPoint::zero());
  for (const auto& q : mp.marked_points())
    if (q.is_finite() && !(q == pt)) others.push_back(q);
  Coefficient i0{};
  for (const auto& q : others) {
    const Coefficient gap = q.location() - v;
    const LaurentSeries lin = LaurentSeries::from_valuations(q, 0, {gap, 1.0}, true);
    const Coefficient lg = br.log("gap:" + q.name() + ":" + pt.name(), gap);
    const LaurentSeries log_q = log_unit(lin, D, lg);
    LaurentSeries lam_mu = LaurentSeries::constant(q, 1.0);
    for (int i = 0; i < mu; ++i) lam_mu = mul(lam_mu, ex.lambda(q));
    i0 += trace(mul(lam_mu, log_q), s);
  }
  return at_pole + static_cast<double>(m) / static_cast<double>(n) * at_inf +
         static_cast<double>(m) * i0;
}

inline double harmonic(int k) {
  double h = 0.0;
  for (int i = 1; i <= k; ++i) h += 1.0 / i;
  return h;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline Coefficient h_density_impl(Expansions& ex, const FlatLabel& label, int level, BranchMap& br) {
  if (level < 0 || level > 3)
    throw Error(ErrorKind::UnsupportedLevel, "H-density level " + std::to_string(level) + " not in 0..3");
  const ManifoldPoint& mp = ex.manifold();
  const int s = mp.spec.s;
  if (label.is_log()) {
    // lambda^l / l! (log lambda - H_l)
    const Coefficient logs = log_trace(ex, label.nu, level, br);
    Coefficient plain{};
    if (level > 0) {
      const double ratio = static_cast<double>(label.order) / mp.n();
      plain = trace(ex.power(label.nu, Rational(level), br), s) +
              ratio * trace(ex.power(MarkedPoint::infinity(), Rational(level), br), s);
    }
    return (logs - harmonic(level) * plain) / factorial(level);
  }
  // lambda^(l+1-q) / prod_{r=1..l+1} (r - q)
  const Rational q = label.exponent();
  Rational denom(1);
  for (int r = 1; r <= level + 1; ++r) denom = denom * (Rational(r) - q);
  const Rational power = Rational(level + 1) - q;
  return trace(ex.power(label.nu, power, br), s) / denom.to_double();
}

}  // namespace detail

struct ChartOptions {
  bool differentials = true;
  bool jacobian = true;
  int depth = 0;  // 0: manifold default
};

struct FlatChart {
  std::shared_ptr<const ManifoldPoint> point;
  std::vector<FlatLabel> labels;
  std::vector<Coefficient> values;
  std::vector<LaurentSeries> differentials;  // each at its own label's point
  Eigen::MatrixXcd jacobian;                 // d t^a / d x_b over free raw coordinates
  BranchMap branches;
  int depth = 0;

  int dimension() const noexcept { return static_cast<int>(labels.size()); }
  int label_index(const MarkedPoint& nu, int index) const {
    for (int a = 0; a < dimension(); ++a)
      if (labels[a].nu == nu && labels[a].index == index) return a;
    throw Error(ErrorKind::InvalidInput, "no flat label t^" + std::to_string(index) + "_" + nu.name());
  }
};

/// dt^i_inf = [lambda^(-i/n)]_{>=1-n}, dt^j_v = [lambda^(-j/m)]_{<=m}
inline LaurentSeries flat_differential(detail::Expansions& ex, const FlatLabel& label, BranchMap& br) {
  const MarkedPoint& pt = label.nu;
  const LaurentSeries pw = label.is_log() ? inverse(ex.lambda(pt), ex.depth())
                                          : ex.power(pt, -label.exponent(), br);
  if (pt.is_infinity()) return project(pw, 1 - label.order, Side::geq);
  return project(pw, label.order + 1, Side::lt);
}

inline FlatChart flat_coordinates(std::shared_ptr<const ManifoldPoint> mp, BranchMap branches = {},
                                  ChartOptions opt = {}) {
  FlatChart chart;
  chart.point = mp;
  chart.labels = flat_labels(*mp);
  chart.depth = opt.depth > 0 ? opt.depth : mp->default_depth();
  detail::Expansions ex(mp, chart.depth);
  const int s = mp->spec.s;
  for (const auto& label : chart.labels) {
    if (label.is_log()) {
      chart.values.push_back(detail::log_trace(ex, label.nu, 0, branches));
    } else {
      const Rational w = Rational(1) - label.exponent();
      chart.values.push_back(trace(ex.power(label.nu, w, branches), s) / w.to_double());
    }
  }
  if (opt.differentials || opt.jacobian) {
    for (const auto& label : chart.labels)
      chart.differentials.push_back(flat_differential(ex, label, branches));
  }
  if (opt.jacobian) {
    const int N = chart.dimension();
    chart.jacobian.resize(N, N);
    std::map<std::string, std::vector<LaurentSeries>> frames;
    for (int a = 0; a < N; ++a) {
      const auto& pt = chart.labels[a].nu;
      auto it = frames.find(pt.name());
      if (it == frames.end()) {
        std::vector<LaurentSeries> fr;
        for (const auto& x : mp->tangent) fr.push_back(x.expand_at(pt, chart.depth));
        it = frames.emplace(pt.name(), std::move(fr)).first;
      }
      for (int b = 0; b < N; ++b)
        chart.jacobian(a, b) = trace(mul(it->second[b], chart.differentials[a]), s);
    }
  }
  chart.branches = std::move(branches);
  return chart;
}

inline std::vector<LaurentSeries> flat_differentials(std::shared_ptr<const ManifoldPoint> mp) {
  return flat_coordinates(std::move(mp), {}, {true, false, 0}).differentials;
}

/// Central differences of the flat coordinates in the free raw coordinates.
inline Eigen::MatrixXcd jacobian_finite_difference(const FlatChart& chart, double rel_step = 1e-6) {
  const auto& mp = *chart.point;
  const auto x0 = mp.raw.independent(mp.spec);
  const int N = chart.dimension();
  Eigen::MatrixXcd J(N, N);
  for (int b = 0; b < N; ++b) {
    const double h = rel_step * std::max(1.0, std::abs(x0[b]));
    auto values_at = [&](double sign) {
      auto x = x0;
      x[b] += sign * h;
      auto p = ManifoldPoint::make(mp.spec, RawCoordinates::from_independent(mp.spec, x));
      return flat_coordinates(p, chart.branches, {false, false, chart.depth}).values;
    };
    const auto plus = values_at(1.0), minus = values_at(-1.0);
    for (int a = 0; a < N; ++a) J(a, b) = (plus[a] - minus[a]) / (2.0 * h);
  }
  return J;
}

/// Analytic Jacobian, cross-checked against finite differences.
inline Eigen::MatrixXcd jacobian(const FlatChart& chart, double tol = 1e-6) {
  const Eigen::MatrixXcd fd = jacobian_finite_difference(chart);
  const double scale = std::max(1.0, chart.jacobian.cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
  const double err = (fd - chart.jacobian).cwiseAbs().maxCoeff<Eigen::PropagateNaN>() / scale;
  if (err > tol)
    throw Error(ErrorKind::JacobianMismatch, "analytic and finite-difference Jacobians differ by " +
                                                 std::to_string(err));
  return chart.jacobian;
}

// ---------------------------------------------------------------------------
// Euler field

struct EulerData {
  std::vector<Rational> weights;  // E^a = weight_a t^a + shift_a
  std::vector<Rational> shifts;
  Rational d;
  double numeric_residual = 0.0;  // against Tr(dt^a E)

  Rational charge() const { return Rational(3) - d; }
};

inline EulerData euler_weights(const SuperpotentialSpec& spec, const std::vector<FlatLabel>& labels) {
  EulerData e;
  const int s = spec.s, n = spec.n();
  const Rational base((1 - s), n);
  e.d = Rational(1) + Rational(2 * (s - 1), n);
  for (const auto& l : labels) {
    if (l.nu.is_infinity()) {
      e.weights.push_back(base + Rational(n - l.index, n));
      e.shifts.push_back(0);
    } else if (!l.is_log()) {
      e.weights.push_back(base + Rational(l.order - l.index, l.order));
      e.shifts.push_back(0);
    } else if (s == 0) {
      e.weights.push_back(Rational(1, n));
      e.shifts.push_back(0);
    } else {
      e.weights.push_back(0);
      e.shifts.push_back(l.nu.is_zero() ? Rational(spec.m0, n) + Rational(1) : Rational(l.order, n));
    }
  }
  return e;
}

inline Eigen::VectorXcd euler_vector(const EulerData& e, const std::vector<Coefficient>& t) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(t.size()));
  for (std::size_t a = 0; a < t.size(); ++a)
    v(static_cast<Eigen::Index>(a)) = e.weights[a].to_double() * t[a] + e.shifts[a].to_double();
  return v;
}

/// Euler data of the chart, checked against E = lambda - (1/n) p lambda_p.
inline EulerData euler_components(const FlatChart& chart, double tol = 1e-9) {
  const auto& mp = *chart.point;
  EulerData e = euler_weights(mp.spec, chart.labels);
  const RationalFunction E = mp.euler_field();
  const Eigen::VectorXcd expected = euler_vector(e, chart.values);
  for (int a = 0; a < chart.dimension(); ++a) {
    const auto series = E.expand_at(chart.labels[a].nu, chart.depth);
    const Coefficient got = trace(mul(series, chart.differentials[a]), mp.spec.s);
    const double err = std::abs(got - expected(a)) / std::max(1.0, std::abs(expected(a)));
    e.numeric_residual = worst(e.numeric_residual, err);
  }
  if (e.numeric_residual > tol)
    throw Error(ErrorKind::EulerMismatch,
                "Euler components differ from the linear form by " + std::to_string(e.numeric_residual));
  return e;
}

// ---------------------------------------------------------------------------
// H-densities and the prepotential

inline Coefficient h_density(const FlatChart& chart, const FlatLabel& label, int level) {
  if (level == 0) {
    for (int a = 0; a < chart.dimension(); ++a)
      if (chart.labels[a].nu == label.nu && chart.labels[a].index == label.index) return chart.values[a];
  }
  detail::Expansions ex(chart.point, chart.depth);
  BranchMap br = chart.branches;
  return detail::h_density_impl(ex, label, level, br);
}

/// F = 1/(3-d) [ (1/n) sum_i E^i_inf H^{inf,n-i}_1 + sum_k (1/m_k) sum_j E^j_k H^{k,m_k-j}_1 ]
inline Coefficient prepotential(const FlatChart& chart) {
  const auto& mp = *chart.point;
  const EulerData e = euler_weights(mp.spec, chart.labels);
  if (e.d == Rational(3)) throw Error(ErrorKind::WeightThree, "prepotential undefined for d = 3");
  const Eigen::VectorXcd E = euler_vector(e, chart.values);
  detail::Expansions ex(chart.point, chart.depth);
  BranchMap br = chart.branches;
  Coefficient acc{};
  for (int a = 0; a < chart.dimension(); ++a) {
    const FlatLabel& l = chart.labels[a];
    const FlatLabel dual{l.nu, l.order - l.index, l.order};
    const Coefficient h = detail::h_density_impl(ex, dual, 1, br);
    acc += E(a) * h / static_cast<double>(l.order);
  }
  return acc / e.charge().to_double();
}

// ---------------------------------------------------------------------------
// Structure constants

struct FrobeniusTensors {
  MarkedPoint working;
  std::vector<LaurentSeries> differentials;  // dt^a represented at the working point
  Eigen::MatrixXcd eta_upper;                // eta*(dt^a, dt^b)
  Eigen::MatrixXcd eta_lower;
  Tensor3 c_upper;  // eta*(dt^a o dt^b, dt^c)
  Tensor3 c_lower;  // c_abc = d^3 F / dt^a dt^b dt^c
};

/// Flat differentials carried to the canonical window at `ctx`.
inline std::vector<LaurentSeries> transfer_differentials(const FlatChart& chart, const OperatorContext& ctx) {
  std::vector<LaurentSeries> out;
  for (int a = 0; a < chart.dimension(); ++a)
    out.push_back(cotangent_from(ctx, ctx.solve_pairings(chart.jacobian.row(a).transpose())));
  return out;
}

inline FrobeniusTensors structure_constants(const FlatChart& chart, const OperatorContext& ctx) {
  const int N = chart.dimension();
  FrobeniusTensors out;
  out.working = ctx.nu();
  out.differentials = transfer_differentials(chart, ctx);
  const auto& dt = out.differentials;
  std::vector<LaurentSeries> sharps;
  for (const auto& a : dt) sharps.push_back(sharp_series(a, ctx));
  out.eta_upper.resize(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) out.eta_upper(a, b) = trace(mul(sharps[a], dt[b]), ctx.s());
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(out.eta_upper);
  if (!lu.isInvertible()) throw Error(ErrorKind::DegeneratePoint, "metric is degenerate");
  out.eta_lower = lu.inverse();
  // dt^a o dt^b = C^ab_d dt^d, read off from its pairings with the tangent
  // frame; then c^abc = C^ab_d eta^dc. Pairing the unreduced product with
  // sharp(dt^c) instead loses about two digits at a movable simple pole.
  Eigen::FullPivLU<Eigen::MatrixXcd> jt(Eigen::MatrixXcd(chart.jacobian.transpose()));
  if (!jt.isInvertible()) throw Error(ErrorKind::DegeneratePoint, "flat chart jacobian is singular");
  out.c_upper = Tensor3(N);
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      const Eigen::VectorXcd C = jt.solve(tangent_pairings(circ_full(dt[a], dt[b], ctx), ctx));
      const Eigen::VectorXcd row = out.eta_upper.transpose() * C;
      for (int c = 0; c < N; ++c) {
        out.c_upper(a, b, c) = row(c);
        out.c_upper(b, a, c) = row(c);
      }
    }
  out.c_lower = transform(out.c_upper, out.eta_lower);
  return out;
}

inline FrobeniusTensors structure_constants(const FlatChart& chart, const MarkedPoint& working) {
  return structure_constants(chart, OperatorContext(chart.point, working, chart.depth));
}

/// Point at which tensors are assembled by default.
inline MarkedPoint default_working_point(const ManifoldPoint&) { return MarkedPoint::infinity(); }

// ---------------------------------------------------------------------------
// Unit field

struct UnitField {
  Eigen::VectorXcd components;  // e^a
  Eigen::VectorXcd counity;     // eps_a = eta_ab e^b
  bool flat = true;
  double residual = 0.0;  // of e^l c_lij = eta_ij
};

inline UnitField unit_field(const FrobeniusTensors& ft, const SuperpotentialSpec& spec) {
  const int N = static_cast<int>(ft.eta_lower.rows());
  Eigen::MatrixXcd A(N * N, N);
  Eigen::VectorXcd rhs(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      rhs(i * N + j) = ft.eta_lower(i, j);
      for (int l = 0; l < N; ++l) A(i * N + j, l) = ft.c_lower(l, i, j);
    }
  UnitField u;
  u.components = A.colPivHouseholderQr().solve(rhs);
  u.residual = (A * u.components - rhs).cwiseAbs().maxCoeff<Eigen::PropagateNaN>() / std::max(1.0, rhs.cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
  u.counity = ft.eta_lower * u.components;
  u.flat = !(spec.s == 1 && spec.m0 == -1);
  return u;
}

/// max |eps o beta - beta| over the canonical basis at the working point.
inline double unit_action_residual(const UnitField& u, const FrobeniusTensors& ft, const OperatorContext& ctx) {
  LaurentSeries eps = LaurentSeries::zero(ctx.nu());
  for (int a = 0; a < static_cast<int>(ft.differentials.size()); ++a)
    eps = eps + scale(ft.differentials[a], u.counity(a));
  double r = 0.0;
  for (int k = 0; k < ctx.dimension(); ++k) {
    const auto beta = ctx.basis(k);
    r = worst(r, max_difference(circ(eps, beta, ctx), beta));
  }
  return r;
}

/// Components of the unit predicted in closed form for the flat-unit cases.
inline std::optional<Eigen::VectorXcd> closed_form_unit(const FlatChart& chart) {
  const auto& mp = *chart.point;
  if (mp.spec.s == 1 && mp.spec.m0 == -1) return std::nullopt;
  RationalFunction e = RationalFunction::constant(1.0);
  if (mp.spec.s == 0 && mp.n() == 1) e = e - mp.lambda_p;
  Eigen::VectorXcd out(chart.dimension());
  for (int a = 0; a < chart.dimension(); ++a)
    out(a) = trace(mul(e.expand_at(chart.labels[a].nu, chart.depth), chart.differentials[a]), mp.spec.s);
  return out;
}

/// Permutation putting the label dual to the unit first (identity otherwise).
inline std::vector<int> unit_first_order(const Eigen::VectorXcd& e, double tol = 1e-8) {
  const int N = static_cast<int>(e.size());
  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  for (int a = 0; a < N; ++a) {
    bool unit = std::abs(e(a) - 1.0) < tol;
    for (int b = 0; b < N && unit; ++b)
      if (b != a && std::abs(e(b)) > tol) unit = false;
    if (unit) {
      order.erase(order.begin() + a);
      order.insert(order.begin(), a);
      break;
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Chart inversion

struct InversionOptions {
  double tol = 1e-12;
  int max_iterations = 50;
};

/// Newton iteration t -> raw coordinates, started from a base point whose
/// branch record is reused at every iterate.
class ChartInverter {
 public:
  ChartInverter(const FlatChart& base, InversionOptions opt = {})
      : spec_(base.point->spec),
        x0_(base.point->raw.independent(base.point->spec)),
        branches_(base.branches),
        depth_(base.depth),
        opt_(opt) {}

  const BranchMap& branches() const noexcept { return branches_; }

  FlatChart chart_at(const std::vector<Coefficient>& x, ChartOptions copt) const {
    auto mp = ManifoldPoint::make(spec_, RawCoordinates::from_independent(spec_, x));
    copt.depth = depth_;
    return flat_coordinates(mp, branches_, copt);
  }

  /// Raw coordinates whose chart values equal `target`, with the chart there.
  FlatChart invert(const std::vector<Coefficient>& target) const {
    const int N = static_cast<int>(target.size());
    Eigen::VectorXcd t(N);
    for (int a = 0; a < N; ++a) t(a) = target[static_cast<std::size_t>(a)];
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
    auto x = x0_;
    auto residual_of = [&](const FlatChart& c) {
      Eigen::VectorXcd r(N);
      for (int a = 0; a < N; ++a) r(a) = c.values[static_cast<std::size_t>(a)] - t(a);
      return r;
    };
    FlatChart chart = chart_at(x, {false, true, 0});
    Eigen::VectorXcd r = residual_of(chart);
    int polish = 0;  // extra steps once converged: differences of F amplify any leftover error
    for (int it = 0; it < opt_.max_iterations; ++it) {
      const double rn = r.cwiseAbs().maxCoeff<Eigen::PropagateNaN>();
      if (rn <= opt_.tol * scale && (polish++ >= 2 || rn == 0.0)) return chart;
      const Eigen::VectorXcd dx = chart.jacobian.fullPivLu().solve(r);
      double step = 1.0;
      bool improved = false;
      const int halvings = polish > 0 ? 1 : 30;  // no line search while polishing
      for (int h = 0; h < halvings && !improved; ++h, step *= 0.5) {
        auto trial = x;
        for (int b = 0; b < N; ++b) trial[static_cast<std::size_t>(b)] -= step * dx(b);
        try {
          FlatChart c = chart_at(trial, {false, true, 0});
          Eigen::VectorXcd rt = residual_of(c);
          if (rt.cwiseAbs().maxCoeff<Eigen::PropagateNaN>() < rn) {
            x = trial;
            chart = std::move(c);
            r = rt;
            improved = true;
          }
        } catch (const Error&) {
        }
      }
      if (!improved) {
        if (rn <= 1e3 * opt_.tol * scale) return chart;  // at the rounding floor
        break;
      }
    }
    if (r.cwiseAbs().maxCoeff<Eigen::PropagateNaN>() <= 1e3 * opt_.tol * scale) return chart;
    throw Error(ErrorKind::InversionFailure, "Newton inversion of the flat chart did not converge");
  }

 private:
  SuperpotentialSpec spec_;
  std::vector<Coefficient> x0_;
  BranchMap branches_;
  int depth_;
  InversionOptions opt_;
};

}  // namespace frob
