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

// Finite-difference engine and the verdicts built on it: associativity,
// symmetry of the covariant derivative of c, quasi-homogeneity and the
// metric recovered from the prepotential.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "frob/frobenius.hpp"
#include "frob/tensor.hpp"

namespace frob {

using ScalarField = std::function<Coefficient(const std::vector<Coefficient>&)>;
using TensorField = std::function<Tensor3(const std::vector<Coefficient>&)>;

struct StencilOptions {
  double rel_step = 1e-2;  // h_i = rel_step * max(1, |t_i|)
  bool richardson = true;
  double target = 0.0;     // keep halving while the error estimate is above this
  int max_halvings = 1;
};

struct ThirdDerivativeStencil {
  std::vector<double> steps;
  bool richardson = true;
};

struct ThirdDerivatives {
  Tensor3 value;
  Tensor3 error;  // |R(h) - R(h/2)| per entry at the final step
  ThirdDerivativeStencil stencil;
};

namespace detail {

// Tensor product of central first differences, offsets in units of the step.
inline Tensor3 third_difference(const ScalarField& F, const std::vector<Coefficient>& t0,
                                const std::vector<double>& h) {
  const int N = static_cast<int>(t0.size());
  std::map<std::vector<int>, Coefficient> cache;
  auto eval = [&](const std::vector<int>& off) {
    auto it = cache.find(off);
    if (it != cache.end()) return it->second;
    auto t = t0;
    for (int a = 0; a < N; ++a) t[static_cast<std::size_t>(a)] += static_cast<double>(off[static_cast<std::size_t>(a)]) * h[static_cast<std::size_t>(a)];
    const Coefficient v = F(t);
    cache.emplace(off, v);
    return v;
  };
  Tensor3 out(N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      for (int k = j; k < N; ++k) {
        Coefficient acc{};
        for (int mask = 0; mask < 8; ++mask) {
          std::vector<int> off(static_cast<std::size_t>(N), 0);
          const int si = (mask & 1) ? -1 : 1, sj = (mask & 2) ? -1 : 1, sk = (mask & 4) ? -1 : 1;
          off[static_cast<std::size_t>(i)] += si;
          off[static_cast<std::size_t>(j)] += sj;
          off[static_cast<std::size_t>(k)] += sk;
          acc += static_cast<double>(si * sj * sk) * eval(off);
        }
        const Coefficient v = acc / (8.0 * h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k)]);
        for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
          out(a, b, c) = v;
      }
  return out;
}

inline std::vector<double> steps_for(const std::vector<Coefficient>& t0, double rel) {
  std::vector<double> h;
  for (const auto& x : t0) h.push_back(rel * std::max(1.0, std::abs(x)));
  return h;
}

struct Extrapolated {
  Tensor3 value;
  Tensor3 error;
  double factor = 1.0;  // finest step used, as a fraction of the initial one
};

// Romberg table on a central difference diff(f) taken with step f*h, whose
// error expands in even powers of the step. Each new row halves the step and
// extrapolates the diagonal one order further. The change along the diagonal
// estimates the error of the older entry, so that entry is what gets returned.
// Stops at `target`, or once the estimate grows again, which means rounding in
// diff() has taken over.
template <class Diff>
Extrapolated richardson(Diff&& diff, double target, int max_halvings) {
  std::vector<Tensor3> row{diff(1.0)};
  Extrapolated best;
  double best_est = std::numeric_limits<double>::infinity();
  double f = 1.0;
  for (int k = 1; k <= std::max(1, max_halvings) + 1; ++k) {
    f *= 0.5;
    std::vector<Tensor3> next{diff(f)};
    for (int j = 1; j <= k; ++j) {
      const double w = std::pow(4.0, j);
      Tensor3 r(next[0].extent());
      for (std::size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] = (w * next[static_cast<std::size_t>(j) - 1].data()[i] - row[static_cast<std::size_t>(j) - 1].data()[i]) / (w - 1.0);
      next.push_back(std::move(r));
    }
    if (k >= 2) {  // before that the older diagonal entry is the plain difference
      Tensor3 err(next.back().extent());
      for (std::size_t i = 0; i < err.data().size(); ++i) err.data()[i] = std::abs(next.back().data()[i] - row.back().data()[i]);
      const double est = err.max_abs();
      if (est > best_est) break;
      best = {row.back(), std::move(err), 2.0 * f};
      best_est = est;
      if (est <= target) break;
    }
    row = std::move(next);
  }
  return best;
}

}  // namespace detail

/// Third derivatives of a scalar field by central differences with Richardson extrapolation.
inline ThirdDerivatives third_derivatives(const ScalarField& F, const std::vector<Coefficient>& t0,
                                         StencilOptions opt = {}) {
  ThirdDerivatives out;
  const auto h = detail::steps_for(t0, opt.rel_step);
  out.stencil = {h, opt.richardson};
  if (!opt.richardson) {
    out.value = detail::third_difference(F, t0, h);
    out.error = Tensor3(static_cast<int>(t0.size()));
    return out;
  }
  auto scaled = [&](double f) {
    auto s = h;
    for (auto& x : s) x *= f;
    return s;
  };
  auto r = detail::richardson([&](double f) { return detail::third_difference(F, t0, scaled(f)); }, opt.target,
                              opt.max_halvings);
  out.value = std::move(r.value);
  out.error = std::move(r.error);
  out.stencil.steps = scaled(r.factor);
  return out;
}

/// Derivative of a tensor field along direction `dir` (central, Richardson; see detail::richardson).
inline Tensor3 directional_derivative(const TensorField& c, const std::vector<Coefficient>& t0,
                                      const Eigen::VectorXcd& dir, double h, double target = 0.0,
                                      int max_halvings = 1) {
  auto shifted = [&](double step) {
    auto t = t0;
    for (std::size_t a = 0; a < t.size(); ++a) t[a] += step * dir(static_cast<Eigen::Index>(a));
    return c(t);
  };
  auto central = [&](double f) {
    const double step = f * h;
    const Tensor3 p = shifted(step), m = shifted(-step);
    Tensor3 d(p.extent());
    for (std::size_t i = 0; i < d.data().size(); ++i) d.data()[i] = (p.data()[i] - m.data()[i]) / (2.0 * step);
    return d;
  };
  return detail::richardson(central, target, max_halvings).value;
}

// ---------------------------------------------------------------------------
// Verdicts

struct VerdictReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string note;
  int points = 1;
  std::uint64_t seed = 0;

  static VerdictReport make(std::string name, double residual, double tol) {
    VerdictReport v;
    v.name = std::move(name);
    v.max_residual = residual;
    v.tolerance = tol;
    v.passed = std::isfinite(residual) && residual < tol;
    return v;
  }
  static VerdictReport skip(std::string name, std::string why) {
    VerdictReport v;
    v.name = std::move(name);
    v.skipped = true;
    v.passed = true;
    v.note = std::move(why);
    return v;
  }
};

/// Merges reports of the same identity over several points.
inline VerdictReport merge(VerdictReport a, const VerdictReport& b) {
  if (a.skipped) return b;
  if (b.skipped) return a;
  a.max_residual = worst(a.max_residual, b.max_residual);
  a.passed = a.passed && b.passed;
  a.points += b.points;
  return a;
}

/// c_ijr eta^rs c_skl = c_ljr eta^rs c_ski
inline VerdictReport check_wdvv(const Tensor3& c, const Eigen::MatrixXcd& eta_upper, double tol = 1e-6) {
  const int N = c.extent();
  Tensor4 w(N);  // w_ijkl = c_ijr eta^rs c_skl
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::vector<Coefficient> left(static_cast<std::size_t>(N), Coefficient{});
      for (int s = 0; s < N; ++s)
        for (int r = 0; r < N; ++r) left[static_cast<std::size_t>(s)] += c(i, j, r) * eta_upper(r, s);
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          Coefficient acc{};
          for (int s = 0; s < N; ++s) acc += left[static_cast<std::size_t>(s)] * c(s, k, l);
          w(i, j, k, l) = acc;
        }
    }
  double r = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) r = worst(r, std::abs(w(i, j, k, l) - w(l, j, k, i)));
  return VerdictReport::make("wdvv", r, tol);
}

/// Total symmetry of d_l c_ijk, differentiating the tensor field once more.
inline VerdictReport check_nabla_c_symmetry(const TensorField& c, const std::vector<Coefficient>& t0,
                                            double tol = 1e-4, double rel_step = 1e-2) {
  const int N = static_cast<int>(t0.size());
  const auto h = detail::steps_for(t0, rel_step);
  std::vector<Tensor3> dc;
  for (int l = 0; l < N; ++l) {
    Eigen::VectorXcd dir = Eigen::VectorXcd::Zero(N);
    dir(l) = 1.0;
    dc.push_back(directional_derivative(c, t0, dir, h[static_cast<std::size_t>(l)], 0.01 * tol, 6));
  }
  double r = 0.0;
  for (int l = 0; l < N; ++l)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          r = worst(r, std::abs(dc[static_cast<std::size_t>(l)](i, j, k) - dc[static_cast<std::size_t>(i)](l, j, k)));
  for (const auto& t : dc) r = worst(r, asymmetry(t));
  return VerdictReport::make("nabla-c-symmetry", r, tol);
}

/// E^l d_l c_ijk + (w_i + w_j + w_k - (3 - d)) c_ijk = 0
inline VerdictReport check_quasi_homogeneity(const TensorField& c, const std::vector<Coefficient>& t0,
                                             const EulerData& e, double d, double tol = 1e-5,
                                             double rel_step = 1e-2) {
  const int N = static_cast<int>(t0.size());
  const Eigen::VectorXcd E = euler_vector(e, t0);
  const double norm = std::max(E.cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), 1e-300);
  double scale_t = 1.0;
  for (const auto& x : t0) scale_t = std::max(scale_t, std::abs(x));
  const Tensor3 along = directional_derivative(c, t0, E / norm, rel_step * scale_t, 0.01 * tol / norm, 6);
  const Tensor3 c0 = c(t0);
  double r = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const double w = e.weights[static_cast<std::size_t>(i)].to_double() +
                         e.weights[static_cast<std::size_t>(j)].to_double() +
                         e.weights[static_cast<std::size_t>(k)].to_double() - (3.0 - d);
        r = worst(r, std::abs(norm * along(i, j, k) + w * c0(i, j, k)));
      }
  return VerdictReport::make("quasi-homogeneity", r, tol);
}

/// e^l c_lij against the metric (d^3 F / dt^1 dt^i dt^j = eta_ij for e = d/dt^1).
inline VerdictReport check_eta_from_F(const Tensor3& c, const Eigen::VectorXcd& unit,
                                      const Eigen::MatrixXcd& eta_lower, bool flat_unit, double tol = 1e-6) {
  if (!flat_unit) return VerdictReport::skip("eta-from-F", "unit field is not flat");
  const int N = c.extent();
  double r = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Coefficient acc{};
      for (int l = 0; l < N; ++l) acc += unit(l) * c(l, i, j);
      r = worst(r, std::abs(acc - eta_lower(i, j)));
    }
  return VerdictReport::make("eta-from-F", r, tol);
}

// ---------------------------------------------------------------------------
// Fields bound to a superpotential family

/// F(t) through chart inversion from a base chart.
inline ScalarField prepotential_field(const FlatChart& base) {
  auto inv = std::make_shared<ChartInverter>(base);
  return [inv](const std::vector<Coefficient>& t) { return prepotential(inv->invert(t)); };
}

using FrobeniusField = std::function<FrobeniusTensors(const std::vector<Coefficient>&)>;

/// Metric and structure constants at `working` as functions of t, through chart inversion.
inline FrobeniusField frobenius_field(const FlatChart& base, MarkedPoint working) {
  auto inv = std::make_shared<ChartInverter>(base);
  return [inv, working](const std::vector<Coefficient>& t) {
    FlatChart chart = inv->invert(t);
    // a movable pole moves with the point
    MarkedPoint w = working;
    if (w.is_finite()) w.value = chart.point->raw.poles[static_cast<std::size_t>(w.index - 1)];
    return structure_constants(chart, w);
  };
}

inline TensorField structure_field(const FlatChart& base, MarkedPoint working) {
  auto f = frobenius_field(base, working);
  return [f](const std::vector<Coefficient>& t) { return f(t).c_lower; };
}

/// d_a eps_b = d_b eps_a for eps_a = eta_ab e^b, by central differences.
inline VerdictReport check_counity_closed(const FrobeniusField& field, const SuperpotentialSpec& spec,
                                          const std::vector<Coefficient>& t0, double tol = 1e-6,
                                          double rel_step = 1e-3) {
  const int N = static_cast<int>(t0.size());
  const auto h = detail::steps_for(t0, rel_step);
  auto counity = [&](const std::vector<Coefficient>& t) { return unit_field(field(t), spec).counity; };
  Eigen::MatrixXcd D(N, N);  // D(a, b) = d_a eps_b
  for (int a = 0; a < N; ++a) {
    auto central = [&](double step) {
      auto tp = t0, tm = t0;
      tp[static_cast<std::size_t>(a)] += step;
      tm[static_cast<std::size_t>(a)] -= step;
      return Eigen::VectorXcd((counity(tp) - counity(tm)) / (2.0 * step));
    };
    const double ha = h[static_cast<std::size_t>(a)];
    D.row(a) = ((4.0 * central(0.5 * ha) - central(ha)) / 3.0).transpose();
  }
  return VerdictReport::make("counity-closed", (D - D.transpose()).cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), tol);
}

inline ThirdDerivatives third_derivatives(const FlatChart& base, StencilOptions opt = {}) {
  return third_derivatives(prepotential_field(base), base.values, opt);
}

}  // namespace frob
