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

// Built-in worked examples. Each one carries its own flat chart (named
// coordinates t_1..t_N), the partial fractions of lambda in that chart, the
// linear map from the library's canonical labels to it, the expected Euler
// data, a closed-form prepotential and the unit field.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frob/hyperdual.hpp"
#include "frob/meromorphic.hpp"
#include "frob/rational.hpp"

namespace frob {

struct Example {
  std::string name;
  std::string summary;
  SuperpotentialSpec spec;
  // t_i = sum_a chart_map[i][a] * tau_a, tau in canonical label order
  std::vector<std::vector<Rational>> chart_map;
  std::vector<Rational> weights;  // E = sum (weights_i t_i + shifts_i) d/dt_i
  std::vector<Rational> shifts;
  Rational d;
  bool flat_unit = true;
  std::vector<Coefficient> reference;  // a generic point in the named chart
  std::vector<int> log_arguments;      // coordinates that appear inside a logarithm
  std::function<PartialFractions(const std::vector<Coefficient>&)> fractions;
  std::function<HyperDual(const std::vector<HyperDual>&)> prepotential;
  std::function<std::vector<Coefficient>(const std::vector<Coefficient>&)> unit;

  int dimension() const { return spec.dimension(); }

  Eigen::MatrixXcd map_matrix() const {
    const int N = dimension();
    Eigen::MatrixXcd A(N, N);
    for (int i = 0; i < N; ++i)
      for (int a = 0; a < N; ++a) A(i, a) = chart_map[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].to_double();
    return A;
  }

  /// Named coordinates from canonical ones.
  std::vector<Coefficient> to_named(const std::vector<Coefficient>& tau) const {
    const Eigen::MatrixXcd A = map_matrix();
    std::vector<Coefficient> t(tau.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t a = 0; a < t.size(); ++a) t[i] += A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) * tau[a];
    return t;
  }

  /// Reference point moved by a uniform offset of at most `radius` per real component.
  std::vector<Coefficient> sample(std::mt19937_64& rng, double radius = 0.25) const {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
      auto t = reference;
      for (auto& x : t) x += Coefficient(u(rng), u(rng));
      bool ok = true;
      for (int i : log_arguments) {
        const auto& z = t[static_cast<std::size_t>(i)];
        if (std::abs(z) < 0.1 || z.real() <= 0.0) ok = false;  // keep clear of the principal cut
      }
      if (ok) return t;
    }
  }
};

namespace detail {

inline std::vector<std::vector<Rational>> permutation_map(const std::vector<int>& from_named) {
  const std::size_t N = from_named.size();
  std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N, Rational(0)));
  for (std::size_t i = 0; i < N; ++i) m[i][static_cast<std::size_t>(from_named[i])] = Rational(1);
  return m;
}

inline std::vector<Coefficient> unit_first(int N) {
  std::vector<Coefficient> e(static_cast<std::size_t>(N), Coefficient{});
  e[0] = 1.0;
  return e;
}

template <class T>
T half(const T& x) { return x * T(0.5); }

}  // namespace detail

inline std::vector<Example> examples() {
  using C = Coefficient;
  using H = HyperDual;
  std::vector<Example> out;

  {  // quartic polynomial, the A3 family
    Example ex;
    ex.name = "a3";
    ex.summary = "s=0, lambda = p^4 + u p^2 + v p + w";
    ex.spec = {0, 4, 0, {}};
    ex.chart_map = detail::permutation_map({2, 1, 0});
    ex.weights = {Rational(1), Rational(3, 4), Rational(1, 2)};
    ex.shifts = {Rational(0), Rational(0), Rational(0)};
    ex.d = Rational(1, 2);
    ex.reference = {C(0.3, 0.1), C(-0.4, 0.2), C(0.5, -0.1)};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{t[0] + t[2] * t[2] / 8.0, t[1], t[2], 0.0, 1.0}, {}, {}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      return H(1.0 / 8) * t[0] * t[1] * t[1] + H(1.0 / 8) * t[0] * t[0] * t[2] -
             H(1.0 / 64) * t[1] * t[1] * t[2] * t[2] + H(1.0 / 3840) * pow(t[2], 5);
    };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(3); };
    out.push_back(std::move(ex));
  }
  {  // two movable simple poles
    Example ex;
    ex.name = "two-poles";
    ex.summary = "s=0, lambda = p + a/(p-v) + b/(p-w)";
    ex.spec = {0, 3, 0, {1, 1}};
    // canonical: t^0_v1, t^1_v1, t^0_v2, t^1_v2
    const Rational h(1, 2), z(0), o(1);
    ex.chart_map = {{z, h, z, h}, {z, h, z, -h}, {o, z, z, z}, {z, z, o, z}};
    ex.weights = {o, o, Rational(2), Rational(2)};
    ex.shifts = {z, z, z, z};
    ex.d = Rational(-1);
    ex.reference = {C(0.2, 0.1), C(0.8, -0.1), C(0.9, 0.2), C(0.7, -0.2)};
    ex.log_arguments = {1, 2, 3};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{0.0, 1.0}, {}, {{t[0] + t[1], {t[2]}}, {t[0] - t[1], {t[3]}}}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      return t[0] * t[1] * (t[2] - t[3]) + H(0.25) * (t[0] * t[0] + t[1] * t[1]) * (t[2] + t[3]) +
             H(0.5) * t[2] * t[2] * log(t[2]) + t[2] * t[3] * log(t[1]) + H(0.5) * t[3] * t[3] * log(t[3]);
    };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(4); };
    out.push_back(std::move(ex));
  }
  {  // poles at infinity, the origin and one movable point
    Example ex;
    ex.name = "toda3";
    ex.summary = "s=1, lambda = p + u + v/p + s/(p-w)";
    ex.spec = {1, 3, 1, {1}};
    ex.chart_map = detail::permutation_map({0, 1, 2, 3});
    const Rational z(0), o(1);
    ex.weights = {o, z, o, z};
    ex.shifts = {z, Rational(2), z, o};
    ex.d = Rational(1);
    ex.reference = {C(0.3, 0.1), C(0.4, -0.2), C(0.8, 0.1), C(-0.3, 0.2)};
    ex.log_arguments = {2};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{t[0] + t[2], 1.0}, {std::exp(t[1])}, {{-std::exp(t[3]), {-t[2] * std::exp(t[3])}}}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      return detail::half(t[0] * t[0] * t[1]) + t[0] * t[2] * t[3] + detail::half(t[2] * t[2] * t[3]) + exp(t[1]) +
             t[2] * exp(t[1] - t[3]) - t[2] * exp(t[3]) + detail::half(t[2] * t[2] * log(t[2]));
    };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(4); };
    out.push_back(std::move(ex));
  }
  {  // projective line
    Example ex;
    ex.name = "p1";
    ex.summary = "s=1, lambda = p + u + v/p";
    ex.spec = {1, 2, 1, {}};
    ex.chart_map = detail::permutation_map({0, 1});
    ex.weights = {Rational(1), Rational(0)};
    ex.shifts = {Rational(0), Rational(2)};
    ex.d = Rational(1);
    ex.reference = {C(0.3, 0.2), C(0.4, -0.1)};
    ex.fractions = [](const std::vector<C>& t) { return PartialFractions{{t[0], 1.0}, {std::exp(t[1])}, {}}; };
    ex.prepotential = [](const std::vector<H>& t) { return detail::half(t[0] * t[0] * t[1]) + exp(t[1]); };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(2); };
    out.push_back(std::move(ex));
  }
  {  // fixed simple zero at the origin, non-flat unit
    Example ex;
    ex.name = "nonflat";
    ex.summary = "s=1, lambda = p + u + u w/(p-w), zero fixed at 0";
    ex.spec = {1, 1, -1, {1}};
    ex.chart_map = detail::permutation_map({0, 1});
    ex.weights = {Rational(1), Rational(0)};
    ex.shifts = {Rational(0), Rational(1)};
    ex.d = Rational(1);
    ex.flat_unit = false;
    ex.reference = {C(0.8, 0.1), C(0.3, -0.2)};
    ex.log_arguments = {0};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{t[0], 1.0}, {}, {{-std::exp(t[1]), {-t[0] * std::exp(t[1])}}}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      return detail::half(t[0] * t[0] * t[1]) - t[0] * exp(t[1]) + detail::half(t[0] * t[0] * log(t[0]));
    };
    ex.unit = [](const std::vector<C>& t) {
      const C k = 1.0 / (t[0] + std::exp(t[1]));
      return std::vector<C>{k * t[0], -k};
    };
    out.push_back(std::move(ex));
  }
  {  // one movable double pole
    Example ex;
    ex.name = "double-pole";
    ex.summary = "s=0, lambda = p + a/(p-v) + b^2/(p-v)^2";
    ex.spec = {0, 3, 0, {2}};
    const Rational h(1, 2), z(0), o(1);
    ex.chart_map = {{z, z, h}, {z, h, z}, {o, z, z}};
    ex.weights = {o, Rational(3, 2), Rational(2)};
    ex.shifts = {z, z, z};
    ex.d = Rational(-1);
    ex.reference = {C(0.3, 0.1), C(0.9, 0.1), C(0.5, -0.2)};
    ex.log_arguments = {1};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{0.0, 1.0}, {}, {{t[0], {t[2], t[1] * t[1]}}}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      return t[0] * t[1] * t[1] + detail::half(t[0] * t[0] * t[2]) + detail::half(t[2] * t[2] * log(t[1]));
    };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(3); };
    out.push_back(std::move(ex));
  }
  {  // six-dimensional case
    Example ex;
    ex.name = "six-dim";
    ex.summary = "s=1, n=2, double pole at 0 and one movable simple pole";
    ex.spec = {1, 5, 2, {1}};
    // canonical: t^1_inf, t^0_0, t^1_0, t^2_0, t^0_v1, t^1_v1
    ex.chart_map = detail::permutation_map({1, 2, 3, 0, 4, 5});
    const Rational z(0), o(1), h(1, 2);
    ex.weights = {o, h, z, h, o, z};
    ex.shifts = {z, z, Rational(2), z, z, h};
    ex.d = Rational(1);
    ex.reference = {C(0.3, 0.1), C(0.4, -0.1), C(0.5, 0.2), C(-0.3, 0.1), C(0.8, -0.1), C(0.2, 0.1)};
    ex.log_arguments = {4};
    ex.fractions = [](const std::vector<C>& t) {
      return PartialFractions{{t[0] + t[4], t[3], 1.0},
                              {t[1] * std::exp(t[2] / 2.0), std::exp(t[2])},
                              {{-std::exp(t[5]), {-t[4] * std::exp(t[5])}}}};
    };
    ex.prepotential = [](const std::vector<H>& t) {
      const H q(0.25);
      const H e32 = exp(detail::half(t[2]));
      return H(-1.0 / 96) * pow(t[1], 4) + q * t[0] * t[1] * t[1] - H(1.0 / 96) * pow(t[3], 4) +
             q * t[0] * t[3] * t[3] + q * t[0] * t[0] * t[2] + q * t[3] * t[3] * t[4] +
             detail::half(t[4] * t[4] * t[5]) + t[0] * t[4] * t[5] + t[1] * t[3] * e32 +
             detail::half(exp(t[2])) + detail::half(t[4] * exp(H(2.0) * t[5])) - t[3] * t[4] * exp(t[5]) +
             t[1] * t[4] * exp(detail::half(t[2]) - t[5]) - detail::half(t[4] * exp(t[2] - H(2.0) * t[5])) +
             detail::half(t[4] * t[4] * log(t[4]));
    };
    ex.unit = [](const std::vector<C>&) { return detail::unit_first(6); };
    out.push_back(std::move(ex));
  }
  return out;
}

inline std::optional<Example> find_example(const std::string& name) {
  for (auto& ex : examples())
    if (ex.name == name) return ex;
  return std::nullopt;
}

}  // namespace frob
