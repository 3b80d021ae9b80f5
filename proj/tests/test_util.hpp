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

// Shared helpers for the unit tests.

#pragma once

#include <memory>
#include <random>
#include <vector>

#include "frob/catalog.hpp"
#include "frob/meromorphic.hpp"
#include "frob/series.hpp"

namespace frob::testing {

/// Exact Laurent polynomial with coefficients in the unit disc on exponents [lo, hi].
inline LaurentSeries random_series(const MarkedPoint& pt, std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Coefficient> c;
  for (int e = lo; e <= hi; ++e) c.emplace_back(u(rng), u(rng));
  return LaurentSeries(pt, lo, std::move(c), true);
}

inline const Example& example(const std::string& name) {
  static const std::vector<Example> all = examples();
  for (const auto& ex : all)
    if (ex.name == name) return ex;
  throw std::runtime_error("no example " + name);
}

/// Superpotential of an example at named coordinates t.
inline std::shared_ptr<const ManifoldPoint> example_point(const Example& ex, const std::vector<Coefficient>& t) {
  return ManifoldPoint::make(ex.spec, raw_from_partial_fractions(ex.spec, ex.fractions(t)));
}

inline double max_abs(const std::vector<Coefficient>& a, const std::vector<Coefficient>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = worst(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace frob::testing
