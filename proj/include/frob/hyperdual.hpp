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

// Complex numbers extended by three nilpotent directions e1, e2, e3
// (e_i^2 = 0). Component k multiplies the product of the e_i whose bit is
// set in k, so component 7 of f(x + e1 u + e2 v + e3 w) is the exact third
// directional derivative.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "frob/tensor.hpp"

namespace frob {

class HyperDual {
 public:
  using value_type = std::complex<double>;

  HyperDual() = default;
  HyperDual(value_type v) { c_[0] = v; }  // NOLINT: implicit lift of scalars
  HyperDual(double v) { c_[0] = v; }      // NOLINT

  static HyperDual variable(value_type v, unsigned mask) {
    HyperDual h(v);
    for (unsigned b = 0; b < 3; ++b)
      if (mask & (1u << b)) h.c_[1u << b] = 1.0;
    return h;
  }

  value_type operator[](unsigned k) const { return c_[k]; }
  value_type& operator[](unsigned k) { return c_[k]; }
  value_type value() const { return c_[0]; }

  friend HyperDual operator+(HyperDual a, const HyperDual& b) {
    for (unsigned k = 0; k < 8; ++k) a.c_[k] += b.c_[k];
    return a;
  }
  friend HyperDual operator-(HyperDual a, const HyperDual& b) {
    for (unsigned k = 0; k < 8; ++k) a.c_[k] -= b.c_[k];
    return a;
  }
  friend HyperDual operator-(HyperDual a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    HyperDual out;
    for (unsigned m = 0; m < 8; ++m)
      for (unsigned s = m;; s = (s - 1) & m) {  // subsets of m
        out.c_[m] += a.c_[s] * b.c_[m ^ s];
        if (s == 0) break;
      }
    return out;
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    const value_type x = b.c_[0];
    return a * b.apply(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x));
  }
  HyperDual& operator+=(const HyperDual& b) { return *this = *this + b; }
  HyperDual& operator-=(const HyperDual& b) { return *this = *this - b; }
  HyperDual& operator*=(const HyperDual& b) { return *this = *this * b; }

  /// f(x0 + d) = f0 + f1 d + f2 d^2/2 + f3 d^3/6 with d nilpotent of order 4.
  HyperDual apply(value_type f0, value_type f1, value_type f2, value_type f3) const {
    HyperDual d = *this;
    d.c_[0] = 0.0;
    const HyperDual d2 = d * d;
    const HyperDual d3 = d2 * d;
    HyperDual out(f0);
    for (unsigned k = 1; k < 8; ++k) out.c_[k] = f1 * d.c_[k] + f2 * d2.c_[k] / 2.0 + f3 * d3.c_[k] / 6.0;
    return out;
  }

 private:
  std::array<value_type, 8> c_{};
};

inline HyperDual exp(const HyperDual& x) {
  const auto e = std::exp(x.value());
  return x.apply(e, e, e, e);
}

/// Principal branch.
inline HyperDual log(const HyperDual& x) {
  const auto v = x.value();
  return x.apply(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

inline HyperDual pow(const HyperDual& x, int k) {
  HyperDual out(1.0);
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

/// All third partial derivatives of f at t.
template <class F>
Tensor3 hyperdual_third_derivatives(F&& f, const std::vector<std::complex<double>>& t) {
  const int N = static_cast<int>(t.size());
  Tensor3 out(N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      for (int k = j; k < N; ++k) {
        std::vector<HyperDual> x;
        for (int a = 0; a < N; ++a) {
          unsigned mask = 0;
          if (a == i) mask |= 1u;
          if (a == j) mask |= 2u;
          if (a == k) mask |= 4u;
          x.push_back(HyperDual::variable(t[static_cast<std::size_t>(a)], mask));
        }
        const auto v = f(x)[7];
        for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
          out(a, b, c) = v;
      }
  return out;
}

}  // namespace frob
