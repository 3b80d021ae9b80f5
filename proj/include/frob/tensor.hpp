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

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "frob/errors.hpp"

namespace frob {

/// Dense rank-R array over complex numbers with equal extents.
template <int R>
class Tensor {
 public:
  using value_type = std::complex<double>;

  Tensor() = default;
  explicit Tensor(int n) : n_(n), v_(static_cast<std::size_t>(power(n)), value_type{}) {}

  int extent() const noexcept { return n_; }

  template <class... I>
  value_type& operator()(I... idx) {
    static_assert(sizeof...(I) == R);
    return v_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const value_type& operator()(I... idx) const {
    static_assert(sizeof...(I) == R);
    return v_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<value_type>& data() const noexcept { return v_; }
  std::vector<value_type>& data() noexcept { return v_; }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& x : v_) m = worst(m, std::abs(x));
    return m;
  }

  friend double max_abs_difference(const Tensor& a, const Tensor& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v_.size(); ++i) m = worst(m, std::abs(a.v_[i] - b.v_[i]));
    return m;
  }

 private:
  int power(int n) const {
    int p = 1;
    for (int i = 0; i < R; ++i) p *= n;
    return p;
  }
  std::size_t offset(std::array<int, R> idx) const {
    std::size_t o = 0;
    for (int i = 0; i < R; ++i) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
    return o;
  }

  int n_ = 0;
  std::vector<value_type> v_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

/// Contracts every index of a rank-3 tensor with the matrix m: out_abc = m_ai m_bj m_ck t_ijk.
inline Tensor3 transform(const Tensor3& t, const Eigen::MatrixXcd& m) {
  const int n = t.extent();
  Tensor3 a(n), b(n), c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::complex<double> s{};
        for (int l = 0; l < n; ++l) s += m(i, l) * t(l, j, k);
        a(i, j, k) = s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::complex<double> s{};
        for (int l = 0; l < n; ++l) s += m(j, l) * a(i, l, k);
        b(i, j, k) = s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::complex<double> s{};
        for (int l = 0; l < n; ++l) s += m(k, l) * b(i, j, l);
        c(i, j, k) = s;
      }
  return c;
}

/// Largest deviation from total symmetry.
inline double asymmetry(const Tensor3& t) {
  const int n = t.extent();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        m = worst(m, std::abs(t(i, j, k) - t(j, i, k)));
        m = worst(m, std::abs(t(i, j, k) - t(i, k, j)));
      }
  return m;
}

}  // namespace frob
