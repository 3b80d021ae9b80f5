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

// Superpotentials: factored rational functions on the sphere, their
// expansions at the marked points and the tangent frame of the family.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "frob/errors.hpp"
#include "frob/series.hpp"

namespace frob {

struct SuperpotentialSpec {
  int s = 0;
  int L = 1;   // number of movable zeros
  int m0 = 0;  // pole order at the origin (-1: fixed simple zero there)
  std::vector<int> poles;  // multiplicities m_1..m_K

  int K() const noexcept { return static_cast<int>(poles.size()); }
  int n() const noexcept { return L - m0 - std::accumulate(poles.begin(), poles.end(), 0); }
  int dimension() const noexcept { return K() + L + s - 1; }
  /// Count of zeros that are free coordinates (the last one is dependent when s = 0).
  int free_zeros() const noexcept { return s == 0 ? L - 1 : L; }
  bool origin_is_pole() const noexcept { return s == 1 && m0 >= 1; }
  int max_multiplicity() const noexcept {
    int m = std::max(m0, 1);
    for (int k : poles) m = std::max(m, k);
    return m;
  }

  friend bool operator==(const SuperpotentialSpec&, const SuperpotentialSpec&) = default;
};

enum class Admissibility { FlatUnit, NonflatUnit, Inadmissible };

inline std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::FlatUnit: return "admissible-flat-unit";
    case Admissibility::NonflatUnit: return "admissible-nonflat-unit";
    case Admissibility::Inadmissible: return "inadmissible";
  }
  return "?";
}

struct AdmissibilityReport {
  Admissibility kind = Admissibility::Inadmissible;
  int n = 0;
  int dimension = 0;
  std::string reason;

  bool admissible() const noexcept { return kind != Admissibility::Inadmissible; }
};

inline AdmissibilityReport validate(const SuperpotentialSpec& spec) {
  AdmissibilityReport r;
  r.n = spec.n();
  r.dimension = spec.dimension();
  auto reject = [&](std::string why) {
    r.kind = Admissibility::Inadmissible;
    r.reason = std::move(why);
    return r;
  };
  if (spec.s != 0 && spec.s != 1) return reject("s must be 0 or 1");
  if (spec.L < 0) return reject("zero count must be non-negative");
  for (int m : spec.poles)
    if (m < 1) return reject("pole multiplicities must be at least 1");
  if (spec.n() < 1) return reject("degree at infinity n = L - m0 - sum m_k must be at least 1");
  if (spec.s == 0 && spec.m0 != 0) return reject("s = 0 requires no pole or zero at the origin (m0 = 0)");
  if (spec.s == 1 && spec.m0 == 0)
    return reject("s = 1 requires a pole at the origin (m0 >= 1) or a simple zero there (m0 = -1)");
  if (spec.s == 1 && spec.m0 < -1) return reject("s = 1 allows m0 = -1 as the only non-positive order");
  if (spec.dimension() < 1) return reject("manifold dimension N = K + L + s - 1 must be at least 1");
  r.kind = (spec.s == 1 && spec.m0 == -1) ? Admissibility::NonflatUnit : Admissibility::FlatUnit;
  return r;
}

struct RawCoordinates {
  std::vector<Coefficient> zeros;  // a_1..a_L
  std::vector<Coefficient> poles;  // v_1..v_K

  /// Free coordinates (a_1..a_L', v_1..v_K).
  std::vector<Coefficient> independent(const SuperpotentialSpec& spec) const {
    std::vector<Coefficient> x(zeros.begin(), zeros.begin() + spec.free_zeros());
    x.insert(x.end(), poles.begin(), poles.end());
    return x;
  }

  static RawCoordinates from_independent(const SuperpotentialSpec& spec,
                                         const std::vector<Coefficient>& x) {
    if (static_cast<int>(x.size()) != spec.dimension())
      throw Error(ErrorKind::InvalidInput, "coordinate count does not match the dimension");
    RawCoordinates r;
    const int lz = spec.free_zeros();
    r.zeros.assign(x.begin(), x.begin() + lz);
    r.poles.assign(x.begin() + lz, x.end());
    if (spec.s == 0) {
      Coefficient last{};
      for (int k = 0; k < spec.K(); ++k) last += static_cast<double>(spec.poles[k]) * r.poles[k];
      for (const auto& a : r.zeros) last -= a;
      r.zeros.push_back(last);
    }
    return r;
  }
};

struct Factor {
  Coefficient root;
  int power;
};

/// scale * prod (p - root)^power
struct RationalTerm {
  Coefficient scale{1.0};
  std::vector<Factor> factors;

  void normalize() {
    std::vector<Factor> merged;
    for (const auto& f : factors) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const Factor& g) { return g.root == f.root; });
      if (it == merged.end()) merged.push_back(f);
      else it->power += f.power;
    }
    std::erase_if(merged, [](const Factor& f) { return f.power == 0; });
    factors = std::move(merged);
  }
};

namespace detail {

// (p - root)^power expanded at `pt`.
inline LaurentSeries factor_series(const MarkedPoint& pt, Coefficient root, int power, int depth) {
  const bool closed = power >= 0;
  if (pt.is_infinity()) {
    // p^e (1 - root/p)^e
    const int n = closed ? power + 1 : depth;
    std::vector<Coefficient> c(static_cast<std::size_t>(n));
    Coefficient term = 1.0;
    for (int k = 0; k < n; ++k) {
      c[static_cast<std::size_t>(k)] = term;
      term *= -root * static_cast<double>(power - k) / static_cast<double>(k + 1);
    }
    return LaurentSeries::from_valuations(pt, -power, std::move(c), closed);
  }
  const Coefficient delta = pt.location() - root;
  if (delta == Coefficient{}) return LaurentSeries::from_valuations(pt, power, {1.0}, true);
  const int n = closed ? power + 1 : depth;
  std::vector<Coefficient> c(static_cast<std::size_t>(n));
  Coefficient term = std::pow(delta, power);
  for (int k = 0; k < n; ++k) {
    c[static_cast<std::size_t>(k)] = term;
    term *= static_cast<double>(power - k) / static_cast<double>(k + 1) / delta;
  }
  return LaurentSeries::from_valuations(pt, 0, std::move(c), closed);
}

}  // namespace detail

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(std::vector<RationalTerm> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_) t.normalize();
    std::erase_if(terms_, [](const RationalTerm& t) { return t.scale == Coefficient{}; });
  }

  static RationalFunction constant(Coefficient c) { return RationalFunction({RationalTerm{c, {}}}); }
  static RationalFunction monomial(Coefficient root, int power, Coefficient c = 1.0) {
    return RationalFunction({RationalTerm{c, {{root, power}}}});
  }

  const std::vector<RationalTerm>& terms() const noexcept { return terms_; }

  Coefficient operator()(Coefficient p) const {
    Coefficient acc{};
    for (const auto& t : terms_) {
      Coefficient v = t.scale;
      for (const auto& f : t.factors) v *= std::pow(p - f.root, f.power);
      acc += v;
    }
    return acc;
  }

  /// d/dp by the product rule.
  RationalFunction derivative() const {
    std::vector<RationalTerm> out;
    for (const auto& t : terms_) {
      for (std::size_t i = 0; i < t.factors.size(); ++i) {
        RationalTerm d = t;
        d.scale *= static_cast<double>(t.factors[i].power);
        d.factors[i].power -= 1;
        out.push_back(std::move(d));
      }
    }
    return RationalFunction(std::move(out));
  }

  LaurentSeries expand_at(const MarkedPoint& pt, int depth) const {
    if (depth < 1) throw Error(ErrorKind::InvalidInput, "expansion depth must be positive");
    if (terms_.empty()) return LaurentSeries::zero(pt);
    std::optional<LaurentSeries> acc;
    for (const auto& t : terms_) {
      LaurentSeries term = LaurentSeries::constant(pt, t.scale);
      for (const auto& f : t.factors) term = mul(term, detail::factor_series(pt, f.root, f.power, depth));
      acc = acc ? add(*acc, term) : term;
    }
    return *acc;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return RationalFunction(std::move(t));
  }
  friend RationalFunction operator*(Coefficient c, const RationalFunction& a) {
    auto t = a.terms_;
    for (auto& x : t) x.scale *= c;
    return RationalFunction(std::move(t));
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-1.0) * b;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    std::vector<RationalTerm> out;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        RationalTerm t{x.scale * y.scale, x.factors};
        t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
        out.push_back(std::move(t));
      }
    return RationalFunction(std::move(out));
  }

 private:
  std::vector<RationalTerm> terms_;
};

inline RationalFunction lambda_p(const RationalFunction& lambda) { return lambda.derivative(); }

inline LaurentSeries expand_at(const RationalFunction& f, const MarkedPoint& pt, int depth) {
  return f.expand_at(pt, depth);
}

struct GenericityOptions {
  double min_distance = 1e-6;
  double normalization_tol = 1e-10;
};

/// Checks distinctness and, for s = 0, the sum rule.
inline void check_coordinates(const SuperpotentialSpec& spec, const RawCoordinates& x,
                              const GenericityOptions& opt = {}) {
  if (static_cast<int>(x.zeros.size()) != spec.L || static_cast<int>(x.poles.size()) != spec.K())
    throw Error(ErrorKind::InvalidInput, "coordinate counts do not match the specification");
  std::vector<Coefficient> pts = x.zeros;
  pts.insert(pts.end(), x.poles.begin(), x.poles.end());
  if (spec.s == 1) pts.push_back(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < opt.min_distance)
        throw Error(ErrorKind::CoincidentPoints,
                    "zeros, poles and marked points must be pairwise separated by " +
                        std::to_string(opt.min_distance));
  if (spec.s == 0) {
    Coefficient d{};
    double scale = 1.0;
    for (const auto& a : x.zeros) {
      d += a;
      scale = std::max(scale, std::abs(a));
    }
    for (int k = 0; k < spec.K(); ++k) {
      d -= static_cast<double>(spec.poles[k]) * x.poles[k];
      scale = std::max(scale, std::abs(x.poles[k]));
    }
    if (std::abs(d) > opt.normalization_tol * scale)
      throw Error(ErrorKind::NormalizationViolated, "sum of zeros differs from weighted sum of poles");
  }
}

inline RationalFunction build_lambda(const SuperpotentialSpec& spec, const RawCoordinates& x,
                                     const GenericityOptions& opt = {}) {
  check_coordinates(spec, x, opt);
  RationalTerm t;
  for (const auto& a : x.zeros) t.factors.push_back({a, 1});
  if (spec.m0 != 0) t.factors.push_back({0.0, -spec.m0});
  for (int k = 0; k < spec.K(); ++k) t.factors.push_back({x.poles[k], -spec.poles[k]});
  return RationalFunction({t});
}

/// Derivatives of lambda along the free coordinates.
inline std::vector<RationalFunction> tangent_basis(const SuperpotentialSpec& spec,
                                                   const RawCoordinates& x) {
  const RationalFunction lambda = build_lambda(spec, x);
  const RationalTerm& base = lambda.terms().front();
  auto divided = [&](Coefficient root, int dpow, Coefficient c) {
    RationalTerm t = base;
    t.scale *= c;
    t.factors.push_back({root, dpow});
    return RationalFunction({t});
  };
  std::vector<RationalFunction> out;
  const auto zero_dir = [&](int i) { return divided(x.zeros[i], -1, -1.0); };
  const auto pole_dir = [&](int k) {
    return divided(x.poles[k], -1, static_cast<double>(spec.poles[k]));
  };
  for (int i = 0; i < spec.free_zeros(); ++i) {
    if (spec.s == 0) out.push_back(zero_dir(i) - zero_dir(spec.L - 1));
    else out.push_back(zero_dir(i));
  }
  for (int k = 0; k < spec.K(); ++k) {
    if (spec.s == 0)
      out.push_back(pole_dir(k) + static_cast<double>(spec.poles[k]) * zero_dir(spec.L - 1));
    else out.push_back(pole_dir(k));
  }
  return out;
}

/// A superpotential at one point of its family, with derived data cached.
struct ManifoldPoint {
  SuperpotentialSpec spec;
  RawCoordinates raw;
  RationalFunction lambda;
  RationalFunction lambda_p;
  std::vector<RationalFunction> tangent;

  static std::shared_ptr<const ManifoldPoint> make(const SuperpotentialSpec& spec,
                                                   const RawCoordinates& raw,
                                                   const GenericityOptions& opt = {}) {
    auto v = validate(spec);
    if (!v.admissible()) throw Error(ErrorKind::InadmissibleCase, v.reason);
    auto mp = std::make_shared<ManifoldPoint>();
    mp->spec = spec;
    mp->raw = raw;
    mp->lambda = build_lambda(spec, raw, opt);
    mp->lambda_p = mp->lambda.derivative();
    mp->tangent = tangent_basis(spec, raw);
    return mp;
  }

  int n() const noexcept { return spec.n(); }
  int dimension() const noexcept { return spec.dimension(); }

  /// Poles of lambda: infinity, the origin when it is a pole, then v_1..v_K.
  std::vector<MarkedPoint> marked_points() const {
    std::vector<MarkedPoint> out{MarkedPoint::infinity()};
    if (spec.origin_is_pole()) out.push_back(MarkedPoint::zero());
    for (int k = 0; k < spec.K(); ++k) out.push_back(MarkedPoint::finite(k + 1, raw.poles[k]));
    return out;
  }

  /// Pole order of lambda at the point (n at infinity).
  int degree_at(const MarkedPoint& pt) const {
    switch (pt.kind) {
      case MarkedPoint::Kind::Infinity: return spec.n();
      case MarkedPoint::Kind::Zero: return spec.m0;
      case MarkedPoint::Kind::Finite: return spec.poles.at(static_cast<std::size_t>(pt.index - 1));
    }
    return 0;
  }

  /// E = lambda - (1/n) p lambda_p
  RationalFunction euler_field() const {
    return lambda - (1.0 / static_cast<double>(n())) * (RationalFunction::monomial(0.0, 1) * lambda_p);
  }

  /// The tangent space is factor^-1 C_{N-1}[p].
  RationalFunction tangent_factor_inverse() const {
    RationalTerm t;
    if (spec.m0 != 0) t.factors.push_back({0.0, -spec.m0});
    for (int k = 0; k < spec.K(); ++k) t.factors.push_back({raw.poles[k], -spec.poles[k] - 1});
    return RationalFunction({t});
  }

  /// Default number of coefficients kept in expansions.
  int default_depth() const noexcept {
    return 4 * (dimension() + n() + spec.max_multiplicity()) + 12;
  }
};

// ---------------------------------------------------------------------------
// Partial-fraction chart

/// lambda = polynomial(p) + sum_j c0_j p^-j + sum_k sum_j c_kj (p - v_k)^-j
struct PartialFractions {
  std::vector<Coefficient> polynomial;  // ascending coefficients, monic
  std::vector<Coefficient> origin;      // coefficients of p^-1, p^-2, ...
  struct Pole {
    Coefficient location;
    std::vector<Coefficient> principal;  // coefficients of (p-v)^-1, (p-v)^-2, ...
  };
  std::vector<Pole> poles;
};

namespace poly {

using Poly = std::vector<Coefficient>;  // ascending

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Coefficient{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Coefficient{});
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Poly linear_power(Coefficient root, int k) {
  Poly out{1.0};
  for (int i = 0; i < k; ++i) out = mul(out, {-root, 1.0});
  return out;
}

inline Coefficient eval(const Poly& a, Coefficient x) {
  Coefficient acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Roots of a polynomial via its companion matrix, polished by Newton steps.
inline std::vector<Coefficient> roots(Poly a, double tol = 1e-12) {
  while (a.size() > 1 && a.back() == Coefficient{}) a.pop_back();
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Coefficient> out(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  Poly da(static_cast<std::size_t>(deg));
  for (int i = 1; i <= deg; ++i) da[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) * a[static_cast<std::size_t>(i)];
  for (auto& r : out) {
    for (int it = 0; it < 50; ++it) {
      const Coefficient f = eval(a, r), df = eval(da, r);
      if (df == Coefficient{}) break;
      const Coefficient step = f / df;
      r -= step;
      if (std::abs(step) <= tol * std::max(1.0, std::abs(r))) break;
    }
  }
  return out;
}

}  // namespace poly

/// Converts the partial-fraction chart to factored coordinates.
inline RawCoordinates raw_from_partial_fractions(const SuperpotentialSpec& spec,
                                                 const PartialFractions& pf) {
  if (static_cast<int>(pf.poles.size()) != spec.K())
    throw Error(ErrorKind::InvalidInput, "pole count does not match the specification");
  if (static_cast<int>(pf.polynomial.size()) != spec.n() + 1 ||
      std::abs(pf.polynomial.back() - Coefficient(1.0)) > 1e-14)
    throw Error(ErrorKind::InvalidInput, "polynomial part must be monic of degree n");
  const int origin_order = std::max(spec.m0, 0);
  if (static_cast<int>(pf.origin.size()) > origin_order)
    throw Error(ErrorKind::InvalidInput, "principal part at the origin exceeds its pole order");
  poly::Poly denom = poly::linear_power(0.0, origin_order);
  for (int k = 0; k < spec.K(); ++k) {
    if (static_cast<int>(pf.poles[k].principal.size()) != spec.poles[k])
      throw Error(ErrorKind::InvalidInput, "principal part length must equal the pole multiplicity");
    denom = poly::mul(denom, poly::linear_power(pf.poles[k].location, spec.poles[k]));
  }
  poly::Poly num = poly::mul(pf.polynomial, denom);
  // denom / (p - point)^j, point being the origin (which < 0) or pole `which`
  auto cofactor = [&](int which, int j) {
    poly::Poly rest = poly::linear_power(0.0, which < 0 ? origin_order - j : origin_order);
    for (int k = 0; k < spec.K(); ++k)
      rest = poly::mul(rest, poly::linear_power(pf.poles[k].location,
                                                k == which ? spec.poles[k] - j : spec.poles[k]));
    return rest;
  };
  for (std::size_t j = 0; j < pf.origin.size(); ++j) {
    auto c = cofactor(-1, static_cast<int>(j) + 1);
    for (auto& x : c) x *= pf.origin[j];
    num = poly::add(num, c);
  }
  for (int k = 0; k < spec.K(); ++k)
    for (int j = 0; j < spec.poles[k]; ++j) {
      auto c = cofactor(k, j + 1);
      for (auto& x : c) x *= pf.poles[k].principal[static_cast<std::size_t>(j)];
      num = poly::add(num, c);
    }
  if (spec.m0 < 0) {
    // a fixed simple zero at the origin
    double scale = 0.0;
    for (const auto& c : num) scale = std::max(scale, std::abs(c));
    if (std::abs(num.front()) > 1e-10 * std::max(scale, 1.0))
      throw Error(ErrorKind::InvalidInput, "lambda must vanish at the origin when m0 = -1");
    num.erase(num.begin());
  }
  RawCoordinates raw;
  raw.zeros = poly::roots(num);
  if (static_cast<int>(raw.zeros.size()) != spec.L)
    throw Error(ErrorKind::InvalidInput, "numerator degree does not match the zero count");
  for (const auto& p : pf.poles) raw.poles.push_back(p.location);
  if (spec.s == 0) {
    // restore the sum rule exactly on the dependent zero
    Coefficient d{};
    for (int k = 0; k < spec.K(); ++k) d += static_cast<double>(spec.poles[k]) * raw.poles[k];
    for (int i = 0; i + 1 < spec.L; ++i) d -= raw.zeros[i];
    if (std::abs(d - raw.zeros.back()) > 1e-8 * std::max(1.0, std::abs(d)))
      throw Error(ErrorKind::NormalizationViolated, "partial fractions violate the sum rule");
    raw.zeros.back() = d;
  }
  return raw;
}

/// Random generic coordinates for a specification. Drawn in the partial-fraction
/// chart with O(1) coefficients, like the examples; drawing the zeros directly
/// gives large, nearly cancelling residues whenever two poles come close.
inline RawCoordinates sample_raw(const SuperpotentialSpec& spec, std::mt19937_64& rng,
                                 double radius = 1.5, double separation = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), size(0.5, 1.5), phase(-std::numbers::pi, std::numbers::pi);
  auto disk = [&](double r) {
    for (;;) {
      Coefficient z(u(rng), u(rng));
      if (std::abs(z) <= 1.0) return r * z;
    }
  };
  auto leading = [&] { return std::polar(size(rng), phase(rng)); };
  const int n = spec.L - spec.m0 - std::accumulate(spec.poles.begin(), spec.poles.end(), 0);
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative degree at infinity");
  const double pole_gap = 2.5 * separation;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PartialFractions pf;
    pf.polynomial.assign(static_cast<std::size_t>(n) + 1, Coefficient{});
    pf.polynomial[static_cast<std::size_t>(n)] = 1.0;
    for (int i = 0; i < n; ++i) pf.polynomial[static_cast<std::size_t>(i)] = disk(1.0);
    if (spec.s == 0 && n >= 1) pf.polynomial[static_cast<std::size_t>(n) - 1] = 0.0;  // sum rule
    for (int j = 1; j <= spec.m0; ++j) pf.origin.push_back(j == spec.m0 ? leading() : disk(1.0));
    bool spaced = true;
    for (int k = 0; k < spec.K(); ++k) {
      PartialFractions::Pole pole{disk(radius), {}};
      for (int j = 1; j <= spec.poles[k]; ++j) pole.principal.push_back(j == spec.poles[k] ? leading() : disk(1.0));
      if ((spec.s == 1 || spec.m0 != 0) && std::abs(pole.location) < pole_gap) spaced = false;
      for (const auto& q : pf.poles) spaced = spaced && std::abs(q.location - pole.location) >= pole_gap;
      pf.poles.push_back(std::move(pole));
    }
    if (!spaced) continue;
    if (spec.m0 < 0) {
      // lambda(0) = 0: absorb the value at the origin into the constant term,
      // or into the first residue when there is no free constant
      Coefficient at0 = poly::eval(pf.polynomial, 0.0);
      for (const auto& q : pf.poles)
        for (std::size_t j = 0; j < q.principal.size(); ++j)
          at0 += q.principal[j] * std::pow(-q.location, -static_cast<int>(j + 1));
      if (n >= 1) pf.polynomial[0] -= at0;
      else if (!pf.poles.empty()) pf.poles[0].principal[0] += at0 * pf.poles[0].location;
    }
    try {
      RawCoordinates x = raw_from_partial_fractions(spec, pf);
      check_coordinates(spec, x, {separation, 1e-10});
      return x;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::DegeneratePoint, "could not sample separated coordinates");
}

}  // namespace frob
