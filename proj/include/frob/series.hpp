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

// Truncated Laurent and Puiseux series at marked points of the sphere.
//
// A series is stored through the uniformizer z of its point (z = 1/p at
// infinity, z = p at zero, z = p - v at a finite point).  Coefficients are
// kept from a starting valuation on; everything below it is zero by
// construction.  Above the last stored valuation the coefficients are
// unknown, unless the series is flagged exact, in which case they are zero.
// Exponents reported to callers are exponents of the local parameter
// (p at infinity and at zero, p - v elsewhere), so at infinity exponent and
// valuation differ by a sign.

#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "frob/errors.hpp"
#include "frob/rational.hpp"

namespace frob {

using Coefficient = std::complex<double>;

struct MarkedPoint {
  enum class Kind { Infinity, Zero, Finite };

  Kind kind = Kind::Infinity;
  int index = 0;
  Coefficient value{};

  static MarkedPoint infinity() { return {}; }
  static MarkedPoint zero() { return {Kind::Zero, 0, {}}; }
  static MarkedPoint finite(int index, Coefficient value) { return {Kind::Finite, index, value}; }

  bool is_infinity() const noexcept { return kind == Kind::Infinity; }
  bool is_zero() const noexcept { return kind == Kind::Zero; }
  bool is_finite() const noexcept { return kind == Kind::Finite; }
  Coefficient location() const noexcept { return kind == Kind::Finite ? value : Coefficient{}; }

  // exponent = orientation * valuation
  int orientation() const noexcept { return is_infinity() ? -1 : 1; }

  std::string name() const {
    switch (kind) {
      case Kind::Infinity: return "inf";
      case Kind::Zero: return "0";
      case Kind::Finite: return "v" + std::to_string(index);
    }
    return "?";
  }

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

class LaurentSeries {
 public:
  LaurentSeries() : c_(1, Coefficient{}), exact_(true) {}

  /// coefficients[i] multiplies the local parameter to the power lo + i.
  LaurentSeries(MarkedPoint point, int lo, std::vector<Coefficient> coefficients, bool exact = false)
      : point_(point), exact_(exact) {
    if (coefficients.empty()) {
      if (!exact) throw Error(ErrorKind::EmptyWindow, "no known coefficients");
      coefficients.push_back(0.0);
    }
    if (point.is_infinity()) {
      std::reverse(coefficients.begin(), coefficients.end());
      v0_ = -(lo + static_cast<int>(coefficients.size()) - 1);
    } else {
      v0_ = lo;
    }
    c_ = std::move(coefficients);
    check_finite();
  }

  static LaurentSeries from_valuations(MarkedPoint point, int v0, std::vector<Coefficient> c,
                                       bool exact) {
    LaurentSeries out;
    out.point_ = point;
    out.v0_ = v0;
    out.exact_ = exact;
    if (c.empty()) {
      if (!exact) throw Error(ErrorKind::EmptyWindow, "no known coefficients");
      c.push_back(0.0);
    }
    out.c_ = std::move(c);
    out.check_finite();
    return out;
  }

  static LaurentSeries zero(MarkedPoint point) { return from_valuations(point, 0, {0.0}, true); }

  static LaurentSeries monomial(MarkedPoint point, int exponent, Coefficient c = 1.0) {
    return from_valuations(point, point.orientation() * exponent, {c}, true);
  }

  static LaurentSeries constant(MarkedPoint point, Coefficient c) { return monomial(point, 0, c); }

  const MarkedPoint& point() const noexcept { return point_; }
  bool exact() const noexcept { return exact_; }

  int valuation() const noexcept { return v0_; }
  int count() const noexcept { return static_cast<int>(c_.size()); }
  int valuation_end() const noexcept { return v0_ + count(); }
  const std::vector<Coefficient>& data() const noexcept { return c_; }

  /// Exponent window of stored coefficients.
  int lo() const noexcept {
    return point_.is_infinity() ? -(valuation_end() - 1) : v0_;
  }
  int hi() const noexcept { return point_.is_infinity() ? -v0_ : valuation_end() - 1; }

  bool known_valuation(int w) const noexcept { return w < valuation_end() || exact_; }
  bool known(int exponent) const noexcept {
    return known_valuation(point_.orientation() * exponent);
  }

  Coefficient at_valuation(int w) const {
    if (w < v0_) return 0.0;
    if (w >= valuation_end()) {
      if (exact_) return 0.0;
      std::ostringstream os;
      os << "coefficient of exponent " << point_.orientation() * w << " at " << point_.name()
         << " outside window [" << lo() << ", " << hi() << "]";
      throw Error(ErrorKind::InsufficientWindow, os.str());
    }
    return c_[static_cast<std::size_t>(w - v0_)];
  }

  Coefficient operator[](int exponent) const { return at_valuation(point_.orientation() * exponent); }

  /// Valuation of the first nonzero stored coefficient.
  std::optional<int> leading_valuation() const noexcept {
    for (int i = 0; i < count(); ++i)
      if (c_[static_cast<std::size_t>(i)] != Coefficient{}) return v0_ + i;
    return std::nullopt;
  }

  std::optional<int> leading_exponent() const noexcept {
    auto w = leading_valuation();
    if (!w) return std::nullopt;
    return point_.orientation() * *w;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : c_) m = worst(m, std::abs(c));
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[" << point_.name() << " " << lo() << ".." << hi() << (exact_ ? " exact" : "") << "]";
    for (int e = hi(); e >= lo(); --e) {
      const Coefficient c = (*this)[e];
      if (c != Coefficient{}) os << " + (" << c.real() << "," << c.imag() << ")^" << e;
    }
    return os.str();
  }

 private:
  void check_finite() const {
    for (const auto& c : c_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw Error(ErrorKind::InvalidInput, "non-finite coefficient");
  }

  MarkedPoint point_{};
  int v0_ = 0;
  std::vector<Coefficient> c_;
  bool exact_ = true;
};

namespace detail {

inline void require_same_point(const LaurentSeries& f, const LaurentSeries& g) {
  if (!(f.point() == g.point()))
    throw Error(ErrorKind::MixedPoints, f.point().name() + " vs " + g.point().name());
}

// Truncated power series helpers on plain coefficient vectors (index = order in z).
inline std::vector<Coefficient> mul_trunc(const std::vector<Coefficient>& a,
                                          const std::vector<Coefficient>& b, std::size_t n) {
  std::vector<Coefficient> out(n, Coefficient{});
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == Coefficient{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Splits f = c z^w (1 + x).  Returns {w, c, normalized coefficients, available count}.
struct UnitSplit {
  int valuation;
  Coefficient leading;
  std::vector<Coefficient> unit;  // unit[0] == 1
};

inline UnitSplit split_leading(const LaurentSeries& f) {
  auto w = f.leading_valuation();
  if (!w) throw Error(ErrorKind::ZeroLeadingTerm, "series has no nonzero known coefficient");
  UnitSplit out{*w, f.at_valuation(*w), {}};
  out.unit.reserve(static_cast<std::size_t>(f.valuation_end() - *w));
  for (int v = *w; v < f.valuation_end(); ++v) out.unit.push_back(f.at_valuation(v) / out.leading);
  return out;
}

inline bool is_monomial(const UnitSplit& u) {
  for (std::size_t i = 1; i < u.unit.size(); ++i)
    if (u.unit[i] != Coefficient{}) return false;
  return true;
}

inline std::size_t result_terms(const LaurentSeries& f, const UnitSplit& u,
                                std::optional<int> terms) {
  const std::size_t available = u.unit.size();
  if (f.exact()) {
    if (!terms) throw Error(ErrorKind::InvalidInput, "term count required for exact input");
    return static_cast<std::size_t>(std::max(*terms, 1));
  }
  return terms ? std::min(available, static_cast<std::size_t>(std::max(*terms, 1))) : available;
}

}  // namespace detail

inline LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_point(f, g);
  const int v0 = std::min(f.valuation(), g.valuation());
  int end;
  if (f.exact() && g.exact()) {
    end = std::max(f.valuation_end(), g.valuation_end());
  } else {
    end = INT_MAX;
    if (!f.exact()) end = std::min(end, f.valuation_end());
    if (!g.exact()) end = std::min(end, g.valuation_end());
  }
  if (end <= v0) throw Error(ErrorKind::EmptyWindow, "sum has no sound coefficient");
  std::vector<Coefficient> c(static_cast<std::size_t>(end - v0));
  for (int w = v0; w < end; ++w) c[static_cast<std::size_t>(w - v0)] = f.at_valuation(w) + g.at_valuation(w);
  return LaurentSeries::from_valuations(f.point(), v0, std::move(c), f.exact() && g.exact());
}

inline LaurentSeries scale(const LaurentSeries& f, Coefficient a) {
  auto c = f.data();
  for (auto& x : c) x *= a;
  return LaurentSeries::from_valuations(f.point(), f.valuation(), std::move(c), f.exact());
}

inline LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_point(f, g);
  const int cf = f.count(), cg = g.count();
  int n;
  if (f.exact() && g.exact()) n = cf + cg - 1;
  else if (f.exact()) n = cg;
  else if (g.exact()) n = cf;
  else n = std::min(cf, cg);
  if (n <= 0) throw Error(ErrorKind::EmptyWindow, "product has no sound coefficient");
  auto c = detail::mul_trunc(f.data(), g.data(), static_cast<std::size_t>(n));
  return LaurentSeries::from_valuations(f.point(), f.valuation() + g.valuation(), std::move(c),
                                        f.exact() && g.exact());
}

inline LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return add(f, g); }
inline LaurentSeries operator-(const LaurentSeries& f) { return scale(f, -1.0); }
inline LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) {
  return add(f, scale(g, -1.0));
}
inline LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) { return mul(f, g); }
inline LaurentSeries operator*(Coefficient a, const LaurentSeries& f) { return scale(f, a); }

/// Keeps only the first `n` stored coefficients.
inline LaurentSeries truncate(const LaurentSeries& f, int n) {
  if (f.exact() && n >= f.count()) return f;
  n = std::min(n, f.count());
  std::vector<Coefficient> c(f.data().begin(), f.data().begin() + std::max(n, 0));
  return LaurentSeries::from_valuations(f.point(), f.valuation(), std::move(c), false);
}

enum class Side { geq, lt };

/// [f]_{>=k} or [f]_{<k} in exponents of the local parameter.
inline LaurentSeries project(const LaurentSeries& f, int k, Side side) {
  const bool inf = f.point().is_infinity();
  // The kept part lies on the closed (low valuation) side when it is finite.
  const bool head = (inf && side == Side::geq) || (!inf && side == Side::lt);
  const int cut = inf ? -k : k;  // valuation of exponent k
  auto c = f.data();
  if (head) {
    const int last = inf ? cut : cut - 1;  // last kept valuation
    if (!f.exact() && last >= f.valuation_end() && last >= f.valuation()) {
      std::ostringstream os;
      os << "projection at " << f.point().name() << " needs exponent " << (inf ? k : k - 1)
         << ", window is [" << f.lo() << ", " << f.hi() << "]";
      throw Error(ErrorKind::InsufficientWindow, os.str());
    }
    for (int w = f.valuation(); w < f.valuation_end(); ++w)
      if (w > last) c[static_cast<std::size_t>(w - f.valuation())] = 0.0;
    return LaurentSeries::from_valuations(f.point(), f.valuation(), std::move(c), true);
  }
  const int first = inf ? cut + 1 : cut;  // first kept valuation
  for (int w = f.valuation(); w < f.valuation_end(); ++w)
    if (w < first) c[static_cast<std::size_t>(w - f.valuation())] = 0.0;
  return LaurentSeries::from_valuations(f.point(), f.valuation(), std::move(c), f.exact());
}

/// Coefficient [f]_k as a constant series.
inline Coefficient coefficient(const LaurentSeries& f, int exponent) { return f[exponent]; }

/// Series of p^k expanded at `point`; `terms` bounds truncated expansions.
inline LaurentSeries p_power(const MarkedPoint& point, int k, int terms) {
  if (!point.is_finite()) return LaurentSeries::monomial(point, k);
  const Coefficient v = point.value;
  if (v == Coefficient{}) throw Error(ErrorKind::CoincidentPoints, "finite point at the origin");
  // (v + z)^k = v^k sum_j binom(k, j) (z / v)^j
  const int n = k >= 0 ? k + 1 : std::max(terms, 1);
  std::vector<Coefficient> c(static_cast<std::size_t>(n));
  Coefficient term = std::pow(v, k);
  for (int j = 0; j < n; ++j) {
    c[static_cast<std::size_t>(j)] = term;
    term *= static_cast<double>(k - j) / static_cast<double>(j + 1) / v;
  }
  return LaurentSeries::from_valuations(point, 0, std::move(c), k >= 0);
}

/// The derivation p^s d/dp.
inline LaurentSeries derive(const LaurentSeries& f, int s) {
  const auto& pt = f.point();
  if (!pt.is_finite()) {
    // p^e -> e p^(e+s-1)
    std::vector<Coefficient> c(f.data().size());
    for (int i = 0; i < f.count(); ++i) {
      const int w = f.valuation() + i;
      c[static_cast<std::size_t>(i)] = static_cast<double>(pt.orientation() * w) * f.data()[static_cast<std::size_t>(i)];
    }
    const int shift = pt.is_infinity() ? 1 - s : s - 1;
    return LaurentSeries::from_valuations(pt, f.valuation() + shift, std::move(c), f.exact());
  }
  std::vector<Coefficient> c(f.data().size());
  for (int i = 0; i < f.count(); ++i) {
    const int w = f.valuation() + i;
    c[static_cast<std::size_t>(i)] = static_cast<double>(w) * f.data()[static_cast<std::size_t>(i)];
  }
  auto dz = LaurentSeries::from_valuations(pt, f.valuation() - 1, std::move(c), f.exact());
  if (s == 0) return dz;
  return mul(dz, p_power(pt, s, 1));
}

inline Coefficient residue(const LaurentSeries& f) {
  return f.point().is_infinity() ? -f[-1] : f[-1];
}

/// Tr(f) = eps res(p^-s f), eps = -1 at infinity.
inline Coefficient trace(const LaurentSeries& f, int s) {
  const auto& pt = f.point();
  if (!pt.is_finite() || s == 0) return f[s - 1];
  // res_v of f/(v + z): sum over negative orders of f against the geometric series.
  const Coefficient v = pt.value;
  Coefficient acc{};
  for (int w = std::min(f.valuation(), 0); w <= -1; ++w) {
    const Coefficient a = f.at_valuation(w);
    if (a == Coefficient{}) continue;
    const int j = -1 - w;
    acc += a * (j % 2 == 0 ? 1.0 : -1.0) / std::pow(v, -w);
  }
  return acc;
}

/// 1/f by Newton iteration on the unit part; `terms` is required for exact input.
inline LaurentSeries inverse(const LaurentSeries& f, std::optional<int> terms = std::nullopt) {
  auto u = detail::split_leading(f);
  if (f.exact() && detail::is_monomial(u))
    return LaurentSeries::from_valuations(f.point(), -u.valuation, {1.0 / u.leading}, true);
  const std::size_t n = detail::result_terms(f, u, terms);
  std::vector<Coefficient> g{1.0};
  std::size_t prec = 1;
  while (prec < n) {
    prec = std::min(2 * prec, n);
    auto e = detail::mul_trunc(u.unit, g, prec);
    for (auto& x : e) x = -x;
    e[0] += 1.0;
    auto corr = detail::mul_trunc(g, e, prec);
    g.resize(prec, Coefficient{});
    for (std::size_t i = 0; i < prec; ++i) g[i] += corr[i];
  }
  for (auto& x : g) x /= u.leading;
  return LaurentSeries::from_valuations(f.point(), -u.valuation, std::move(g), false);
}

/// Series in (local parameter)^(1/r); the body is stored as a Laurent series
/// whose exponents are r times the true exponents.
struct PuiseuxSeries {
  int ramification = 1;
  LaurentSeries body;
  Coefficient leading{1.0};  // branch value chosen for c^q

  /// Coefficient of local^(e / r).
  Coefficient coefficient(Rational exponent) const {
    const Rational scaled = exponent * Rational(ramification);
    if (!scaled.is_integer()) return 0.0;
    return body[static_cast<int>(scaled.num())];
  }

  /// Drops to integral exponents; fractional ones must vanish.
  LaurentSeries to_laurent(double tol = 0.0) const {
    const int r = ramification;
    if (r == 1) return body;
    const double scale_ref = std::max(body.max_abs(), 1.0);
    for (int w = body.valuation(); w < body.valuation_end(); ++w) {
      if (w % r == 0) continue;
      const double a = std::abs(body.at_valuation(w));
      if (a > tol * scale_ref) {
        std::ostringstream os;
        os << "fractional exponent " << body.point().orientation() * w << "/" << r
           << " has coefficient " << a;
        throw Error(ErrorKind::FractionalLeakage, os.str());
      }
    }
    const int v0 = detail::ceil_div(body.valuation(), r);
    const int last = detail::floor_div(body.valuation_end() - 1, r);
    std::vector<Coefficient> c;
    for (int w = v0; w <= last; ++w) c.push_back(body.at_valuation(w * r));
    return LaurentSeries::from_valuations(body.point(), v0, std::move(c), body.exact());
  }
};

/// f^q with the principal branch for the leading coefficient unless
/// `log_leading` supplies a continued logarithm of it.
inline PuiseuxSeries pow_rational(const LaurentSeries& f, Rational q,
                                  std::optional<int> terms = std::nullopt,
                                  std::optional<Coefficient> log_leading = std::nullopt) {
  if (q == Rational(0)) return {1, LaurentSeries::constant(f.point(), 1.0), 1.0};
  auto u = detail::split_leading(f);
  const Coefficient lead =
      log_leading ? std::exp(q.to_double() * *log_leading) : std::pow(u.leading, q.to_double());
  const int r = static_cast<int>(q.den());
  const int body_v0 = u.valuation * static_cast<int>(q.num());

  if (f.exact() && q.is_integer() && q.num() > 0) {
    LaurentSeries base = LaurentSeries::from_valuations(f.point(), 0, u.unit, true);
    LaurentSeries acc = LaurentSeries::constant(f.point(), 1.0);
    for (std::int64_t i = 0; i < q.num(); ++i) acc = mul(acc, base);
    auto c = acc.data();
    for (auto& x : c) x *= lead;
    return {1, LaurentSeries::from_valuations(f.point(), body_v0, std::move(c), true), lead};
  }
  if (f.exact() && detail::is_monomial(u))
    return {r, LaurentSeries::from_valuations(f.point(), body_v0, {lead}, true), lead};

  const std::size_t n = detail::result_terms(f, u, terms);
  // g = h^q with h_0 = 1: g_k = (1/k) sum_{j=1..k} ((q+1) j - k) h_j g_{k-j}
  const double qd = q.to_double();
  std::vector<Coefficient> g(n, Coefficient{});
  g[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    Coefficient acc{};
    for (std::size_t j = 1; j <= k && j < u.unit.size(); ++j)
      acc += ((qd + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * u.unit[j] * g[k - j];
    g[k] = acc / static_cast<double>(k);
  }
  std::vector<Coefficient> body(static_cast<std::size_t>(r) * (n - 1) + 1, Coefficient{});
  for (std::size_t k = 0; k < n; ++k) body[k * static_cast<std::size_t>(r)] = lead * g[k];
  return {r, LaurentSeries::from_valuations(f.point(), body_v0, std::move(body), false), lead};
}

/// log f for f with leading exponent 0.
inline LaurentSeries log_unit(const LaurentSeries& f, std::optional<int> terms = std::nullopt,
                              std::optional<Coefficient> log_leading = std::nullopt) {
  auto u = detail::split_leading(f);
  if (u.valuation != 0) {
    std::ostringstream os;
    os << "leading exponent " << f.point().orientation() * u.valuation << " is not 0";
    throw Error(ErrorKind::NonUnitInput, os.str());
  }
  const Coefficient l0 = log_leading ? *log_leading : std::log(u.leading);
  if (f.exact() && detail::is_monomial(u)) return LaurentSeries::constant(f.point(), l0);
  const std::size_t n = detail::result_terms(f, u, terms);
  // L_k = h_k - (1/k) sum_{j=1..k-1} j L_j h_{k-j}
  std::vector<Coefficient> l(n, Coefficient{});
  l[0] = l0;
  for (std::size_t k = 1; k < n; ++k) {
    Coefficient acc = k < u.unit.size() ? u.unit[k] : Coefficient{};
    for (std::size_t j = 1; j < k; ++j)
      if (k - j < u.unit.size()) acc -= static_cast<double>(j) * l[j] * u.unit[k - j] / static_cast<double>(k);
    l[k] = acc;
  }
  return LaurentSeries::from_valuations(f.point(), 0, std::move(l), false);
}

/// Largest |f - g| over exponents known in both.
inline double max_difference(const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_point(f, g);
  const int v0 = std::min(f.valuation(), g.valuation());
  int end;
  if (f.exact() && g.exact()) end = std::max(f.valuation_end(), g.valuation_end());
  else {
    end = INT_MAX;
    if (!f.exact()) end = std::min(end, f.valuation_end());
    if (!g.exact()) end = std::min(end, g.valuation_end());
  }
  double m = 0.0;
  for (int w = v0; w < end; ++w) m = worst(m, std::abs(f.at_valuation(w) - g.at_valuation(w)));
  return m;
}

}  // namespace frob
