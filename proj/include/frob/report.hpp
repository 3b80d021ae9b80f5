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

// Run configuration, the per-point analysis pipeline and JSON reports.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frob/catalog.hpp"
#include "frob/frobenius.hpp"
#include "frob/hyperdual.hpp"
#include "frob/wdvv.hpp"
#include "json.hpp"

namespace frob {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Tolerances {
  double metric = 1e-9;           // block structure and point independence of eta
  double symmetry = 1e-9;         // of c_abc
  double wdvv = 1e-6;
  double cross_check = 1e-5;      // c against differences of F
  double eta_from_f = 1e-6;
  double nabla_c = 1e-4;
  double homogeneity = 1e-5;
  double unit_action = 1e-10;
  double unit_closed_form = 1e-8;
  double nu_equivalence = 1e-10;  // relative to max(1, |c|)
  double jacobian = 1e-6;         // relative
  double euler = 1e-9;
  double counity = 1e-6;
  double closed_form = 1e-5;      // example oracles
};

struct CoordinateInput {
  enum class Kind { None, Raw, PartialFractions, Named };
  Kind kind = Kind::None;
  RawCoordinates raw;
  PartialFractions fractions;
  std::vector<Coefficient> named;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::optional<std::string> example;
  SuperpotentialSpec spec;
  CoordinateInput coordinates;
  std::uint64_t seed = 1;
  int points = 1;
  Tolerances tol;
  std::string working_point = "inf";
  std::optional<std::string> output;
  bool differentiation_checks = true;  // the verdicts that need chart inversion
  bool timing = false;
};

// ---------------------------------------------------------------------------
// JSON helpers

namespace detail {

inline json to_json(Coefficient z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const std::vector<Coefficient>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline json to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline json to_json(const Eigen::MatrixXcd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline json to_json(const Tensor3& t) {
  json a = json::array();
  for (int i = 0; i < t.extent(); ++i) {
    json m = json::array();
    for (int j = 0; j < t.extent(); ++j) {
      json row = json::array();
      for (int k = 0; k < t.extent(); ++k) row.push_back(to_json(t(i, j, k)));
      m.push_back(row);
    }
    a.push_back(m);
  }
  return a;
}

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const VerdictReport& v) {
  json j;
  j["name"] = v.name;
  j["max_residual"] = finite_or_null(v.max_residual);
  j["tolerance"] = v.tolerance;
  j["passed"] = v.passed;
  j["skipped"] = v.skipped;
  j["points"] = v.points;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

[[noreturn]] inline void bad_input(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

inline Coefficient parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object() && j.contains("re")) {
    const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
    return {j.at("re").get<double>(), im};
  }
  bad_input(where + ": expected a number, [re, im] or {\"re\", \"im\"}");
}

inline std::vector<Coefficient> parse_complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad_input(where + ": expected an array");
  std::vector<Coefficient> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline void only_keys(const json& j, std::set<std::string> allowed, const std::string& where) {
  if (!j.is_object()) bad_input(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) bad_input(where + ": unknown key '" + k + "'");
}

template <class T>
T get_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_number()) bad_input(where + "." + key + ": expected a number");
  return j.at(key).get<T>();
}

}  // namespace detail

inline json spec_to_json(const SuperpotentialSpec& spec) {
  json j;
  j["s"] = spec.s;
  j["L"] = spec.L;
  j["m0"] = spec.m0;
  j["poles"] = spec.poles;
  return j;
}

/// Schema check and conversion; every problem is an InvalidInput error.
inline RunConfig parse_config(const json& j) {
  using namespace detail;
  only_keys(j, {"schema_version", "example", "spec", "coordinates", "seed", "points", "tolerances",
                "working_point", "output", "differentiation_checks", "timing"},
            "config");
  RunConfig cfg;
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
    bad_input("config.schema_version: required integer");
  cfg.schema_version = j.at("schema_version").get<int>();
  if (cfg.schema_version != kSchemaVersion)
    bad_input("config.schema_version: unsupported version " + std::to_string(cfg.schema_version));
  if (j.contains("example")) {
    if (!j.at("example").is_string()) bad_input("config.example: expected a string");
    cfg.example = j.at("example").get<std::string>();
    auto ex = find_example(*cfg.example);
    if (!ex) bad_input("config.example: unknown example '" + *cfg.example + "'");
    cfg.spec = ex->spec;
  }
  if (j.contains("spec")) {
    const auto& s = j.at("spec");
    only_keys(s, {"s", "L", "m0", "poles"}, "config.spec");
    for (const char* k : {"s", "L", "m0"})
      if (!s.contains(k) || !s.at(k).is_number_integer()) bad_input(std::string("config.spec.") + k + ": required integer");
    cfg.spec.s = s.at("s").get<int>();
    cfg.spec.L = s.at("L").get<int>();
    cfg.spec.m0 = s.at("m0").get<int>();
    cfg.spec.poles.clear();
    if (s.contains("poles")) {
      if (!s.at("poles").is_array()) bad_input("config.spec.poles: expected an array of integers");
      for (const auto& m : s.at("poles")) {
        if (!m.is_number_integer()) bad_input("config.spec.poles: expected an array of integers");
        cfg.spec.poles.push_back(m.get<int>());
      }
    }
    if (cfg.example) {
      auto ex = find_example(*cfg.example);
      if (!(ex->spec == cfg.spec)) bad_input("config.spec: does not match example '" + *cfg.example + "'");
    }
  }
  if (!cfg.example && !j.contains("spec")) bad_input("config: either 'example' or 'spec' is required");
  if (j.contains("coordinates")) {
    const auto& c = j.at("coordinates");
    only_keys(c, {"raw", "partial_fractions", "named"}, "config.coordinates");
    if (c.size() != 1) bad_input("config.coordinates: exactly one of raw, partial_fractions, named");
    if (c.contains("raw")) {
      const auto& r = c.at("raw");
      only_keys(r, {"zeros", "poles"}, "config.coordinates.raw");
      cfg.coordinates.kind = CoordinateInput::Kind::Raw;
      cfg.coordinates.raw.zeros = parse_complex_list(r.value("zeros", json::array()), "config.coordinates.raw.zeros");
      cfg.coordinates.raw.poles = parse_complex_list(r.value("poles", json::array()), "config.coordinates.raw.poles");
      if (static_cast<int>(cfg.coordinates.raw.zeros.size()) != cfg.spec.L ||
          static_cast<int>(cfg.coordinates.raw.poles.size()) != cfg.spec.K())
        bad_input("config.coordinates.raw: counts do not match the spec");
    } else if (c.contains("partial_fractions")) {
      const auto& r = c.at("partial_fractions");
      only_keys(r, {"polynomial", "origin", "poles"}, "config.coordinates.partial_fractions");
      cfg.coordinates.kind = CoordinateInput::Kind::PartialFractions;
      auto& pf = cfg.coordinates.fractions;
      pf.polynomial = parse_complex_list(r.at("polynomial"), "config.coordinates.partial_fractions.polynomial");
      pf.origin = parse_complex_list(r.value("origin", json::array()), "config.coordinates.partial_fractions.origin");
      for (const auto& q : r.value("poles", json::array())) {
        only_keys(q, {"location", "principal"}, "config.coordinates.partial_fractions.poles[]");
        pf.poles.push_back({parse_complex(q.at("location"), "location"),
                            parse_complex_list(q.at("principal"), "principal")});
      }
    } else {
      if (!cfg.example) bad_input("config.coordinates.named: requires an example chart");
      cfg.coordinates.kind = CoordinateInput::Kind::Named;
      cfg.coordinates.named = parse_complex_list(c.at("named"), "config.coordinates.named");
      if (static_cast<int>(cfg.coordinates.named.size()) != cfg.spec.dimension())
        bad_input("config.coordinates.named: expected " + std::to_string(cfg.spec.dimension()) + " values");
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad_input("config.seed: expected a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("points")) {
    if (!j.at("points").is_number_integer() || j.at("points").get<int>() < 1)
      bad_input("config.points: expected a positive integer");
    cfg.points = j.at("points").get<int>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    only_keys(t, {"metric", "symmetry", "wdvv", "cross_check", "eta_from_f", "nabla_c", "homogeneity",
                  "unit_action", "unit_closed_form", "nu_equivalence", "jacobian", "euler", "counity",
                  "closed_form"},
              "config.tolerances");
    auto set = [&](const char* k, double& dst) {
      if (t.contains(k)) {
        dst = get_number<double>(t, k, "config.tolerances");
        if (!(dst > 0.0)) bad_input(std::string("config.tolerances.") + k + ": must be positive");
      }
    };
    auto& T = cfg.tol;
    set("metric", T.metric); set("symmetry", T.symmetry); set("wdvv", T.wdvv);
    set("cross_check", T.cross_check); set("eta_from_f", T.eta_from_f); set("nabla_c", T.nabla_c);
    set("homogeneity", T.homogeneity); set("unit_action", T.unit_action);
    set("unit_closed_form", T.unit_closed_form); set("nu_equivalence", T.nu_equivalence);
    set("jacobian", T.jacobian); set("euler", T.euler); set("counity", T.counity);
    set("closed_form", T.closed_form);
  }
  if (j.contains("working_point")) {
    if (!j.at("working_point").is_string()) bad_input("config.working_point: expected a string");
    cfg.working_point = j.at("working_point").get<std::string>();
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) bad_input("config.output: expected a string");
    cfg.output = j.at("output").get<std::string>();
  }
  if (j.contains("differentiation_checks")) {
    if (!j.at("differentiation_checks").is_boolean()) bad_input("config.differentiation_checks: expected a boolean");
    cfg.differentiation_checks = j.at("differentiation_checks").get<bool>();
  }
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) bad_input("config.timing: expected a boolean");
    cfg.timing = j.at("timing").get<bool>();
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::bad_input("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    detail::bad_input(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    detail::bad_input(std::string("config schema error: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Per-point analysis

struct PointAnalysis {
  RawCoordinates raw;
  FlatChart chart;
  EulerData euler;
  FrobeniusTensors tensors;
  UnitField unit;
  Coefficient prepotential{};
  std::optional<std::vector<Coefficient>> named;
  std::vector<VerdictReport> verdicts;
};

/// eta*(dt^a, dt^b) predicted by the label blocks: m delta_{i, m-j} within one point.
inline Eigen::MatrixXcd block_metric(const std::vector<FlatLabel>& labels) {
  const int N = static_cast<int>(labels.size());
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (labels[a].nu == labels[b].nu && labels[a].index == labels[a].order - labels[b].index)
        B(a, b) = static_cast<double>(labels[a].order);
  return B;
}

inline MarkedPoint resolve_working_point(const ManifoldPoint& mp, const std::string& name) {
  for (const auto& pt : mp.marked_points())
    if (pt.name() == name) return pt;
  throw Error(ErrorKind::InvalidInput, "working point '" + name + "' is not a pole of lambda");
}

inline double relative_difference(const Tensor3& a, const Tensor3& b) {
  return max_abs_difference(a, b) / std::max(1.0, a.max_abs());
}

namespace detail {

/// Euler data in an example's named chart, from the canonical labels.
inline bool euler_matches_example(const EulerData& e, const Example& ex, std::string& why) {
  const int N = ex.dimension();
  if (!(e.d == ex.d)) {
    why = "d = " + e.d.str() + ", expected " + ex.d.str();
    return false;
  }
  for (int i = 0; i < N; ++i) {
    Rational shift(0);
    for (int a = 0; a < N; ++a) {
      const Rational& A = ex.chart_map[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
      if (A == Rational(0)) continue;
      if (!(e.weights[static_cast<std::size_t>(a)] == ex.weights[static_cast<std::size_t>(i)])) {
        why = "weight of t" + std::to_string(i + 1) + " is " + e.weights[static_cast<std::size_t>(a)].str() +
              ", expected " + ex.weights[static_cast<std::size_t>(i)].str();
        return false;
      }
      shift = shift + A * e.shifts[static_cast<std::size_t>(a)];
    }
    if (!(shift == ex.shifts[static_cast<std::size_t>(i)])) {
      why = "shift of t" + std::to_string(i + 1) + " is " + shift.str() + ", expected " +
            ex.shifts[static_cast<std::size_t>(i)].str();
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline PointAnalysis analyze_point(const SuperpotentialSpec& spec, const RawCoordinates& raw,
                                   const Example* example, const RunConfig& cfg) {
  const Tolerances& T = cfg.tol;
  PointAnalysis out;
  out.raw = raw;
  auto mp = ManifoldPoint::make(spec, raw);
  out.chart = flat_coordinates(mp);
  const FlatChart& chart = out.chart;
  const int N = chart.dimension();
  auto& V = out.verdicts;

  {
    const Eigen::MatrixXcd fd = jacobian_finite_difference(chart);
    const double r = (chart.jacobian - fd).cwiseAbs().maxCoeff<Eigen::PropagateNaN>() / std::max(1.0, chart.jacobian.cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
    V.push_back(VerdictReport::make("jacobian", r, T.jacobian));
  }
  out.euler = euler_components(chart, std::numeric_limits<double>::infinity());
  V.push_back(VerdictReport::make("euler-components", out.euler.numeric_residual, T.euler));

  const MarkedPoint working = resolve_working_point(*mp, cfg.working_point);
  const OperatorContext ctx(mp, working, chart.depth);
  out.tensors = structure_constants(chart, ctx);
  const auto& ft = out.tensors;
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ft.eta_upper);
    const auto sv = svd.singularValues();
    if (sv(sv.size() - 1) == 0.0 || sv(0) / sv(sv.size() - 1) > 1e10)
      throw Error(ErrorKind::DegeneratePoint, "metric condition number above 1e10");
  }
  V.push_back(VerdictReport::make("metric-blocks", (ft.eta_upper - block_metric(chart.labels)).cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), T.metric));
  V.push_back(VerdictReport::make("c-symmetry", asymmetry(ft.c_lower), T.symmetry));
  V.push_back(check_wdvv(ft.c_lower, ft.eta_upper, T.wdvv));

  {
    double r = 0.0;
    for (const auto& pt : mp->marked_points()) {
      if (pt == working) continue;
      const auto other = structure_constants(chart, pt);
      r = worst(r, (other.eta_upper - ft.eta_upper).cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
      r = worst(r, relative_difference(ft.c_lower, other.c_lower));
    }
    V.push_back(VerdictReport::make("nu-equivalence", r, T.nu_equivalence));
  }

  out.unit = unit_field(ft, spec);
  V.push_back(VerdictReport::make("unit-action", unit_action_residual(out.unit, ft, ctx), T.unit_action));
  if (auto closed = closed_form_unit(chart)) {
    V.push_back(VerdictReport::make("unit-closed-form", (out.unit.components - *closed).cwiseAbs().maxCoeff<Eigen::PropagateNaN>(), T.unit_action));
  } else {
    V.push_back(VerdictReport::skip("unit-closed-form", "unit field is not flat"));
  }

  out.prepotential = prepotential(chart);

  if (cfg.differentiation_checks) {
    const auto F = prepotential_field(chart);
    StencilOptions stencil;
    stencil.target = 0.01 * std::min(T.cross_check, T.eta_from_f);
    stencil.max_halvings = 6;
    const auto fd = third_derivatives(F, chart.values, stencil);
    V.push_back(VerdictReport::make("prepotential-cross-check", max_abs_difference(fd.value, ft.c_lower), T.cross_check));
    V.push_back(check_eta_from_F(fd.value, out.unit.components, ft.eta_lower, out.unit.flat, T.eta_from_f));
    const auto field = frobenius_field(chart, working);
    const TensorField cfield = [field](const std::vector<Coefficient>& t) { return field(t).c_lower; };
    V.push_back(check_nabla_c_symmetry(cfield, chart.values, T.nabla_c));
    V.push_back(check_quasi_homogeneity(cfield, chart.values, out.euler, out.euler.d.to_double(), T.homogeneity));
    V.push_back(check_counity_closed(field, spec, chart.values, T.counity));
  }

  if (example) {
    const Example& ex = *example;
    out.named = ex.to_named(chart.values);
    const Eigen::MatrixXcd inv_t = ex.map_matrix().transpose().inverse();
    const Tensor3 c_named = transform(ft.c_lower, inv_t);
    const Tensor3 oracle = hyperdual_third_derivatives(ex.prepotential, *out.named);
    V.push_back(VerdictReport::make("closed-form-c", max_abs_difference(c_named, oracle), T.closed_form));
    const Eigen::VectorXcd e_named = ex.map_matrix() * out.unit.components;
    const auto expected = ex.unit(*out.named);
    double r = 0.0;
    for (int a = 0; a < N; ++a) r = worst(r, std::abs(e_named(a) - expected[static_cast<std::size_t>(a)]));
    V.push_back(VerdictReport::make("closed-form-unit", r, ex.flat_unit ? T.unit_action : T.unit_closed_form));
    std::string why;
    const bool ok = detail::euler_matches_example(out.euler, ex, why);
    auto v = VerdictReport::make("closed-form-euler", ok ? 0.0 : 1.0, 0.5);
    v.note = ok ? "weights, shifts and d agree exactly" : why;
    V.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs over several points

struct RunResult {
  SuperpotentialSpec spec;
  AdmissibilityReport admissibility;
  std::vector<PointAnalysis> points;
  std::vector<VerdictReport> aggregate;
  std::vector<std::string> rejections;
  std::optional<std::string> failure;  // analysis could not complete

  bool passed() const {
    if (failure) return false;
    for (const auto& v : aggregate)
      if (!v.passed) return false;
    return true;
  }
};

namespace detail {

inline bool resample_worthy(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegeneratePoint:
    case ErrorKind::CoincidentPoints:
    case ErrorKind::InversionFailure:
    case ErrorKind::BranchAmbiguity:
    case ErrorKind::ZeroLeadingTerm:
    case ErrorKind::FractionalLeakage:
    case ErrorKind::NormalizationViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace detail

inline constexpr int kMaxResamples = 10;

/// Analyzes cfg.points points: the configured coordinates first (if any), then random ones.
inline RunResult run(const RunConfig& cfg) {
  RunResult res;
  res.spec = cfg.spec;
  res.admissibility = validate(cfg.spec);
  if (res.admissibility.kind == Admissibility::Inadmissible) return res;
  std::optional<Example> example;
  if (cfg.example) example = find_example(*cfg.example);
  std::mt19937_64 rng(cfg.seed);

  auto draw = [&](int index) -> RawCoordinates {
    if (index == 0 && cfg.coordinates.kind != CoordinateInput::Kind::None) {
      switch (cfg.coordinates.kind) {
        case CoordinateInput::Kind::Raw: return cfg.coordinates.raw;
        case CoordinateInput::Kind::PartialFractions:
          return raw_from_partial_fractions(cfg.spec, cfg.coordinates.fractions);
        case CoordinateInput::Kind::Named:
          return raw_from_partial_fractions(cfg.spec, example->fractions(cfg.coordinates.named));
        default: break;
      }
    }
    if (example) return raw_from_partial_fractions(cfg.spec, example->fractions(example->sample(rng)));
    return sample_raw(cfg.spec, rng);
  };

  for (int i = 0; i < cfg.points; ++i) {
    bool done = false;
    for (int attempt = 0; attempt <= kMaxResamples && !done; ++attempt) {
      try {
        const RawCoordinates raw = attempt == 0 ? draw(i) : draw(-1);
        res.points.push_back(analyze_point(cfg.spec, raw, example ? &*example : nullptr, cfg));
        done = true;
      } catch (const Error& e) {
        if (!detail::resample_worthy(e.kind())) {
          res.failure = e.what();
          return res;
        }
        res.rejections.push_back("point " + std::to_string(i) + ": " + e.what());
      }
    }
    if (!done) {
      res.failure = "no generic point found after " + std::to_string(kMaxResamples) + " resamples";
      return res;
    }
  }

  // aggregate verdicts by name, in first-seen order, plus flatness of eta across points
  for (const auto& p : res.points)
    for (const auto& v : p.verdicts) {
      auto it = std::find_if(res.aggregate.begin(), res.aggregate.end(), [&](const auto& a) { return a.name == v.name; });
      if (it == res.aggregate.end()) res.aggregate.push_back(v);
      else *it = merge(*it, v);
    }
  if (res.points.size() > 1) {
    double r = 0.0;
    for (const auto& p : res.points)
      r = worst(r, (p.tensors.eta_upper - res.points.front().tensors.eta_upper).cwiseAbs().maxCoeff<Eigen::PropagateNaN>());
    auto v = VerdictReport::make("metric-point-independence", r, cfg.tol.metric);
    v.points = static_cast<int>(res.points.size());
    res.aggregate.push_back(v);
  }
  for (auto& v : res.aggregate) v.seed = cfg.seed;
  return res;
}

// ---------------------------------------------------------------------------
// JSON reports

inline json admissibility_json(const SuperpotentialSpec& spec, const AdmissibilityReport& a) {
  json j;
  j["spec"] = spec_to_json(spec);
  j["classification"] = to_string(a.kind);
  j["n"] = a.n;
  j["dimension"] = a.dimension;
  if (!a.reason.empty()) j["reason"] = a.reason;
  return j;
}

inline json point_json(const PointAnalysis& p, bool detailed) {
  using namespace detail;
  json j;
  j["raw"] = {{"zeros", to_json(p.raw.zeros)}, {"poles", to_json(p.raw.poles)}};
  json labels = json::array();
  for (const auto& l : p.chart.labels) labels.push_back(l.name());
  j["chart"] = {{"labels", labels}, {"values", to_json(p.chart.values)}};
  if (p.named) j["named"] = to_json(*p.named);
  j["eta"] = to_json(p.tensors.eta_upper);
  j["euler"] = {{"weights", to_json(p.euler.weights)},
                {"shifts", to_json(p.euler.shifts)},
                {"d", p.euler.d.str()}};
  // label dual to the unit, i.e. the coordinate a consumer should put first
  json unit_label = nullptr;
  const auto& e = p.unit.components;
  const int first = unit_first_order(e).front();
  if (std::abs(e(first) - 1.0) < 1e-8 && (e.cwiseAbs().sum() - std::abs(e(first))) < 1e-8 * e.size())
    unit_label = p.chart.labels[static_cast<std::size_t>(first)].name();
  j["unit"] = {{"components", to_json(e)}, {"flat", p.unit.flat}, {"unit_label", unit_label}};
  j["prepotential"] = to_json(p.prepotential);
  if (detailed) j["structure_constants"] = to_json(p.tensors.c_lower);
  json vs = json::array();
  for (const auto& v : p.verdicts) vs.push_back(to_json(v));
  j["verdicts"] = vs;
  return j;
}

inline json run_json(const std::string& command, const RunConfig& cfg, const RunResult& res) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["example"] = cfg.example ? json(*cfg.example) : json(nullptr);
  j["seed"] = cfg.seed;
  j["working_point"] = cfg.working_point;
  j["admissibility"] = admissibility_json(res.spec, res.admissibility);
  json pts = json::array();
  for (const auto& p : res.points) pts.push_back(point_json(p, command == "report"));
  j["points"] = pts;
  json agg = json::array();
  for (const auto& v : res.aggregate) agg.push_back(detail::to_json(v));
  j["verdicts"] = agg;
  j["rejections"] = res.rejections;
  if (res.failure) j["error"] = *res.failure;
  j["passed"] = res.passed();
  return j;
}

inline json examples_json() {
  json arr = json::array();
  for (const auto& ex : examples()) {
    json j;
    j["name"] = ex.name;
    j["summary"] = ex.summary;
    j["spec"] = spec_to_json(ex.spec);
    j["n"] = ex.spec.n();
    j["dimension"] = ex.dimension();
    j["d"] = ex.d.str();
    j["flat_unit"] = ex.flat_unit;
    arr.push_back(j);
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "examples";
  j["examples"] = arr;
  return j;
}

inline std::string verdict_table(const std::vector<VerdictReport>& vs) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "verdict" << std::setw(14) << "max_residual" << std::setw(12) << "tolerance"
     << "status\n";
  for (const auto& v : vs) {
    os << std::left << std::setw(28) << v.name;
    if (v.skipped) {
      os << std::setw(14) << "-" << std::setw(12) << "-" << "SKIP (" << v.note << ")\n";
      continue;
    }
    std::ostringstream r, t;
    r << std::scientific << std::setprecision(3) << v.max_residual;
    t << std::scientific << std::setprecision(1) << v.tolerance;
    os << std::setw(14) << r.str() << std::setw(12) << t.str() << (v.passed ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

}  // namespace frob
