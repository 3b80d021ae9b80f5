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

// frob validate|report|sweep|examples
//
// Exit codes: 0 pass, 2 input error, 3 inadmissible spec, 4 verdict failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "frob/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInput = 2;
constexpr int kExitInadmissible = 3;
constexpr int kExitVerdict = 4;

struct Options {
  std::string config;
  std::string example;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> points;
  std::string out;
  std::string format = "json";
  bool compact = false;
  bool timing = false;
};

frob::RunConfig make_config(const Options& o, int default_points) {
  frob::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = frob::load_config(o.config);
  } else if (!o.example.empty()) {
    frob::json j = {{"schema_version", frob::kSchemaVersion}, {"example", o.example}};
    cfg = frob::parse_config(j);
  } else {
    throw frob::Error(frob::ErrorKind::InvalidInput, "one of --config or --example is required");
  }
  if (!o.config.empty() && !o.example.empty()) {
    if (!cfg.example || *cfg.example != o.example)
      throw frob::Error(frob::ErrorKind::InvalidInput, "--example disagrees with the config file");
  }
  if (o.config.empty()) cfg.points = default_points;
  if (o.points) cfg.points = *o.points;
  if (o.seed) cfg.seed = *o.seed;
  if (o.tol) cfg.tol.wdvv = *o.tol;
  if (!o.out.empty()) cfg.output = o.out;
  if (o.timing) cfg.timing = true;
  return cfg;
}

void emit(const frob::json& j, const std::string& table, const Options& o, const std::optional<std::string>& path) {
  std::string text = o.format == "table" ? table : j.dump(o.compact ? -1 : 2) + "\n";
  if (path && !path->empty()) {
    std::ofstream f(*path);
    if (!f) throw frob::Error(frob::ErrorKind::InvalidInput, "cannot write '" + *path + "'");
    // the file always carries JSON; the table goes to stdout
    f << j.dump(o.compact ? -1 : 2) << "\n";
    if (o.format == "table") std::cout << table;
    return;
  }
  std::cout << text;
}

int cmd_validate(const Options& o) {
  const frob::RunConfig cfg = make_config(o, 1);
  const auto a = frob::validate(cfg.spec);
  const frob::json j = {{"schema_version", frob::kSchemaVersion}, {"command", "validate"},
                        {"admissibility", frob::admissibility_json(cfg.spec, a)}};
  std::ostringstream table;
  table << "classification: " << frob::to_string(a.kind) << "\n"
        << "n: " << a.n << "\ndimension: " << a.dimension << "\n";
  if (!a.reason.empty()) table << "reason: " << a.reason << "\n";
  if (a.kind == frob::Admissibility::NonflatUnit)
    std::cerr << "warning: the unit vector field of this family is not flat\n";
  emit(j, table.str(), o, cfg.output);
  return a.kind == frob::Admissibility::Inadmissible ? kExitInadmissible : kExitPass;
}

int cmd_run(const Options& o, const std::string& command, int default_points) {
  const frob::RunConfig cfg = make_config(o, default_points);
  const auto start = std::chrono::steady_clock::now();
  const auto res = frob::run(cfg);
  if (res.admissibility.kind == frob::Admissibility::Inadmissible) {
    std::cerr << "inadmissible spec: " << res.admissibility.reason << "\n";
    return kExitInadmissible;
  }
  frob::json j = frob::run_json(command, cfg, res);
  if (cfg.timing)
    j["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string table = frob::verdict_table(res.aggregate);
  if (res.failure) table += "error: " + *res.failure + "\n";
  emit(j, table, o, cfg.output);
  return res.passed() ? kExitPass : kExitVerdict;
}

int cmd_examples(const Options& o) {
  if (!o.example.empty()) {
    auto ex = frob::find_example(o.example);
    if (!ex) throw frob::Error(frob::ErrorKind::InvalidInput, "unknown example '" + o.example + "'");
    frob::json j = frob::examples_json();
    frob::json only = frob::json::array();
    for (const auto& e : j["examples"])
      if (e["name"] == o.example) only.push_back(e);
    j["examples"] = only;
    std::ostringstream t;
    t << ex->name << "  dimension " << ex->dimension() << "  " << ex->summary << "\n";
    emit(j, t.str(), o, std::nullopt);
    return kExitPass;
  }
  std::ostringstream t;
  for (const auto& ex : frob::examples())
    t << std::left << std::setw(12) << ex.name << " N=" << ex.dimension() << "  " << ex.summary << "\n";
  emit(frob::examples_json(), t.str(), o, o.out.empty() ? std::nullopt : std::optional<std::string>(o.out));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius manifolds from meromorphic superpotentials"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--example", o.example, "built-in example name");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--out", o.out, "write the JSON report to this path");
    sub->add_flag("--compact", o.compact, "single-line JSON");
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "64-bit seed for all sampling");
    sub->add_option("--tol", o.tol, "WDVV tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--points", o.points, "number of sample points")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", o.timing, "add wall-clock time to the report (breaks byte-identity)");
  };
  auto* validate = app.add_subcommand("validate", "classify a superpotential spec");
  add_common(validate);
  auto* report = app.add_subcommand("report", "full verification at one or more points");
  add_common(report);
  add_run(report);
  auto* sweep = app.add_subcommand("sweep", "verdicts at many random points");
  add_common(sweep);
  add_run(sweep);
  auto* list = app.add_subcommand("examples", "list built-in examples");
  list->add_option("--example", o.example, "show one example");
  list->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
  list->add_option("--out", o.out, "write the JSON listing to this path");
  list->add_flag("--compact", o.compact, "single-line JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*report) return cmd_run(o, "report", 1);
    if (*sweep) return cmd_run(o, "sweep", 20);
    if (*list) return cmd_examples(o);
  } catch (const frob::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == frob::ErrorKind::InvalidInput ? kExitInput : kExitVerdict;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
