// Copyright 2026 The Authors.
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

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cgap/cgap.hpp"

namespace {

using cgap::Error;
using cgap::ErrorCode;
using cgap::GraphKind;
using cgap::Instance;
using cgap::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::string out;
  std::string format = "json";
  double tolerance = cgap::kFeasibilityTolerance;
  bool allow_infeasible = false;
  std::size_t workers = 0;
};

struct Source {
  std::string file;
  std::string inline_json;
  std::string gen;
  std::uint32_t n = 0;
  double c = 1.0;
  double eps = 0.01;
  double density = 0.5;
  double weight_e = 1.0;
  std::string kind = "general";
  bool unweighted = false;
  std::size_t max_edges = 0;
};

struct Loaded {
  Instance instance;
  std::string id;
};

GraphKind parse_kind(const std::string& s) {
  if (s == "general") return GraphKind::kGeneral;
  if (s == "bipartite") return GraphKind::kBipartite;
  throw Error(ErrorCode::kInvalidArgument, "unknown kind '" + s + "'");
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

Loaded load(const Source& src, const Globals& g) {
  const int given = !src.file.empty() + !src.inline_json.empty() + !src.gen.empty();
  if (given != 1) throw Error(ErrorCode::kInvalidArgument, "give exactly one of --instance, --json, --gen");
  if (!src.file.empty()) return {cgap::instance_from_file(src.file), src.file};
  if (!src.inline_json.empty()) return {cgap::instance_from_string(src.inline_json), "inline"};
  if (src.n == 0) throw Error(ErrorCode::kInvalidArgument, "--gen needs --n");
  if (src.gen == "karp_sipser") {
    const auto kind = parse_kind(src.kind);
    return {cgap::gen_karp_sipser(src.n, src.c, kind),
            fmt::format("karp_sipser:n={}:c={}:kind={}", src.n, num(src.c), src.kind)};
  }
  if (src.gen == "pendant_star")
    return {cgap::gen_pendant_star(src.n, src.eps, src.weight_e),
            fmt::format("pendant_star:n={}:eps={}:w={}", src.n, num(src.eps), num(src.weight_e))};
  if (src.gen == "equal_split_star")
    return {cgap::gen_equal_split_star(src.n, src.eps),
            fmt::format("equal_split_star:n={}:eps={}", src.n, num(src.eps))};
  if (src.gen == "random_point") {
    cgap::RandomPointOptions opt;
    opt.weighted = !src.unweighted;
    opt.max_edges = src.max_edges;
    return {cgap::gen_random_point(src.n, src.density, g.seed, parse_kind(src.kind), opt),
            fmt::format("random_point:n={}:density={}:seed={}:kind={}", src.n, num(src.density), g.seed, src.kind)};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator '" + src.gen + "'");
}

void add_source_options(CLI::App* cmd, Source& src) {
  cmd->add_option("--instance", src.file, "Instance JSON file");
  cmd->add_option("--json", src.inline_json, "Instance JSON text");
  cmd->add_option("--gen", src.gen, "Generator")
      ->check(CLI::IsMember({"karp_sipser", "pendant_star", "equal_split_star", "random_point"}));
  cmd->add_option("--n", src.n, "Vertices (per side for bipartite)");
  cmd->add_option("--c", src.c, "karp_sipser load");
  cmd->add_option("--eps", src.eps, "Probability of the designated edge");
  cmd->add_option("--density", src.density, "random_point pair density");
  cmd->add_option("--weight-e", src.weight_e, "pendant_star weight of the designated edge");
  cmd->add_option("--kind", src.kind, "general|bipartite")->check(CLI::IsMember({"general", "bipartite"}));
  cmd->add_flag("--unweighted", src.unweighted, "random_point with w = 1");
  cmd->add_option("--max-edges", src.max_edges, "random_point edge cap");
}

cgap::PolytopeReport polytope(const Instance& inst) {
  const bool odd = !inst.bipartite() && inst.num_vertices() <= cgap::kDefaultOddSetCutoff;
  return cgap::validate_polytope(inst, odd);
}

// Infeasible input is refused unless explicitly allowed.
bool admit(const Loaded& l, const Globals& g, Json& out) {
  const auto rep = polytope(l.instance);
  out["polytope"] = cgap::to_json(rep);
  if (rep.feasible() || g.allow_infeasible) return true;
  Json err = {{"instance_id", l.id}, {"error", "instance outside the matching polytope"},
              {"polytope", out["polytope"]}};
  std::cerr << err.dump(2) << "\n";
  return false;
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Globals& g, const Json& j) {
  Sink s(g.out);
  s.stream() << j.dump(2) << "\n";
}

void emit_csv(const Globals& g, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  Sink s(g.out);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s.stream() << (i ? "," : "") << cells[i];
    s.stream() << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

cgap::EstimatorOptions estimator_options(const Globals& g) {
  cgap::EstimatorOptions opt;
  opt.samples = g.samples;
  opt.seed = g.seed;
  opt.workers = g.workers;
  return opt;
}

Json ratio_json(const std::string& id, const cgap::RatioEstimate& r) {
  return {{"instance_id", id},
          {"method", cgap::to_string(r.method)},
          {"value", r.value},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"samples", r.samples},
          {"seed", r.seed},
          {"expected_nu", r.expected_nu},
          {"fractional", r.fractional}};
}

const std::vector<std::string> kRatioColumns{"instance_id", "method", "value", "ci_low", "ci_high", "samples", "seed"};

std::vector<std::string> ratio_row(const std::string& id, const cgap::RatioEstimate& r) {
  return {id, cgap::to_string(r.method), num(r.value), num(r.ci_low), num(r.ci_high),
          std::to_string(r.samples), std::to_string(r.seed)};
}

int run_ratio(const Source& src, const Globals& g, bool exact) {
  const auto l = load(src, g);
  Json j;
  if (!admit(l, g, j)) return kExitViolation;
  const auto r = exact ? cgap::exact_ratio(l.instance) : cgap::mc_ratio(l.instance, estimator_options(g));
  if (g.format == "csv") {
    emit_csv(g, kRatioColumns, {ratio_row(l.id, r)});
  } else {
    Json out = ratio_json(l.id, r);
    out["polytope"] = j["polytope"];
    emit_json(g, out);
  }
  return kExitOk;
}

int run_gen(const Source& src, const Globals& g) {
  const auto l = load(src, g);
  if (!polytope(l.instance).feasible())
    std::cerr << "note: generated instance lies outside the matching polytope\n";
  emit_json(g, cgap::to_json(l.instance));
  return kExitOk;
}

struct CertifyArgs {
  std::string mode = "exact";
  std::string scheme = "auto";
  std::optional<std::size_t> edge;
  double c = 1.0 / 6.0;
};

int run_certify(const Source& src, const Globals& g, const CertifyArgs& a) {
  const auto l = load(src, g);
  const auto& inst = l.instance;
  Json j;
  if (!admit(l, g, j)) return kExitViolation;
  cgap::CertificateOptions opt;
  opt.scheme = a.scheme == "weighted"                           ? cgap::Scheme::kWeighted
               : a.scheme == "unweighted"                       ? cgap::Scheme::kUnweighted
               : inst.unweighted() ? cgap::Scheme::kUnweighted : cgap::Scheme::kWeighted;
  opt.scheme_config.c = a.c;
  opt.estimator = estimator_options(g);
  const double floor = opt.scheme == cgap::Scheme::kUnweighted ? cgap::kUnweightedBipartiteFloor
                                                                : cgap::kWeightedBipartiteFloor;
  const auto method = a.mode == "mc" ? cgap::Method::kMonteCarlo : cgap::Method::kExact;

  std::vector<std::size_t> edges;
  if (a.edge) {
    edges.push_back(*a.edge);
  } else {
    for (std::size_t e = 0; e < inst.num_edges(); ++e)
      if (inst.edge(e).x > 0.0 && inst.edge(e).w > 0.0) edges.push_back(e);
  }
  std::vector<cgap::EdgeCertificate> certs;
  if (method == cgap::Method::kExact && !a.edge) {
    const auto all = cgap::exact_edge_certificates(inst, opt);
    for (auto e : edges) certs.push_back(all[e]);
  } else {
    for (auto e : edges) certs.push_back(cgap::per_edge_certificate(inst, e, method, opt));
  }

  bool all_pass = true;
  Json rows = Json::array();
  std::vector<std::vector<std::string>> csv;
  for (const auto& c : certs) {
    const double margin = c.value - floor;
    const double slack = g.tolerance + cgap::kZ95 * c.std_error;
    const bool pass = margin >= -slack;
    all_pass = all_pass && pass;
    const auto& e = inst.edge(c.edge);
    rows.push_back({{"edge", c.edge}, {"u", e.u}, {"v", e.v}, {"x", e.x}, {"w", e.w},
                    {"certificate", c.value}, {"std_error", c.std_error}, {"floor", floor},
                    {"margin", margin}, {"pass", pass}});
    csv.push_back({l.id, std::to_string(c.edge), std::to_string(e.u), std::to_string(e.v), num(e.x), num(e.w),
                   cgap::to_string(c.method), cgap::to_string(c.scheme), num(c.value), num(c.std_error),
                   num(floor), num(margin), pass ? "true" : "false"});
  }
  if (g.format == "csv") {
    emit_csv(g, {"instance_id", "edge", "u", "v", "x", "w", "method", "scheme", "certificate", "std_error",
                 "floor", "margin", "pass"},
             csv);
  } else {
    emit_json(g, {{"instance_id", l.id},
                  {"method", cgap::to_string(method)},
                  {"scheme", cgap::to_string(opt.scheme)},
                  {"c", a.c},
                  {"samples", method == cgap::Method::kExact ? 0 : g.samples},
                  {"seed", g.seed},
                  {"floor", floor},
                  {"passed", all_pass},
                  {"edges", rows}});
  }
  return all_pass ? kExitOk : kExitViolation;
}

struct VerifyArgs {
  double c = 1.0 / 6.0;
  double grid_step = 1e-3;
  double bernoulli_step = 0.05;
  std::size_t series_truncation = 15;
  std::size_t random_vectors = 10000;
  std::size_t pairs = 500;
};

int run_verify(const Globals& g, const VerifyArgs& a) {
  cgap::VerifyConfig cfg;
  cfg.c = a.c;
  cfg.kernel.grid_step = a.grid_step;
  cfg.kernel.series_truncation = a.series_truncation;
  cfg.bernoulli_step = a.bernoulli_step;
  cfg.random_vectors = a.random_vectors;
  cfg.continuous_pairs = a.pairs;
  cfg.seed = g.seed;
  cfg.tolerance = g.tolerance;
  if (!(a.grid_step > 0.0 && a.grid_step <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "--grid-step must lie in (0,1]");
  const auto suite = cgap::run_verify_suite(cfg);
  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : suite.checks)
      rows.push_back({c.check, num(c.min_value), num(c.reference), num(c.margin), c.passed ? "true" : "false",
                      std::to_string(c.points)});
    emit_csv(g, {"check", "min_value", "reference", "margin", "passed", "points"}, rows);
  } else {
    emit_json(g, cgap::to_json(suite));
  }
  for (const auto& c : suite.checks)
    if (!c.passed) std::cerr << "violation: " << c.check << " margin " << num(c.margin) << "\n";
  return suite.passed() ? kExitOk : kExitViolation;
}

struct PhiArgs {
  std::size_t grid_points = 20;
  std::string mode = "exact";
};

int run_phi(const Source& src, const Globals& g, const PhiArgs& a) {
  const auto l = load(src, g);
  Json j;
  if (!admit(l, g, j)) return kExitViolation;
  const auto mode = a.mode == "mc" ? cgap::PhiMode::kMonteCarlo : cgap::PhiMode::kExact;
  const auto curve = cgap::phi_curve(l.instance, a.grid_points, mode, estimator_options(g));
  const double frac = cgap::fractional_value(l.instance);
  const auto audit = cgap::audit_phi_curve(curve, frac, g.tolerance);
  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : curve) rows.push_back({l.id, num(p.t), num(p.phi), num(p.std_error)});
    emit_csv(g, {"instance_id", "t", "phi", "std_error"}, rows);
  } else {
    Json pts = Json::array();
    for (const auto& p : curve) pts.push_back({{"t", p.t}, {"phi", p.phi}, {"std_error", p.std_error}});
    emit_json(g, {{"instance_id", l.id},
                  {"mode", a.mode},
                  {"fractional", frac},
                  {"curve", pts},
                  {"audit", cgap::to_json(audit)}});
  }
  // Monte Carlo curves are noisy; only exact curves gate the exit code.
  return mode == cgap::PhiMode::kExact && !audit.passed ? kExitViolation : kExitOk;
}

struct ReportArgs {
  std::vector<double> sweep_c;
  std::uint32_t sweep_n = 200;
  std::string sweep_kind = "general";
};

int run_report(const Source& src, const Globals& g, const ReportArgs& a) {
  Json out = Json::object();
  const bool has_instance = !src.file.empty() || !src.inline_json.empty() || !src.gen.empty();
  if (!has_instance && a.sweep_c.empty())
    throw Error(ErrorCode::kInvalidArgument, "report needs an instance or --sweep-c");
  if (has_instance) {
    const auto l = load(src, g);
    const auto& inst = l.instance;
    const auto rep = polytope(inst);
    Json s = {{"instance_id", l.id},
              {"kind", cgap::to_string(inst.kind())},
              {"n", inst.n()},
              {"vertices", inst.num_vertices()},
              {"edges", inst.num_edges()},
              {"unweighted", inst.unweighted()},
              {"fractional", cgap::fractional_value(inst)},
              {"polytope", cgap::to_json(rep)}};
    const double floor = !inst.bipartite()   ? cgap::kGeneralFloor
                         : inst.unweighted() ? cgap::kUnweightedBipartiteFloor
                                             : cgap::kWeightedBipartiteFloor;
    s["floor"] = floor;
    if (cgap::fractional_value(inst) > 0.0) {
      const auto r = inst.num_edges() <= cgap::kMaxSupportEdges ? cgap::exact_ratio(inst)
                                                                 : cgap::mc_ratio(inst, estimator_options(g));
      s["ratio"] = ratio_json(l.id, r);
      s["margin"] = r.value - floor;
    }
    out["instance"] = s;
  }
  if (!a.sweep_c.empty()) {
    const auto kind = parse_kind(a.sweep_kind);
    Json rows = Json::array();
    double best = std::numeric_limits<double>::infinity();
    double best_c = 0.0;
    for (double c : a.sweep_c) {
      const auto inst = cgap::gen_karp_sipser(a.sweep_n, c, kind);
      const auto r = cgap::mc_ratio(inst, estimator_options(g));
      rows.push_back({{"c", c}, {"value", r.value}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
                      {"in_polytope", polytope(inst).degree_ok}});
      if (r.value < best) {
        best = r.value;
        best_c = c;
      }
    }
    out["karp_sipser_sweep"] = {{"n", a.sweep_n},          {"kind", a.sweep_kind}, {"samples", g.samples},
                                {"seed", g.seed},          {"rows", rows},         {"minimizer_c", best_c},
                                {"minimum", best},         {"upper_bound_reference", cgap::kKarpSipserUpperBound}};
  }
  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    if (out.contains("instance") && out["instance"].contains("ratio")) {
      const auto& r = out["instance"]["ratio"];
      rows.push_back({r["instance_id"].get<std::string>(), r["method"].get<std::string>(),
                      num(r["value"].get<double>()), num(r["ci_low"].get<double>()),
                      num(r["ci_high"].get<double>()), std::to_string(r["samples"].get<std::uint64_t>()),
                      std::to_string(r["seed"].get<std::uint64_t>())});
    }
    if (out.contains("karp_sipser_sweep"))
      for (const auto& row : out["karp_sipser_sweep"]["rows"])
        rows.push_back({fmt::format("karp_sipser:n={}:c={}:kind={}", a.sweep_n, num(row["c"].get<double>()),
                                    a.sweep_kind),
                        "monte_carlo", num(row["value"].get<double>()), num(row["ci_low"].get<double>()),
                        num(row["ci_high"].get<double>()), std::to_string(g.samples), std::to_string(g.seed)});
    emit_csv(g, kRatioColumns, rows);
  } else {
    emit_json(g, out);
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance:
      return kExitViolation;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation gap toolkit for random matchings"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--samples", g.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", g.tolerance, "Comparison tolerance")->check(CLI::NonNegativeNumber);
  app.add_flag("--allow-infeasible", g.allow_infeasible, "Accept points outside the matching polytope");
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)");

  Source src;
  auto* gen = app.add_subcommand("gen", "Emit a generated instance as JSON");
  auto* exact = app.add_subcommand("exact", "Exact ratio by support enumeration");
  auto* mc = app.add_subcommand("mc", "Monte Carlo ratio estimate");
  auto* certify = app.add_subcommand("certify", "Per-edge distribution-scheme certificates");
  auto* verify = app.add_subcommand("verify", "Run the analytic verification suite");
  auto* phi = app.add_subcommand("phi", "phi(t) curve and its differential audit");
  auto* report = app.add_subcommand("report", "Instance summary and Karp-Sipser sweep");
  for (auto* cmd : {gen, exact, mc, certify, phi, report}) add_source_options(cmd, src);
  for (auto* cmd : {gen, exact, mc, certify, verify, phi, report}) cmd->fallthrough();

  CertifyArgs ca;
  certify->add_option("--mode", ca.mode, "exact|mc")->check(CLI::IsMember({"exact", "mc"}));
  certify->add_option("--scheme", ca.scheme, "auto|weighted|unweighted")
      ->check(CLI::IsMember({"auto", "weighted", "unweighted"}));
  certify->add_option("--edge", ca.edge, "Single edge index");
  certify->add_option("--transfer-c", ca.c, "Transfer constant of the unweighted scheme");

  VerifyArgs va;
  verify->add_option("--c", va.c, "Transfer constant")->check(CLI::NonNegativeNumber);
  verify->add_option("--grid-step", va.grid_step, "Step of the x grid");
  verify->add_option("--bernoulli-step", va.bernoulli_step, "Step of the Bernoulli vector grids");
  verify->add_option("--series-truncation", va.series_truncation, "Truncation of the Poisson series");
  verify->add_option("--random-vectors", va.random_vectors, "Random mean-one vectors");
  verify->add_option("--pairs", va.pairs, "Random (instance, subgraph) pairs");

  PhiArgs pa;
  phi->add_option("--grid-points", pa.grid_points, "Intervals of the t grid")->check(CLI::PositiveNumber);
  phi->add_option("--mode", pa.mode, "exact|mc")->check(CLI::IsMember({"exact", "mc"}));

  ReportArgs ra;
  report->add_option("--sweep-c", ra.sweep_c, "Karp-Sipser loads to sweep")->delimiter(',');
  report->add_option("--sweep-n", ra.sweep_n, "Karp-Sipser vertex count");
  report->add_option("--sweep-kind", ra.sweep_kind, "general|bipartite")
      ->check(CLI::IsMember({"general", "bipartite"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return run_gen(src, g);
    if (*exact) return run_ratio(src, g, true);
    if (*mc) return run_ratio(src, g, false);
    if (*certify) return run_certify(src, g, ca);
    if (*verify) return run_verify(g, va);
    if (*phi) return run_phi(src, g, pa);
    if (*report) return run_report(src, g, ra);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
