// Copyright 2026 The qhartley Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhartley/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qhartley/cli/output.hpp"
#include "qhartley/diagnostics.hpp"
#include "qhartley/model.hpp"
#include "qhartley/rng.hpp"
#include "qhartley/sampler.hpp"
#include "qhartley/targets.hpp"
#include "qhartley/trainer.hpp"
#include "qhartley/types.hpp"

namespace qh::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Run {
  std::string command;
  RunConfig config;
  fs::path dir;
  std::ostream& log;

  json snapshot() const { return config.snapshot(); }

  CsvWriter::Metadata metadata(std::uint64_t seed) const {
    return {{"command", command},
            {"seed", std::to_string(seed)},
            {"rng", std::string(Rng::kAlgorithm)},
            {"config", snapshot().dump()}};
  }

  json report_header(std::uint64_t seed) const {
    return {{"command", command}, {"seed", seed}, {"rng", std::string(Rng::kAlgorithm)}, {"config", snapshot()}};
  }
};

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void write_loss(const Run& run, const TrainReport& report) {
  CsvWriter csv(run.dir / "loss.csv", run.metadata(report.seed), {"epoch", "loss"});
  for (const auto& [epoch, loss] : report.trajectory) csv.row({std::int64_t{epoch}, loss});
  csv.close();
}

void write_model(const Run& run, const TrainReport& report) {
  json j = report.model.to_json();
  j["seed"] = report.seed;
  j["rng"] = std::string(Rng::kAlgorithm);
  j["config"] = run.snapshot();
  write_json(run.dir / "model.json", j);
}

json training_summary(const TrainReport& report) {
  return {{"final_loss", report.final_loss},
          {"epochs_run", report.epochs_run},
          {"early_stopped", report.early_stopped},
          {"trainable_angles", report.model.num_angles()}};
}

void announce(const Run& run, const TrainReport& report) {
  fmt::print(run.log, "{}: final loss {:.6e} after {} epochs{} ({:.2f} s)\n", run.command, report.final_loss,
             report.epochs_run, report.early_stopped ? " (early stop)" : "", report.wall_seconds);
}

int cmd_verify(Run& run) {
  const int n_min = static_cast<int>(run.config.integer("verify", "n_min"));
  const int n_max = static_cast<int>(run.config.integer("verify", "n_max"));
  if (n_min < 1 || n_max < n_min || n_max > 9) {
    throw ConfigError(fmt::format("verify n-range [{}, {}] must lie within [1, 9]", n_min, n_max));
  }
  VerifyOptions opts;
  opts.corrupt_qht = run.config.boolean("verify", "corrupt_qht");
  opts.seed = run.config.unsigned_integer("verify", "seed");

  CsvWriter csv(run.dir / "checks.csv", run.metadata(opts.seed),
                {"n", "check", "value", "tolerance", "margin", "gating", "passed"});
  json checks = json::array();
  std::vector<std::string> failed;
  for (int n = n_min; n <= n_max; ++n) {
    for (const CheckResult& c : verify_transforms(n, opts)) {
      const double margin = c.above ? c.value - c.tolerance : c.tolerance - c.value;
      const bool ok = c.passed();
      csv.row({std::int64_t{c.n}, c.name, c.value, c.tolerance, margin, std::int64_t{c.gating}, std::int64_t{ok}});
      checks.push_back({{"n", c.n},
                        {"check", c.name},
                        {"value", c.value},
                        {"tolerance", c.tolerance},
                        {"margin", margin},
                        {"gating", c.gating},
                        {"passed", ok}});
      fmt::print(run.log, "[{}] n={} {:<28} value={:.3e} tol={:.1e}{}\n", ok ? "PASS" : (c.gating ? "FAIL" : "WARN"),
                 c.n, c.name, c.value, c.tolerance, c.gating ? "" : " (diagnostic)");
      if (!ok && c.gating) failed.push_back(fmt::format("{}@n={}", c.name, c.n));
    }
  }
  csv.close();
  json report = run.report_header(opts.seed);
  report["checks"] = checks;
  report["failed"] = failed;
  report["passed"] = failed.empty();
  write_json(run.dir / "report.json", report);
  if (!failed.empty()) throw CheckFailure(fmt::format("failed checks: {}", fmt::join(failed, ", ")));
  return kOk;
}

void require(bool cond, std::string_view message) {
  if (!cond) throw ConfigError(std::string(message));
}

int cmd_train(Run& run) {
  const ModelSpec spec = run.config.model_spec();
  const TargetSpec target = run.config.target_spec();
  const TrainConfig tc = run.config.train_config();
  require(spec.feature != FeatureKind::bivariate_hartley, "train expects a univariate feature map (use train2d)");
  require(!is_de(target.kind) && !is_bivariate(target.kind), "train expects a distribution target (ou, gbm, exponential)");

  const TrainReport report = train_distribution(target, spec, tc);
  announce(run, report);
  write_model(run, report);
  write_loss(run, report);

  CsvWriter grid(run.dir / "grid.csv", run.metadata(report.seed), {"x", "p_model", "p_target"});
  for (double x : make_training_grid(spec.n, tc.grid)) {
    grid.row({x, report.model.evaluate(x), target_value(target, x)});
  }
  grid.close();

  json rep = run.report_header(report.seed);
  rep["training"] = training_summary(report);
  write_json(run.dir / "report.json", rep);
  return kOk;
}

int cmd_solve_de(Run& run) {
  const ModelSpec spec = run.config.model_spec();
  const TargetSpec target = run.config.target_spec();
  const TrainConfig tc = run.config.train_config();
  require(spec.feature != FeatureKind::bivariate_hartley, "solve-de expects a univariate feature map");
  require(is_de(target.kind), "solve-de expects a differential-equation target (de1, de2)");

  const TrainReport report = train_de(target, spec, tc);
  announce(run, report);
  write_model(run, report);
  write_loss(run, report);

  CsvWriter grid(run.dir / "grid.csv", run.metadata(report.seed),
                 {"x", "p_model", "p_target", "dp_model", "dp_target", "d2p_model", "d2p_target", "residual"});
  double err[3] = {0.0, 0.0, 0.0};
  for (double x : make_de_grid(target.kind, spec.n)) {
    const double f = report.model.evaluate(x);
    const double f1 = report.model.grad_x(x);
    const double f2 = report.model.second_derivative_x(x);
    const FunctionJet exact = de_solution(target, x);
    err[0] = std::max(err[0], std::abs(f - exact.f));
    err[1] = std::max(err[1], std::abs(f1 - exact.f1));
    err[2] = std::max(err[2], std::abs(f2 - exact.f2));
    grid.row({x, f, exact.f, f1, exact.f1, f2, exact.f2, de_residual(target.kind, f, f1, f2, x, target)});
  }
  grid.close();
  fmt::print(run.log, "solve-de: max |f - f*| = {:.3e}, |f' - f*'| = {:.3e}, |f'' - f*''| = {:.3e}\n", err[0], err[1],
             err[2]);

  json rep = run.report_header(report.seed);
  rep["training"] = training_summary(report);
  rep["max_abs_error"] = {{"f", err[0]}, {"df", err[1]}, {"d2f", err[2]}};
  write_json(run.dir / "report.json", rep);
  return kOk;
}

int cmd_train2d(Run& run) {
  const ModelSpec spec = run.config.model_spec();
  const TargetSpec target = run.config.target_spec();
  const TrainConfig tc = run.config.train_config();
  require(spec.feature == FeatureKind::bivariate_hartley, "train2d expects model.feature = bivariate-hartley");
  require(is_bivariate(target.kind), "train2d expects a bivariate target (binormal)");

  const TrainReport report = train_bivariate(target, spec, tc);
  announce(run, report);
  write_model(run, report);
  write_loss(run, report);

  CsvWriter grid(run.dir / "grid.csv", run.metadata(report.seed), {"x", "y", "p_model", "p_target"});
  const std::vector<double> axis = make_training_grid(spec.n, tc.grid);
  for (double x : axis) {
    for (double y : axis) grid.row({x, y, report.model.evaluate(x, y), target_value(target, x, y)});
  }
  grid.close();

  json rep = run.report_header(report.seed);
  rep["training"] = training_summary(report);
  write_json(run.dir / "report.json", rep);
  return kOk;
}

struct LoadedModel {
  QuantumModel model;
  std::string path;
  std::string sha256;
};

LoadedModel load_model(const RunConfig& config) {
  const auto s = config.sample();
  if (!s.model) throw ConfigError("sampling needs a model file (sample.model or --model)");
  if (!fs::is_regular_file(*s.model)) throw ConfigError(fmt::format("model file '{}' does not exist", *s.model));
  const std::string bytes = read_file(*s.model);
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("model file '{}' is not valid JSON: {}", *s.model, e.what()));
  }
  return {QuantumModel::from_json(j), *s.model, sha256_hex(bytes)};
}

CsvWriter::Metadata sampling_metadata(const Run& run, const SampleBatch& batch, const LoadedModel& m) {
  CsvWriter::Metadata md = {{"n", std::to_string(batch.n)},
                            {"S", std::to_string(batch.S)},
                            {"variant", std::string(fine_variant_name(batch.variant))},
                            {"shots", std::to_string(batch.shots)},
                            {"model_sha256", m.sha256}};
  for (auto& kv : run.metadata(batch.seed)) md.push_back(std::move(kv));
  return md;
}

void write_counts(const Run& run, const SampleBatch& batch, const CsvWriter::Metadata& md) {
  CsvWriter csv(run.dir / "counts.csv", md, {"bitstring", "count"});
  for (const auto& [value, count] : batch.counts.counts) {
    csv.row({batch.counts.bitstring(value), static_cast<std::int64_t>(count)});
  }
  csv.close();
}

json sampling_header(const Run& run, const SampleBatch& batch, const LoadedModel& m) {
  json rep = run.report_header(batch.seed);
  rep["model"] = {{"path", m.path}, {"sha256", m.sha256}};
  rep["n"] = batch.n;
  rep["S"] = batch.S;
  rep["variant"] = std::string(fine_variant_name(batch.variant));
  rep["shots"] = batch.shots;
  return rep;
}

int cmd_sample(Run& run) {
  const auto s = run.config.sample();
  const LoadedModel m = load_model(run.config);
  if (m.model.spec().feature != FeatureKind::hartley) {
    throw ConfigError(fmt::format("sample expects a hartley model, '{}' holds a {} model", m.path,
                                  feature_kind_name(m.model.spec().feature)));
  }
  const Circuit circuit =
      s.S == 0 ? build_sampling_circuit(m.model) : build_fine_sampling_circuit(m.model, s.S, s.variant);
  const SampleBatch batch = sample_model(m.model, circuit, s.shots, s.seed, s.S, s.variant);
  const Histogram h = decode_histogram(batch);

  auto md = sampling_metadata(run, batch, m);
  write_counts(run, batch, md);
  md.insert(md.begin() + 5, {"out_of_support", format_real(h.out_of_support)});
  CsvWriter csv(run.dir / "histogram.csv", md, {"coordinate", "probability"});
  for (std::size_t i = 0; i < h.coords.size(); ++i) csv.row({h.coords[i], h.probs[i]});
  csv.close();

  json rep = sampling_header(run, batch, m);
  rep["out_of_support"] = h.out_of_support;
  if (s.compare) {
    // Empirical mass on the integer points against the model's own normalized
    // integer-grid distribution.
    const int n = m.model.n();
    const std::size_t stride = std::size_t{1} << s.S;
    std::vector<double> empirical, reference;
    for (int j = 0; j < (1 << n); ++j) {
      empirical.push_back(h.probs[static_cast<std::size_t>(j) * stride]);
      const double coord = j;
      reference.push_back(m.model.expectation_unchecked({&coord, 1}));
    }
    const double d = tvd(normalized(empirical), normalized(reference));
    rep["tvd_integer_grid"] = d;
    fmt::print(run.log, "sample: TVD vs model integer-grid distribution = {:.4e}\n", d);
  }
  fmt::print(run.log, "sample: {} shots, S={}, out-of-support mass {:.3e}\n", s.shots, s.S, h.out_of_support);
  write_json(run.dir / "report.json", rep);
  return kOk;
}

int cmd_sample2d(Run& run) {
  const auto s = run.config.sample();
  const LoadedModel m = load_model(run.config);
  if (m.model.spec().feature != FeatureKind::bivariate_hartley) {
    throw ConfigError(fmt::format("sample2d expects a bivariate-hartley model, '{}' holds a {} model", m.path,
                                  feature_kind_name(m.model.spec().feature)));
  }
  const Circuit circuit = build_bivariate_sampling_circuit(m.model, s.S);
  const SampleBatch batch = sample_model(m.model, circuit, s.shots, s.seed, s.S, FineVariant::bitstring_network);
  const Histogram2D h = postprocess_bivariate(batch);

  auto md = sampling_metadata(run, batch, m);
  write_counts(run, batch, md);
  md.insert(md.begin() + 5, {"out_of_support", format_real(h.out_of_support)});
  md.insert(md.begin() + 6, {"dropped_positions", fmt::format("{}", fmt::join(h.dropped_positions, " "))});
  CsvWriter csv(run.dir / "histogram2d.csv", md, {"x", "y", "probability"});
  for (std::size_t i = 0; i < h.xs.size(); ++i) {
    for (std::size_t k = 0; k < h.ys.size(); ++k) csv.row({h.xs[i], h.ys[k], h.probs[i * h.ys.size() + k]});
  }
  csv.close();

  json rep = sampling_header(run, batch, m);
  rep["out_of_support"] = h.out_of_support;
  rep["dropped_positions"] = h.dropped_positions;
  if (s.compare) {
    std::vector<double> model_grid;
    model_grid.reserve(h.probs.size());
    for (double x : h.xs) {
      for (double y : h.ys) {
        const double c[2] = {x, y};
        model_grid.push_back(m.model.expectation_unchecked(c));
      }
    }
    rep["tvd_model_grid"] = tvd(h.probs, normalized(model_grid));
    rep["pearson_model_grid"] = pearson(h.probs, model_grid);
    fmt::print(run.log, "sample2d: TVD vs model grid = {:.4e}, Pearson = {:.6f}\n", rep["tvd_model_grid"].get<double>(),
               rep["pearson_model_grid"].get<double>());
    const TargetSpec target = run.config.target_spec();
    if (is_bivariate(target.kind)) {
      std::vector<double> density;
      for (double x : h.xs) {
        for (double y : h.ys) density.push_back(target_value(target, x, y));
      }
      rep["pearson_target"] = pearson(h.probs, density);
      fmt::print(run.log, "sample2d: Pearson vs target density = {:.6f}\n", rep["pearson_target"].get<double>());
    }
  }
  write_json(run.dir / "report.json", rep);
  return kOk;
}

bool is_pair_scheme(std::string_view s) { return s == "ryrx" || s == "rzry" || s == "rxrz"; }

int cmd_compare(Run& run) {
  const auto c = run.config.compare();
  const TargetSpec target = run.config.target_spec();
  require(!is_de(target.kind) && !is_bivariate(target.kind), "compare expects a univariate distribution target");
  TrainConfig base = run.config.train_config();
  base.grid = c.grid;
  const bool regularizer = run.config.boolean("model", "overlap_regularizer");

  const std::uint64_t seed0 = base.seed;
  const auto md = run.metadata(seed0);
  CsvWriter runs(run.dir / "runs.csv", md, {"n", "scheme", "feature", "parameters", "seed", "final_loss"});
  CsvWriter summary(run.dir / "summary.csv", md, {"n", "scheme", "parameters", "best_loss", "best_seed"});
  CsvWriter profiles(run.dir / "profiles.csv", md, {"n", "scheme", "x", "p_model", "p_target", "relative_error"});
  json per_n = json::array();

  for (int n = c.n_min; n <= c.n_max; ++n) {
    json entry = {{"n", n}, {"schemes", json::object()}};
    double hartley = std::numeric_limits<double>::quiet_NaN();
    double best_pair = std::numeric_limits<double>::infinity();
    double best_single = std::numeric_limits<double>::infinity();
    double worst_pair = 0.0;
    for (const std::string& scheme : c.schemes) {
      ModelSpec spec;
      spec.n = n;
      spec.depth = c.depth;
      spec.overlap_regularizer = regularizer;
      if (scheme == "hera") {
        spec.feature = FeatureKind::hartley;
        spec.ansatz = AnsatzKind::hera;
      } else {
        spec.feature = FeatureKind::fourier;
        spec.ansatz = AnsatzKind::hea;
        spec.scheme = *parse_scheme(scheme);
      }
      std::optional<TrainReport> best;
      for (int k = 0; k < c.seeds; ++k) {
        TrainConfig tc = base;
        tc.seed = seed0 + static_cast<std::uint64_t>(k);
        TrainReport r = train_distribution(target, spec, tc);
        runs.row({std::int64_t{n}, scheme, std::string(feature_kind_name(spec.feature)),
                  std::int64_t{r.model.num_angles()}, static_cast<std::int64_t>(tc.seed), r.final_loss});
        if (!best || r.final_loss < best->final_loss) best = std::move(r);
      }
      const int params = best->model.num_angles();
      summary.row({std::int64_t{n}, scheme, std::int64_t{params}, best->final_loss,
                   static_cast<std::int64_t>(best->seed)});
      for (double x : make_training_grid(n, c.grid)) {
        const double p = best->model.evaluate(x);
        const double t = target_value(target, x);
        profiles.row({std::int64_t{n}, scheme, x, p, t, t != 0.0 ? std::abs(p - t) / std::abs(t) : 0.0});
      }
      entry["schemes"][scheme] = {{"parameters", params}, {"best_loss", best->final_loss}, {"best_seed", best->seed}};
      fmt::print(run.log, "compare: n={} {:<5} params={:>3} best loss {:.4e}\n", n, scheme, params, best->final_loss);
      if (scheme == "hera") hartley = best->final_loss;
      else if (is_pair_scheme(scheme)) {
        best_pair = std::min(best_pair, best->final_loss);
        worst_pair = std::max(worst_pair, best->final_loss);
      } else best_single = std::min(best_single, best->final_loss);
    }
    if (!std::isnan(hartley) && std::isfinite(best_pair)) entry["hartley_over_best_pair"] = hartley / best_pair;
    if (std::isfinite(best_single) && std::isfinite(best_pair)) entry["singles_above_pairs"] = best_single > worst_pair;
    per_n.push_back(entry);
  }
  runs.close();
  summary.close();
  profiles.close();
  json rep = run.report_header(seed0);
  rep["results"] = per_n;
  write_json(run.dir / "report.json", rep);
  return kOk;
}

int cmd_overlap_map(Run& run) {
  const int n = static_cast<int>(run.config.integer("overlap", "n"));
  const double step = run.config.real("overlap", "step");
  const bool regularizer = run.config.boolean("overlap", "regularizer");
  if (n < 1 || n > 9) throw ConfigError("overlap.n must lie within [1, 9]");
  if (!(step > 0.0)) throw ConfigError("overlap.step must be positive");
  const OverlapMap om = overlap_map(n, step, std::ldexp(1.0, n) - 1.0, regularizer);

  CsvWriter csv(run.dir / "overlap.csv", run.metadata(0), {"x", "x_prime", "re", "im", "abs2"});
  for (std::size_t i = 0; i < om.grid.size(); ++i) {
    for (std::size_t k = 0; k < om.grid.size(); ++k) {
      const auto v = om.overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      csv.row({om.grid[i], om.grid[k], v.real(), v.imag(), std::norm(v)});
    }
  }
  csv.close();
  json rep = run.report_header(0);
  rep["max_far_squared_overlap"] = om.max_far_squared(0.5);
  rep["max_imaginary"] = om.max_imaginary();
  write_json(run.dir / "report.json", rep);
  fmt::print(run.log, "overlap-map: n={} step={} regularizer={} max |<x|x'>|^2 (|x-x'|>=0.5) = {:.4f}\n", n, step,
             regularizer, om.max_far_squared(0.5));
  return kOk;
}

using Handler = int (*)(Run&);

struct Entry {
  std::string_view name;
  Handler handler;
  const char* seed_section;
};

constexpr Entry kCommands[] = {
    {"verify", cmd_verify, "verify"},   {"train", cmd_train, "train"},       {"solve-de", cmd_solve_de, "train"},
    {"train2d", cmd_train2d, "train"},  {"sample", cmd_sample, "sample"},    {"sample2d", cmd_sample2d, "sample"},
    {"compare", cmd_compare, "train"},  {"overlap-map", cmd_overlap_map, nullptr},
};

const Entry& find_command(std::string_view name) {
  for (const Entry& e : kCommands) {
    if (e.name == name) return e;
  }
  throw ConfigError(fmt::format("unknown command '{}'", name));
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const Entry& e : kCommands) v.push_back(e.name);
    return v;
  }();
  return names;
}

RunConfig resolve_config(std::string_view command, const CommandLine& cl) {
  const Entry& entry = find_command(command);
  RunConfig config = cl.config ? RunConfig::load(*cl.config) : RunConfig{};
  if (cl.out) config.set("output", "directory", *cl.out);
  if (cl.seed) {
    if (!entry.seed_section) throw ConfigError(fmt::format("'{}' takes no seed", command));
    config.set(entry.seed_section, "seed", *cl.seed);
  }
  if (cl.shots) config.set("sample", "shots", *cl.shots);
  if (cl.model) config.set("sample", "model", *cl.model);
  const char* range = command == "compare" ? "compare" : "verify";
  if (cl.n_min) config.set(range, "n_min", *cl.n_min);
  if (cl.n_max) config.set(range, "n_max", *cl.n_max);
  if (cl.corrupt_qht) config.set("verify", "corrupt_qht", true);
  return config;
}

int run_command(std::string_view command, const CommandLine& cl, std::ostream& out, std::ostream& err) {
  try {
    const Entry& entry = find_command(command);
    Run run{std::string(command), resolve_config(command, cl), {}, out};
    run.dir = run.config.string("output", "directory");
    fs::create_directories(run.dir);
    write_json(run.dir / "config.json", run.snapshot());
    const auto start = std::chrono::steady_clock::now();
    const int code = entry.handler(run);
    fmt::print(out, "{}: done in {:.2f} s, artifacts in {}\n", command, elapsed(start), run.dir.string());
    return code;
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::domain_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const NumericalError& e) {
    fmt::print(err, "numerical failure: {}\n", e.what());
    return kNumericalFailure;
  } catch (const CheckFailure& e) {
    fmt::print(err, "check failure: {}\n", e.what());
    return kCheckFailure;
  }
}

}  // namespace qh::cli
