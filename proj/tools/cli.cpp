#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "shiftreg/errors.hpp"
#include "shiftreg/experiments.hpp"
#include "shiftreg/io.hpp"
#include "shiftreg/lemmas.hpp"
#include "shiftreg/lower_bound.hpp"
#include "shiftreg/minimax.hpp"
#include "shiftreg/rng.hpp"

namespace shiftreg::cli {
namespace {

// flag > config > SHIFTREG_SEED > 0
std::uint64_t env_seed() {
  const char* raw = std::getenv("SHIFTREG_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string_view(raw).size() || raw[0] == '-') throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("SHIFTREG_SEED must be a non-negative integer, got '" + std::string(raw) +
                       "'");
  }
}

void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.output.empty()) {
    out << text;
  } else {
    write_text_file(opts.output, text);
  }
}

Json load_config(const Options& opts) {
  return opts.config.empty() ? Json::object() : read_json_file(opts.config);
}

SobolevClass merged_class(const Options& opts, const SobolevClass& base) {
  return SobolevClass(opts.s.value_or(base.s()), opts.L.value_or(base.L()));
}

int cmd_test(const Options& opts, std::ostream& out, bool adaptive) {
  const LoadedPair pair = load_pair(opts.input);
  const ObservationPair obs = pair.observation(opts.sigma);
  TestOutcome outcome;
  if (adaptive) {
    outcome = adaptive_test(obs, opts.s1.value_or(0.5), opts.s2.value_or(2.0));
  } else {
    outcome = nonadaptive_test(obs, SobolevClass(opts.s.value_or(1.0), opts.L.value_or(1.0)),
                               opts.alpha.value_or(0.05));
  }
  emit(opts, out, dump_json(to_json(outcome)) + "\n");
  return opts.strict && outcome.reject ? kRejected : kOk;
}

InstanceSpec merged_instance(const Options& opts, InstanceSpec spec) {
  if (opts.kind) spec.kind = instance_kind_from_string(*opts.kind);
  if (opts.tau) spec.tau = *opts.tau;
  if (opts.distance) spec.target_distance = *opts.distance;
  if (opts.J) spec.J = *opts.J;
  if (opts.s || opts.L) spec.cls = merged_class(opts, spec.cls);
  return spec;
}

int cmd_simulate(const Options& opts, std::ostream& out) {
  const Json doc = load_config(opts);
  InstanceSpec spec = doc.empty() ? InstanceSpec{} : instance_spec_from_json(doc);
  spec = merged_instance(opts, spec);
  if (spec.J == 0) throw InvalidInput("simulate: J must be at least 1");
  const double sigma = opts.sigma.value_or(0.05);
  if (!(sigma > 0.0)) throw InvalidInput("simulate: sigma must be positive");
  const std::uint64_t seed = opts.seed.value_or(env_seed());
  const auto [c, c_sharp] = make_instance(spec, derive_stream(seed, kInstanceStream));
  const ObservationPair obs = simulate_pair(c, c_sharp, sigma, derive_stream(seed, 0));
  emit(opts, out, dump_json(to_json(obs)) + "\n");
  return kOk;
}

ExperimentConfig merged_experiment(const Options& opts, InstanceKind default_kind) {
  ExperimentConfig defaults;
  defaults.master_seed = env_seed();
  defaults.instance.kind = default_kind;
  defaults.instance.J = 0;
  ExperimentConfig cfg = experiment_config_from_json(load_config(opts), defaults);
  if (opts.test) cfg.test_kind = test_kind_from_string(*opts.test);
  if (opts.sigma) cfg.sigma = *opts.sigma;
  cfg.cls = merged_class(opts, cfg.cls);
  cfg.instance.cls = cfg.cls;
  if (opts.alpha) cfg.alpha = *opts.alpha;
  if (opts.s1) cfg.s1 = *opts.s1;
  if (opts.s2) cfg.s2 = *opts.s2;
  if (opts.trials) cfg.trials = *opts.trials;
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.parallelism) cfg.parallelism = *opts.parallelism;
  cfg.instance = merged_instance(opts, cfg.instance);
  cfg.validate();
  return cfg;
}

std::string estimate_report(const Options& opts, const ExperimentConfig& cfg,
                            const ErrorEstimate& est) {
  if (opts.format == "json") {
    return dump_json(Json{{"config", to_json(cfg)}, {"estimate", to_json(est)}}) + "\n";
  }
  return estimate_csv_header() + "\n" + estimate_csv_row(cfg, est) + "\n";
}

int cmd_level(const Options& opts, std::ostream& out) {
  const ExperimentConfig cfg = merged_experiment(opts, InstanceKind::null_shift);
  emit(opts, out, estimate_report(opts, cfg, estimate_type_one(cfg)));
  return kOk;
}

int cmd_power(const Options& opts, std::ostream& out) {
  const ExperimentConfig cfg = merged_experiment(opts, InstanceKind::signal_vs_zero);
  if (cfg.instance.kind == InstanceKind::null_shift) {
    throw InvalidInput("power: instance kind must be an alternative");
  }
  if (!(cfg.instance.target_distance > 0.0)) {
    throw InvalidInput("power: --distance (or instance.target_distance) must be positive");
  }
  emit(opts, out, estimate_report(opts, cfg, estimate_type_two(cfg)));
  return kOk;
}

int cmd_sweep(const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.emit_plot && opts.output.empty()) {
    throw InvalidInput("sweep: --emit-plot needs --output to name the CSV");
  }
  SweepConfig defaults;
  defaults.sigmas = {0.2, 0.1, 0.05, 0.025};
  defaults.master_seed = env_seed();
  SweepConfig cfg = sweep_config_from_json(load_config(opts), defaults);
  if (!opts.sigmas.empty()) cfg.sigmas = opts.sigmas;
  cfg.cls = merged_class(opts, cfg.cls);
  if (opts.alpha) cfg.alpha = *opts.alpha;
  if (opts.beta) cfg.target_beta = *opts.beta;
  if (opts.trials) cfg.trials = *opts.trials;
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.parallelism) cfg.parallelism = *opts.parallelism;
  cfg.validate();

  SweepResult result;
  try {
    result = rate_sweep(cfg);
  } catch (const BracketFailure& e) {
    err << "shiftreg: " << e.what() << "\n  probed (C, beta):";
    for (const PowerPoint& p : e.curve()) err << " (" << p.C << ", " << p.beta << ")";
    err << "\n";
    return kRuntime;
  }
  emit(opts, out, sweep_csv(result));
  if (!opts.json_output.empty()) {
    write_text_file(opts.json_output,
                    dump_json(Json{{"config", to_json(cfg)}, {"result", to_json(result)}}) + "\n");
  }
  if (opts.emit_plot) {
    const std::filesystem::path csv(opts.output);
    std::filesystem::path script = csv;
    script.replace_extension(".gp");
    write_text_file(script, sweep_gnuplot(result, csv.filename().string()));
  }
  return kOk;
}

int cmd_verify(const Options& opts, std::ostream& out) {
  const double sigma = opts.sigma.value_or(0.01);
  const double s1 = opts.s1.value_or(0.5);
  const double s2 = opts.s2.value_or(2.0);
  const SobolevClass cls(opts.s.value_or(1.0), opts.L.value_or(1.0));
  const std::uint64_t seed = opts.seed.value_or(env_seed());
  const std::size_t trials = opts.trials.value_or(100000);
  const std::size_t workers = opts.parallelism.value_or(0);
  const std::vector<std::size_t> n_values =
      opts.n_values.empty() ? std::vector<std::size_t>{4, 16, 64} : opts.n_values;

  LemmaSuiteOptions suite;
  suite.instances = opts.instances.value_or(100);
  const LemmaReport lemmas = lemma_suite(sigma, s1, s2, cls, seed, suite);
  bool all_passed = lemmas.all_passed();
  Json nulls = Json::array();
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    const NullDistributionSummary summary =
        null_statistic_distribution(n_values[k], trials, derive_stream(seed, 100 + k), workers);
    all_passed = all_passed && summary.moments_ok && summary.deviation_ok;
    nulls.push_back(to_json(summary));
  }
  const Json report{{"all_passed", all_passed},
                    {"seed", seed},
                    {"lemmas", to_json(lemmas)},
                    {"null_distribution", std::move(nulls)}};
  emit(opts, out, dump_json(report) + "\n");
  return all_passed ? kOk : kRuntime;
}

int cmd_lower_bound(const Options& opts, std::ostream& out) {
  const SobolevClass cls(opts.s.value_or(1.0), opts.L.value_or(1.0));
  const double alpha = opts.alpha.value_or(0.05);
  const LowerBoundResult result =
      opts.d_max ? lower_bound_radius(alpha, *opts.beta, *opts.sigma, cls, *opts.d_max)
                 : lower_bound_radius(alpha, *opts.beta, *opts.sigma, cls);
  emit(opts, out, dump_json(to_json(result)) + "\n");
  return kOk;
}

void add_output(CLI::App* sub, Options& opts) {
  sub->add_option("-o,--output", opts.output, "Write the report to this file instead of stdout");
}

void add_seed(CLI::App* sub, Options& opts) {
  sub->add_option("--seed", opts.seed,
                  "Master seed (flag > config > SHIFTREG_SEED > 0)");
}

void add_parallelism(CLI::App* sub, Options& opts) {
  sub->add_option("--parallelism", opts.parallelism,
                  "Worker threads, 0 = all cores; results do not depend on it (default 0)");
}

void add_experiment_flags(CLI::App* sub, Options& opts) {
  sub->add_option("--config", opts.config, "Experiment config JSON; flags override its fields")
      ->check(CLI::ExistingFile);
  sub->add_option("--test", opts.test, "Test to run: nonadaptive or adaptive (default nonadaptive)");
  sub->add_option("--sigma", opts.sigma, "Noise level in (0, 1) (default 0.05)");
  sub->add_option("--s", opts.s, "Smoothness of the tuned class (default 1)");
  sub->add_option("--L", opts.L, "Sobolev radius (default 1)");
  sub->add_option("--alpha", opts.alpha, "Nominal level of the nonadaptive test (default 0.05)");
  sub->add_option("--s1", opts.s1, "Lower smoothness of the adaptive range (default 0.5)");
  sub->add_option("--s2", opts.s2, "Upper smoothness of the adaptive range (default 2)");
  sub->add_option("--J", opts.J, "Truncation length, 0 = max(4 N, 64) (default 0)");
  sub->add_option("--trials", opts.trials, "Monte Carlo trials (default 1000)");
  add_seed(sub, opts);
  add_parallelism(sub, opts);
  sub->add_option("--format", opts.format, "Report format: csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(sub, opts);
}

}  // namespace

std::unique_ptr<CLI::App> make_parser(Options& opts) {
  auto app = std::make_unique<CLI::App>("Goodness-of-fit tests for shifted curves", "shiftreg");
  app->require_subcommand(1, 1);

  auto* test = app->add_subcommand("test", "Nonadaptive test on a pair file; prints a JSON outcome");
  test->add_option("-i,--input", opts.input, "Pair JSON with y, y_sharp and optionally sigma")
      ->required()
      ->check(CLI::ExistingFile);
  test->add_option("--sigma", opts.sigma, "Noise level; overrides the file's sigma");
  test->add_option("--s", opts.s, "Smoothness of the tuned class (default 1)");
  test->add_option("--L", opts.L, "Sobolev radius (default 1)");
  test->add_option("--alpha", opts.alpha, "Nominal level (default 0.05)");
  test->add_flag("--strict", opts.strict, "Exit with status 3 when the test rejects");
  add_output(test, opts);

  auto* adaptive = app->add_subcommand("adaptive-test", "Adaptive test on a pair file");
  adaptive->add_option("-i,--input", opts.input, "Pair JSON with y, y_sharp and optionally sigma")
      ->required()
      ->check(CLI::ExistingFile);
  adaptive->add_option("--sigma", opts.sigma, "Noise level in (0, 1/e); overrides the file's sigma");
  adaptive->add_option("--s1", opts.s1, "Lower smoothness (default 0.5)");
  adaptive->add_option("--s2", opts.s2, "Upper smoothness (default 2)");
  adaptive->add_flag("--strict", opts.strict, "Exit with status 3 when the test rejects");
  add_output(adaptive, opts);

  auto* simulate = app->add_subcommand("simulate", "Draw an instance and one noisy observation pair");
  simulate->add_option("--config", opts.config, "Instance spec JSON; flags override its fields")
      ->check(CLI::ExistingFile);
  simulate->add_option("--kind", opts.kind,
                       "null_shift, signal_vs_zero or two_frequency (default null_shift)");
  simulate->add_option("--tau", opts.tau, "Shift in [0, 2pi) for null_shift (default 0)");
  simulate->add_option("--distance", opts.distance, "Target pseudo-distance of an alternative");
  simulate->add_option("--s", opts.s, "Smoothness of the instance ball (default 1)");
  simulate->add_option("--L", opts.L, "Radius of the instance ball (default 1)");
  simulate->add_option("--J", opts.J, "Number of coefficients (default 64)");
  simulate->add_option("--sigma", opts.sigma, "Noise level (default 0.05)");
  add_seed(simulate, opts);
  add_output(simulate, opts);

  auto* level = app->add_subcommand("level", "Monte Carlo type I error on a null instance (CSV)");
  add_experiment_flags(level, opts);
  level->add_option("--tau", opts.tau, "Shift of the null instance in [0, 2pi) (default 0)");

  auto* power = app->add_subcommand("power", "Monte Carlo type II error on an alternative (CSV)");
  add_experiment_flags(power, opts);
  power->add_option("--kind", opts.kind,
                    "signal_vs_zero or two_frequency (default signal_vs_zero)");
  power->add_option("--distance", opts.distance,
                    "Pseudo-distance of the alternative; required here or in the config");

  auto* sweep = app->add_subcommand("sweep", "Empirical separation rate across noise levels (CSV)");
  sweep->add_option("--config", opts.config, "Sweep config JSON; flags override its fields")
      ->check(CLI::ExistingFile);
  sweep->add_option("--sigmas", opts.sigmas,
                    "Strictly decreasing noise levels (default 0.2 0.1 0.05 0.025)");
  sweep->add_option("--s", opts.s, "Smoothness (default 1)");
  sweep->add_option("--L", opts.L, "Sobolev radius (default 2)");
  sweep->add_option("--alpha", opts.alpha, "Level of the nonadaptive test (default 0.05)");
  sweep->add_option("--beta", opts.beta, "Target type II error of the bisection (default 0.5)");
  sweep->add_option("--trials", opts.trials, "Trials per bisection probe (default 1000)");
  add_seed(sweep, opts);
  add_parallelism(sweep, opts);
  add_output(sweep, opts);
  sweep->add_option("--json", opts.json_output, "Also write the full result, curves included, as JSON");
  sweep->add_flag("--emit-plot", opts.emit_plot,
                  "Write a gnuplot script next to --output, with extension .gp");

  auto* verify = app->add_subcommand("verify", "Lemma checks and null-statistic CDF; exit 0 iff all pass");
  verify->add_option("--sigma", opts.sigma, "Noise level for the rate-ratio check (default 0.01)");
  verify->add_option("--s1", opts.s1, "Lower smoothness (default 0.5)");
  verify->add_option("--s2", opts.s2, "Upper smoothness (default 2)");
  verify->add_option("--s", opts.s, "Smoothness of the truncation check ball (default 1)");
  verify->add_option("--L", opts.L, "Radius of the truncation check ball (default 1)");
  verify->add_option("--instances", opts.instances, "Randomized instances per lemma (default 100)");
  verify->add_option("--N", opts.n_values, "Bandwidths for the null CDF check (default 4 16 64)");
  verify->add_option("--trials", opts.trials, "Trials per null CDF check, >= 10000 (default 100000)");
  add_seed(verify, opts);
  add_parallelism(verify, opts);
  add_output(verify, opts);

  auto* lower = app->add_subcommand("lower-bound", "Lower-bound separation radius (JSON)");
  lower->add_option("--alpha", opts.alpha, "Type I error budget (default 0.05)");
  lower->add_option("--beta", opts.beta, "Type II error budget; alpha + beta < 1")->required();
  lower->add_option("--sigma", opts.sigma, "Noise level")->required();
  lower->add_option("--s", opts.s, "Smoothness (default 1)");
  lower->add_option("--L", opts.L, "Sobolev radius (default 1)");
  lower->add_option("--d-max", opts.d_max, "Scan limit, at least 2 x* (default ceil(2 x*))");
  add_output(lower, opts);

  return app;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  auto app = make_parser(opts);
  try {
    app->parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app->exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string name = app->get_subcommands().front()->get_name();
  try {
    if (name == "test") return cmd_test(opts, out, false);
    if (name == "adaptive-test") return cmd_test(opts, out, true);
    if (name == "simulate") return cmd_simulate(opts, out);
    if (name == "level") return cmd_level(opts, out);
    if (name == "power") return cmd_power(opts, out);
    if (name == "sweep") return cmd_sweep(opts, out, err);
    if (name == "verify") return cmd_verify(opts, out);
    if (name == "lower-bound") return cmd_lower_bound(opts, out);
  } catch (const std::exception& e) {
    err << "shiftreg " << name << ": " << e.what() << "\n";
    // input, domain, range, config and infeasibility errors are the caller's to fix
    const bool usage = dynamic_cast<const std::logic_error*>(&e) != nullptr ||
                       dynamic_cast<const ConfigurationError*>(&e) != nullptr ||
                       dynamic_cast<const InfeasibleSpec*>(&e) != nullptr;
    return usage ? kUsage : kRuntime;
  }
  err << "shiftreg: unknown subcommand " << name << "\n";
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"shiftreg"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace shiftreg::cli
