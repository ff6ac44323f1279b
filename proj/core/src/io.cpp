#include "shiftreg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace shiftreg {
namespace {

[[noreturn]] void fail(std::string_view field, std::string_view problem) {
  throw ParseError("field '" + std::string(field) + "': " + std::string(problem));
}

const Json& require(const Json& doc, std::string_view field) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  const auto it = doc.find(std::string(field));
  if (it == doc.end()) fail(field, "missing");
  return *it;
}

double as_double(const Json& value, std::string_view field) {
  if (!value.is_number()) fail(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::uint64_t as_uint(const Json& value, std::string_view field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  fail(field, "expected a non-negative integer");
}

void reject_unknown(const Json& doc, std::initializer_list<std::string_view> known,
                    std::string_view what) {
  for (const auto& [key, value] : doc.items()) {
    bool found = false;
    for (auto k : known) found = found || k == key;
    if (!found) throw ParseError(std::string(what) + ": unknown field '" + key + "'");
  }
}

Json cls_json(const SobolevClass& cls) { return Json{{"s", cls.s()}, {"L", cls.L()}}; }


void write_json(std::string& out, const Json& value, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write_json(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_json(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      std::string text = format_double(x);
      if (text.find_first_of(".eE") == std::string::npos) text += ".0";
      out += text;
      return;
    }
    default:
      out += value.dump();
  }
}

}  // namespace

// doubles go through %.17g rather than the library's shortest form
std::string dump_json(const Json& value, int indent) {
  std::string out;
  write_json(out, value, indent, 0);
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Json to_json(const FourierSequence& seq) {
  Json coeffs = Json::array();
  for (const Complex& z : seq.coeffs()) coeffs.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"J", seq.size()}, {"coeffs", std::move(coeffs)}};
}

FourierSequence sequence_from_json(const Json& doc, std::string_view field) {
  const std::string name(field);
  if (!doc.is_object()) fail(name, "expected an object with J and coeffs");
  const Json& coeffs = require(doc, "coeffs");
  if (!coeffs.is_array() || coeffs.empty()) fail(name + ".coeffs", "expected a non-empty array");
  std::vector<Complex> values;
  values.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const std::string where = name + ".coeffs[" + std::to_string(j) + "]";
    const Json& z = coeffs[j];
    if (!z.is_array() || z.size() != 2) fail(where, "expected [re, im]");
    values.emplace_back(as_double(z[0], where), as_double(z[1], where));
  }
  if (doc.contains("J")) {
    const std::uint64_t J = as_uint(doc["J"], name + ".J");
    if (J != values.size()) {
      fail(name + ".J", "declares " + std::to_string(J) + " but coeffs has " +
                            std::to_string(values.size()) + " entries");
    }
  }
  return FourierSequence(std::move(values));
}

Json to_json(const ObservationPair& obs) {
  return Json{{"sigma", obs.sigma()}, {"y", to_json(obs.y())}, {"y_sharp", to_json(obs.y_sharp())}};
}

Json pair_to_json(const SequencePair& pair) {
  return Json{{"y", to_json(pair.first)}, {"y_sharp", to_json(pair.second)}};
}

ObservationPair LoadedPair::observation(std::optional<double> override_sigma) const {
  const std::optional<double> level = override_sigma ? override_sigma : sigma;
  if (!level) throw ParseError("field 'sigma': missing and no override given");
  return ObservationPair(y, y_sharp, *level);
}

LoadedPair pair_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("pair file: expected a JSON object");
  LoadedPair out{sequence_from_json(require(doc, "y"), "y"),
                 sequence_from_json(require(doc, "y_sharp"), "y_sharp"), std::nullopt};
  if (out.y.size() != out.y_sharp.size()) {
    throw ParseError("J mismatch: " + std::to_string(out.y.size()) + " vs " +
                     std::to_string(out.y_sharp.size()));
  }
  if (doc.contains("sigma")) {
    const double sigma = as_double(doc["sigma"], "sigma");
    if (!(sigma > 0.0)) fail("sigma", "must be positive");
    out.sigma = sigma;
  }
  return out;
}

LoadedPair load_pair(const std::filesystem::path& path) { return pair_from_json(read_json_file(path)); }

Json to_json(const TestOutcome& outcome) {
  Json out{{"test", std::string(to_string(outcome.kind))},
           {"statistic", outcome.statistic},
           {"threshold", outcome.threshold},
           {"reject", outcome.reject},
           {"tau_star", outcome.shift.tau_star},
           {"sigma", outcome.sigma}};
  if (outcome.kind == TestKind::nonadaptive) {
    out["N"] = outcome.N.front();
    out["alpha"] = outcome.alpha;
    if (outcome.cls) out["class"] = cls_json(*outcome.cls);
  } else {
    out["N"] = outcome.N;
    out["per_N"] = outcome.per_N;
    out["argmax_N"] = outcome.argmax_N;
    out["s1"] = outcome.s1;
    out["s2"] = outcome.s2;
  }
  return out;
}

Json to_json(const ErrorEstimate& e) {
  return Json{{"events", e.rejections}, {"trials", e.trials}, {"rate", e.rate},
              {"ci_low", e.ci_low},     {"ci_high", e.ci_high}};
}

Json to_json(const LowerBoundResult& r) {
  return Json{{"eta", r.eta},       {"calL", r.calL},
              {"rho", r.rho},       {"d_star", r.d_star},
              {"rho_closed_form", r.rho_closed_form}, {"x_star", r.x_star}};
}

Json to_json(const InstanceSpec& spec) {
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"tau", spec.tau},
              {"target_distance", spec.target_distance},
              {"s", spec.cls.s()},
              {"L", spec.cls.L()},
              {"J", spec.J}};
}

InstanceSpec instance_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  reject_unknown(doc, {"kind", "tau", "target_distance", "s", "L", "J"}, "instance");
  InstanceSpec spec;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) fail("kind", "expected a string");
    try {
      spec.kind = instance_kind_from_string(doc["kind"].get<std::string>());
    } catch (const InvalidInput& e) {
      fail("kind", e.what());
    }
  }
  if (doc.contains("tau")) spec.tau = as_double(doc["tau"], "tau");
  if (doc.contains("target_distance")) {
    spec.target_distance = as_double(doc["target_distance"], "target_distance");
  }
  double s = spec.cls.s(), L = spec.cls.L();
  if (doc.contains("s")) s = as_double(doc["s"], "s");
  if (doc.contains("L")) L = as_double(doc["L"], "L");
  spec.cls = SobolevClass(s, L);
  if (doc.contains("J")) spec.J = as_uint(doc["J"], "J");
  InstanceSpec probe = spec;
  if (probe.J == 0) probe.J = 1;  // 0 means "pick a default" inside experiments
  probe.validate();
  return spec;
}

Json to_json(const ExperimentConfig& cfg) {
  Json out{{"test", std::string(to_string(cfg.test_kind))}, {"sigma", cfg.sigma}};
  if (cfg.test_kind == TestKind::nonadaptive) {
    out["s"] = cfg.cls.s();
    out["L"] = cfg.cls.L();
    out["alpha"] = cfg.alpha;
  } else {
    out["s1"] = cfg.s1;
    out["s2"] = cfg.s2;
  }
  out["instance"] = to_json(cfg.instance);
  out["trials"] = cfg.trials;
  out["seed"] = cfg.master_seed;
  return out;
}

ExperimentConfig experiment_config_from_json(const Json& doc, ExperimentConfig cfg) {
  if (!doc.is_object()) throw ParseError("experiment config: expected a JSON object");
  reject_unknown(doc,
                 {"test", "sigma", "s", "L", "alpha", "s1", "s2", "instance", "trials", "seed",
                  "parallelism"},
                 "experiment config");
  if (doc.contains("test")) {
    if (!doc["test"].is_string()) fail("test", "expected a string");
    try {
      cfg.test_kind = test_kind_from_string(doc["test"].get<std::string>());
    } catch (const InvalidInput& e) {
      fail("test", e.what());
    }
  }
  if (doc.contains("sigma")) cfg.sigma = as_double(doc["sigma"], "sigma");
  double s = cfg.cls.s(), L = cfg.cls.L();
  if (doc.contains("s")) s = as_double(doc["s"], "s");
  if (doc.contains("L")) L = as_double(doc["L"], "L");
  cfg.cls = SobolevClass(s, L);
  if (doc.contains("alpha")) cfg.alpha = as_double(doc["alpha"], "alpha");
  if (doc.contains("s1")) cfg.s1 = as_double(doc["s1"], "s1");
  if (doc.contains("s2")) cfg.s2 = as_double(doc["s2"], "s2");
  if (doc.contains("instance")) cfg.instance = instance_spec_from_json(doc["instance"]);
  if (doc.contains("trials")) cfg.trials = as_uint(doc["trials"], "trials");
  if (doc.contains("seed")) cfg.master_seed = as_uint(doc["seed"], "seed");
  if (doc.contains("parallelism")) cfg.parallelism = as_uint(doc["parallelism"], "parallelism");
  return cfg;
}

Json to_json(const SweepConfig& cfg) {
  return Json{{"sigmas", cfg.sigmas},     {"s", cfg.cls.s()},
              {"L", cfg.cls.L()},         {"alpha", cfg.alpha},
              {"target_beta", cfg.target_beta}, {"trials", cfg.trials},
              {"seed", cfg.master_seed},  {"c_low", cfg.c_low},
              {"c_high", cfg.c_high},     {"c_tolerance", cfg.c_tolerance}};
}

SweepConfig sweep_config_from_json(const Json& doc, SweepConfig cfg) {
  if (!doc.is_object()) throw ParseError("sweep config: expected a JSON object");
  reject_unknown(doc,
                 {"sigmas", "s", "L", "alpha", "target_beta", "trials", "seed", "parallelism",
                  "c_low", "c_high", "c_tolerance"},
                 "sweep config");
  if (doc.contains("sigmas")) {
    const Json& sigmas = doc["sigmas"];
    if (!sigmas.is_array()) fail("sigmas", "expected an array of numbers");
    cfg.sigmas.clear();
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      cfg.sigmas.push_back(as_double(sigmas[k], "sigmas[" + std::to_string(k) + "]"));
    }
  }
  double s = cfg.cls.s(), L = cfg.cls.L();
  if (doc.contains("s")) s = as_double(doc["s"], "s");
  if (doc.contains("L")) L = as_double(doc["L"], "L");
  cfg.cls = SobolevClass(s, L);
  if (doc.contains("alpha")) cfg.alpha = as_double(doc["alpha"], "alpha");
  if (doc.contains("target_beta")) cfg.target_beta = as_double(doc["target_beta"], "target_beta");
  if (doc.contains("trials")) cfg.trials = as_uint(doc["trials"], "trials");
  if (doc.contains("seed")) cfg.master_seed = as_uint(doc["seed"], "seed");
  if (doc.contains("parallelism")) cfg.parallelism = as_uint(doc["parallelism"], "parallelism");
  if (doc.contains("c_low")) cfg.c_low = as_double(doc["c_low"], "c_low");
  if (doc.contains("c_high")) cfg.c_high = as_double(doc["c_high"], "c_high");
  if (doc.contains("c_tolerance")) cfg.c_tolerance = as_double(doc["c_tolerance"], "c_tolerance");
  return cfg;
}

Json to_json(const SweepResult& result) {
  Json rows = Json::array();
  for (const SweepRow& r : result.rows) {
    Json curve = Json::array();
    for (const PowerPoint& p : r.curve) curve.push_back(Json{{"C", p.C}, {"beta", p.beta}});
    rows.push_back(Json{{"sigma", r.sigma},
                        {"rho_star", r.rho_star},
                        {"c_hat", r.c_hat},
                        {"rho_emp", r.rho_emp},
                        {"trials", r.trials},
                        {"ci_low", r.ci_low},
                        {"ci_high", r.ci_high},
                        {"bracket", Json::array({r.bracket_low, r.bracket_high})},
                        {"N", r.N},
                        {"curve", std::move(curve)}});
  }
  Json out{{"rows", std::move(rows)}};
  out["slope"] = result.slope ? Json(*result.slope) : Json(nullptr);
  out["intercept"] = result.intercept ? Json(*result.intercept) : Json(nullptr);
  out["c_hat_monotone"] = result.c_hat_monotone;
  return out;
}

Json to_json(const TailCheckResult& r) {
  return Json{{"empirical", to_json(r.empirical)},
              {"threshold", r.threshold},
              {"bound", r.bound},
              {"vacuous", r.vacuous},
              {"passed", r.passed}};
}

Json to_json(const NullDistributionSummary& s) {
  return Json{{"N", s.N},
              {"trials", s.trials},
              {"mean", s.mean},
              {"variance", s.variance},
              {"mean_se", s.mean_se},
              {"variance_se", s.variance_se},
              {"sup_deviation", s.sup_deviation},
              {"berry_esseen_bound", s.berry_esseen_bound},
              {"dkw_band", s.dkw_band},
              {"moments_ok", s.moments_ok},
              {"deviation_ok", s.deviation_ok}};
}

Json to_json(const LemmaReport& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"skipped", c.skipped},
                          {"instances", c.instances},
                          {"detail", c.detail}});
  }
  return Json{{"all_passed", report.all_passed()}, {"checks", std::move(checks)}};
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "sigma,rho_star,c_hat,rho_emp,trials,ci_low,ci_high\n";
  for (const SweepRow& r : result.rows) {
    out += format_double(r.sigma) + ',' + format_double(r.rho_star) + ',' +
           format_double(r.c_hat) + ',' + format_double(r.rho_emp) + ',' +
           std::to_string(r.trials) + ',' + format_double(r.ci_low) + ',' +
           format_double(r.ci_high) + '\n';
  }
  return out;
}

std::string estimate_csv_header() {
  return "test_kind,sigma,instance,trials,seed,events,rate,ci_low,ci_high";
}

std::string estimate_csv_row(const ExperimentConfig& cfg, const ErrorEstimate& est) {
  return std::string(to_string(cfg.test_kind)) + ',' + format_double(cfg.sigma) + ',' +
         std::string(to_string(cfg.instance.kind)) + ',' + std::to_string(cfg.trials) + ',' +
         std::to_string(cfg.master_seed) + ',' + std::to_string(est.rejections) + ',' +
         format_double(est.rate) + ',' + format_double(est.ci_low) + ',' +
         format_double(est.ci_high);
}

std::string sweep_gnuplot(const SweepResult& result, std::string_view csv_name) {
  std::ostringstream out;
  out << "# empirical separation rate; rows from " << csv_name << "\n";
  out << "$rates << EOD\n";
  for (const SweepRow& r : result.rows) {
    const double x = std::log(r.sigma * r.sigma * std::sqrt(std::log(1.0 / r.sigma)));
    out << format_double(x) << ' ' << format_double(std::log(r.rho_emp)) << '\n';
  }
  out << "EOD\n";
  const double slope = result.slope.value_or(0.0);
  const double intercept = result.intercept.value_or(0.0);
  out << "a = " << format_double(intercept) << "\n";
  out << "b = " << format_double(slope) << "\n";
  out << "f(x) = a + b * x\n";
  char title[96];
  std::snprintf(title, sizeof title, "fitted slope %.4f", slope);
  out << "set title \"" << title << "\"\n";
  out << "set xlabel \"log(sigma^2 sqrt(log 1/sigma))\"\n";
  out << "set ylabel \"log rho_emp\"\n";
  out << "set key top left\n";
  out << "plot $rates using 1:2 with points pt 7 title \"empirical\", f(x) with lines title "
         "\"least squares\"\n";
  return out.str();
}

}  // namespace shiftreg
