#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "shiftreg/binomial.hpp"
#include "shiftreg/errors.hpp"
#include "shiftreg/experiments.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/lemmas.hpp"
#include "shiftreg/lower_bound.hpp"
#include "shiftreg/minimax.hpp"

namespace shiftreg {

using Json = nlohmann::ordered_json;

/// Malformed input document; the message names the offending field.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Serializes with every double printed to 17 significant digits, so that
/// parse(dump(x)) restores x bit for bit. Negative indent gives one line.
std::string dump_json(const Json& value, int indent = 2);

/// Parses text, rethrowing syntax errors as ParseError with byte position.
Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// {"J": int, "coeffs": [[re, im], ...]}
Json to_json(const FourierSequence& seq);
FourierSequence sequence_from_json(const Json& doc, std::string_view field = "sequence");

/// {"sigma": f64, "y": sequence, "y_sharp": sequence}; sigma is omitted
/// for a bare coefficient pair.
Json to_json(const ObservationPair& obs);
Json pair_to_json(const SequencePair& pair);

/// Contents of a pair file before the noise level is fixed.
struct LoadedPair {
  FourierSequence y;
  FourierSequence y_sharp;
  std::optional<double> sigma;

  /// The file's sigma unless `override_sigma` is set. Throws ParseError if
  /// neither provides one.
  ObservationPair observation(std::optional<double> override_sigma = std::nullopt) const;
};

/// Validates the pair schema: both sequences present, finite, equal J
/// ("J mismatch: 64 vs 32"), positive sigma when given.
LoadedPair pair_from_json(const Json& doc);
LoadedPair load_pair(const std::filesystem::path& path);

/// {"statistic", "threshold", "reject", "tau_star", "N", "per_N"?}; N is an
/// integer for the nonadaptive test and a list for the adaptive one.
Json to_json(const TestOutcome& outcome);

Json to_json(const ErrorEstimate& estimate);
Json to_json(const LowerBoundResult& result);
Json to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const Json& doc);
Json to_json(const ExperimentConfig& cfg);
/// Keys: test, sigma, s, L, alpha, s1, s2, instance, trials, seed,
/// parallelism. Missing keys keep the values from `defaults`.
ExperimentConfig experiment_config_from_json(const Json& doc, ExperimentConfig defaults = {});
Json to_json(const SweepConfig& cfg);
SweepConfig sweep_config_from_json(const Json& doc, SweepConfig defaults = {});
Json to_json(const SweepResult& result);
Json to_json(const TailCheckResult& result);
Json to_json(const NullDistributionSummary& summary);
Json to_json(const LemmaReport& report);

/// Formats with "%.17g".
std::string format_double(double value);

/// Header "sigma,rho_star,c_hat,rho_emp,trials,ci_low,ci_high", one line per row.
std::string sweep_csv(const SweepResult& result);

/// Header "test_kind,sigma,instance,trials,seed,events,rate,ci_low,ci_high".
std::string estimate_csv_header();
std::string estimate_csv_row(const ExperimentConfig& cfg, const ErrorEstimate& est);

/// A self-contained gnuplot script: an inline datablock of
/// (log(sigma^2 sqrt(log 1/sigma)), log rho_emp) pairs, the fitted line, and
/// the slope in the title. `csv_name` is referenced in a comment only.
std::string sweep_gnuplot(const SweepResult& result, std::string_view csv_name);

}  // namespace shiftreg
