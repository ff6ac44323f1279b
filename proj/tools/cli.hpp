#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace shiftreg::cli {

/// Parsed command line. Unset optionals fall back to the config file and
/// then to the built-in default.
struct Options {
  std::string input;
  std::string output;
  std::string config;
  std::string json_output;
  std::optional<double> sigma, s, L, s1, s2, alpha, beta, tau, distance;
  std::optional<std::size_t> trials, parallelism, J, d_max, instances;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> test, kind;
  std::vector<double> sigmas;
  std::vector<std::size_t> n_values;
  std::string format = "csv";
  bool emit_plot = false;
  bool strict = false;
};

enum ExitCode : int { kOk = 0, kRuntime = 1, kUsage = 2, kRejected = 3 };

/// The full parser, one subcommand per operation.
std::unique_ptr<CLI::App> make_parser(Options& opts);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftreg::cli
