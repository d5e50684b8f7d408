#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gave::cli {

inline constexpr const char* kVersion = "0.1.0";

/// "a,b,c" or the inclusive grid "a:step:b" (step > 0).
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

struct ResultRow {
  std::string experiment;
  std::string method;
  std::optional<std::size_t> m;
  std::size_t n = 0;
  std::optional<double> parameter;
  std::size_t iterations = 0;
  std::optional<double> residual;
  double cpu_seconds = 0.0;
  std::optional<double> cpu_opt_seconds;
  std::string termination;
};

std::string result_header();
std::string format_row(const ResultRow& row);

/// Replaces `--config FILE` with flags read from FILE. The file holds flat
/// `key = value` lines (`#` starts a comment); keys may carry a leading `--`.
/// A key already given on the command line is left alone, so flags override
/// the file. Values land right after the subcommand name.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Entry point without the program name. Exit codes: solve returns 0/2/3 for
/// Converged/MaxIterations/NumericalBreakdown, check returns 0 or 4, any
/// usage or input error returns 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gave::cli
