#pragma once

// Command-line front end. Commands: eval, compare, verify, asy, lattice, hardy.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbessel/router.hpp"

namespace pbessel::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --help was given; what() holds the text
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { eval, compare, verify, asy, lattice, hardy };
enum class Format { csv, json, svg };

struct RRange {
  double start = 0;
  double stop = 0;
  double step = 1;
};

struct RunConfig {
  Command command = Command::eval;
  std::vector<std::string> p_list;
  std::vector<double> omega_list;
  std::vector<double> phi_list;
  std::vector<double> r_values;  // expanded from r_range or an explicit list
  std::optional<RRange> r_range;
  MethodChoice method = MethodChoice::automatic;
  std::optional<double> tol;
  std::string output_path;  // empty or "-" is stdout
  Format format = Format::csv;

  double imag = 0;                  // eval: z = r + i imag
  std::string suite = "all";        // verify
  std::vector<double> gamma_list;   // verify
  int samples = 400;                // asy
  std::string fit = "envelope";     // asy
  std::optional<double> expect_slope;
  double slope_tol = 0.05;
  long long K = 10000;              // hardy at p = 2
  double S = 100;                   // hardy otherwise
  int threads = 0;                  // 0: hardware concurrency
};

/// "a:b:s" (inclusive, step > 0), "a" or "a,b,c".
std::vector<double> parse_r_spec(const std::string& spec);
std::vector<double> expand_range(const RRange& r);

Command parse_command(const std::string& name);
Format parse_format(const std::string& name);

/// Throws UsageError on bad flag combinations.
RunConfig parse_args(int argc, const char* const* argv);
void load_config_json(const std::string& path, RunConfig& cfg);
void validate(const RunConfig& cfg);

/// 0 pass, 1 numerical failure; rows go to out, diagnostics to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with exit code 2 on usage errors.
int main_entry(int argc, const char* const* argv);

}  // namespace pbessel::cli
