#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hlq/approx.hpp"
#include "hlq/search.hpp"

namespace hlq::cli {

enum class Subcommand { eval, compare, scan, hl_search, verify_identity };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

struct RunConfig {
  Subcommand subcommand = Subcommand::eval;
  std::string x_pi = "0";
  std::optional<approx::Algo> algo;  // per-command default when unset
  approx::Algo algo_b = approx::Algo::direct;
  std::optional<double> eps;
  int em_depth = 4;
  unsigned workers = 1;
  int digits = 10;
  std::optional<std::string> output_path;
  std::optional<std::string> checkpoint_path;
  bool confirm = false;

  // compare / scan grid; in units of pi when pi_units is set
  double x_lo = 0.0;
  double x_hi = 0.0;
  double step = 1.0;
  bool pi_units = false;

  // hl-search
  int k = 0;
  search::Variant variant = search::Variant::hat;
  std::string j_lo;  // empty: 1
  std::string j_hi;  // empty: K
  std::string probe_offset = "0";
  std::uint64_t block = 1'000'000;

  // verify-identity
  double y = 1.0;
  std::uint64_t n_max = 1'000'000;
};

// --workers, else $HLQ_THREADS, else the hardware thread count.
unsigned resolve_cli_workers(std::optional<unsigned> flag);

// Locale-independent, `digits` significant digits.
std::string format_value(double v, int digits);

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_hl_search(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify_identity(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs the chosen subcommand; writes to `out` unless --out
// names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hlq::cli
