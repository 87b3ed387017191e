#pragma once

// Extreme-value search for Q(x).
//
// The set M holds the integers > 1 all of whose prime factors are 1 mod 4
// (equivalently, all of whose divisors > 1 are 1 mod 4). K(k) is the product
// of the elements of M up to 4k+1. At the lattice points
//   x_j = (4j+1) K pi/2   and   xhat_j = (4j+3) K pi/2
// every term sin(x/n) with n | K equals +1 (resp. -1), which biases Q
// towards large positive (resp. negative) values.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlq/approx.hpp"
#include "hlq/exact_args.hpp"

namespace hlq::search {

enum class Variant { plus, hat };
enum class ExtremeKind { max, min };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);  // "plus" | "hat"
std::string_view kind_name(ExtremeKind k);

struct HLConstruction {
  int k = 0;
  std::vector<std::uint64_t> elements;  // ascending
  BigInt K = 1;
};

struct ExtremeRecord {
  PiRational x;
  double q_value = 0.0;
  ExtremeKind kind = ExtremeKind::max;
  BigInt index = 0;  // j for lattice scans, interval number for local scans
  approx::Algo algo = approx::Algo::direct;
};

struct ScanResult {
  ExtremeRecord max;
  ExtremeRecord min;
};

// Elements of M up to `limit`, ascending. 1 is not included.
std::vector<std::uint64_t> gen_set_M(std::uint64_t limit);

// 1 <= k <= 64.
HLConstruction big_K(int k);

// (4j+1)K/2 or (4j+3)K/2 as a multiple of pi; 1 <= j <= K.
PiRational hl_point(const HLConstruction& c, const BigInt& j, Variant variant);

struct ScanOptions {
  // Added to every lattice point (e.g. -0.1 pi).
  PiRational offset{};
  // Progress is persisted after every block; an existing file for the same
  // k and variant is resumed.
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t block = 1'000'000;
  // Called in index order for every new running maximum or minimum.
  std::function<void(const ExtremeRecord&)> on_record;
};

// Argmax and argmin of Q over j in [j_lo, j_hi]; ties go to the smaller j.
ScanResult scan_hl(const HLConstruction& c, Variant variant, const BigInt& j_lo,
                   const BigInt& j_hi, const approx::EvalSpec& spec, unsigned workers = 0,
                   const ScanOptions& options = {});

// One checkpoint line: "k variant j_done max_j max_val min_j min_val".
struct Checkpoint {
  int k = 0;
  Variant variant = Variant::plus;
  BigInt j_done = 0;
  BigInt max_j = 0;
  double max_val = 0.0;
  BigInt min_j = 0;
  double min_val = 0.0;
};

std::string format_checkpoint(const Checkpoint& cp);
Checkpoint parse_checkpoint(std::string_view line);  // throws ParseError
std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

// Local maxima lie in [2n pi, (2n+1) pi] and minima in [(2n+1) pi, (2n+2) pi].
// Each half-period inside [x_lo, x_hi] is searched on a 21-point grid and
// refined by golden section to a bracket of width <= 1e-3 pi; only running
// records (new largest maximum / new smallest minimum) are returned, in
// order of x. `index` is the half-period number floor(x/pi).
std::vector<ExtremeRecord> local_extrema_scan(double x_lo, double x_hi,
                                              const approx::EvalSpec& spec,
                                              unsigned workers = 0);

struct IntegralIdentity {
  double integral = 0.0;  // int_0^y Q
  double series = 0.0;    // 2 sum_{n<=n_max} sin^2(y/2n)
  double tail = 0.0;      // analytic estimate of the n > n_max part
  double residual = 0.0;  // |integral - series - tail|
};

// Checks int_0^y Q(x) dx = 2 sum_{n>=1} sin^2(y/(2n)) for 0 < y <= 100.
IntegralIdentity integral_identity(double y, std::uint64_t n_max);
double verify_integral_identity(double y, std::uint64_t n_max);

}  // namespace hlq::search
