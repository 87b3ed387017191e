#include "hlq/search.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hlq/errors.hpp"
#include "hlq/parallel.hpp"

namespace hlq::search {
namespace {

constexpr double kGoldenInv = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr int kGridPoints = 21;
constexpr double kRefineWidth = 1e-3;  // in units of pi
constexpr std::size_t kIntervalBlock = 4096;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "'");
  }
  return v;
}

BigInt parse_bigint(std::string_view s) {
  if (s.empty()) {
    throw ParseError("empty integer");
  }
  BigInt v;
  if (v.set_str(std::string(s), 10) != 0) {
    throw ParseError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

// Value of `mag` when it fits into 64 bits.
std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw DomainError("value does not fit in 64 bits");
  }
  return mpz_getlimbn(v.get_mpz_t(), 0);
}

// Euler-Maclaurin estimate of sum_{n > L} n^-s.
double zeta_tail(double L, double s) {
  return std::pow(L, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(L, -s) +
         s * std::pow(L, -s - 1.0) / 12.0 - s * (s + 1.0) * (s + 2.0) * std::pow(L, -s - 3.0) / 720.0;
}

struct Extremum {
  double t = 0.0;  // x/pi
  double value = 0.0;
  approx::Algo algo = approx::Algo::direct;
};

Extremum locate_extremum(double a, double b, bool maximize, const approx::EvalSpec& spec) {
  const double sign = maximize ? 1.0 : -1.0;
  Extremum best;
  double best_score = -INFINITY;
  auto eval = [&](double t) {
    approx::ApproxResult r = approx::evaluate(PiRational::from_pi_multiple(t), spec, 1);
    double score = sign * r.value;
    if (score > best_score) {
      best_score = score;
      best = {t, r.value, r.algo};
    }
    return score;
  };

  const double h = (b - a) / (kGridPoints - 1);
  int best_g = 0;
  double best_grid = -INFINITY;
  for (int g = 0; g < kGridPoints; ++g) {
    double score = eval(a + g * h);
    if (score > best_grid) {
      best_grid = score;
      best_g = g;
    }
  }
  double lo = a + std::max(best_g - 1, 0) * h;
  double hi = a + std::min(best_g + 1, kGridPoints - 1) * h;
  double c = hi - kGoldenInv * (hi - lo);
  double d = lo + kGoldenInv * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  while (hi - lo > kRefineWidth) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGoldenInv * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGoldenInv * (hi - lo);
      fd = eval(d);
    }
  }
  eval(0.5 * (lo + hi));
  return best;
}

}  // namespace

std::string_view variant_name(Variant v) { return v == Variant::plus ? "plus" : "hat"; }

Variant parse_variant(std::string_view name) {
  if (name == "plus") {
    return Variant::plus;
  }
  if (name == "hat") {
    return Variant::hat;
  }
  throw ParseError("unknown variant '" + std::string(name) + "' (expected plus or hat)");
}

std::string_view kind_name(ExtremeKind k) { return k == ExtremeKind::max ? "max" : "min"; }

// A prime factor p of q with p = 3 mod 4 would itself be a divisor that is
// not 1 mod 4; conversely products of primes = 1 mod 4 stay = 1 mod 4, so the
// two characterisations of M agree.
std::vector<std::uint64_t> gen_set_M(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 5) {
    return out;
  }
  std::vector<std::uint32_t> spf(limit + 1, 0);  // smallest prime factor
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t m = i; m <= limit; m += i) {
        if (spf[m] == 0) {
          spf[m] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }
  for (std::uint64_t q = 2; q <= limit; ++q) {
    std::uint64_t r = q;
    bool ok = true;
    while (r > 1) {
      std::uint64_t p = spf[r];
      if (p % 4 != 1) {
        ok = false;
        break;
      }
      r /= p;
    }
    if (ok) {
      out.push_back(q);
    }
  }
  return out;
}

HLConstruction big_K(int k) {
  if (k < 1 || k > 64) {
    throw DomainError("big_K: k must be in [1, 64]");
  }
  HLConstruction c;
  c.k = k;
  c.elements = gen_set_M(4 * static_cast<std::uint64_t>(k) + 1);
  c.K = 1;
  for (std::uint64_t q : c.elements) {
    c.K *= static_cast<unsigned long>(q);
  }
  return c;
}

PiRational hl_point(const HLConstruction& c, const BigInt& j, Variant variant) {
  if (j < 1 || j > c.K) {
    throw DomainError("hl_point: j must be in [1, K]");
  }
  BigInt p = (4 * j + (variant == Variant::plus ? 1 : 3)) * c.K;
  return PiRational(std::move(p), 2);
}

std::string format_checkpoint(const Checkpoint& cp) {
  std::ostringstream out;
  out << cp.k << ' ' << variant_name(cp.variant) << ' ' << cp.j_done.get_str() << ' '
      << cp.max_j.get_str() << ' ' << format_double(cp.max_val) << ' ' << cp.min_j.get_str()
      << ' ' << format_double(cp.min_val) << '\n';
  return out.str();
}

Checkpoint parse_checkpoint(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\n' || line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\n' || line[i] == '\r')) {
      ++i;
    }
    if (i > start) {
      fields.push_back(line.substr(start, i - start));
    }
  }
  if (fields.size() != 7) {
    throw ParseError("checkpoint line needs 7 fields, got " + std::to_string(fields.size()));
  }
  Checkpoint cp;
  int k = 0;
  auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), k);
  if (res.ec != std::errc() || res.ptr != fields[0].data() + fields[0].size()) {
    throw ParseError("bad k in checkpoint");
  }
  cp.k = k;
  cp.variant = parse_variant(fields[1]);
  cp.j_done = parse_bigint(fields[2]);
  cp.max_j = parse_bigint(fields[3]);
  cp.max_val = parse_double(fields[4]);
  cp.min_j = parse_bigint(fields[5]);
  cp.min_val = parse_double(fields[6]);
  return cp;
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return std::nullopt;
  }
  std::string line;
  if (!std::getline(in, line)) {
    return std::nullopt;
  }
  return parse_checkpoint(line);
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write checkpoint " + tmp.string());
    }
    out << format_checkpoint(cp);
  }
  std::filesystem::rename(tmp, path);
}

ScanResult scan_hl(const HLConstruction& c, Variant variant, const BigInt& j_lo,
                   const BigInt& j_hi, const approx::EvalSpec& spec, unsigned workers,
                   const ScanOptions& options) {
  if (j_lo < 1 || j_lo > j_hi || j_hi > c.K) {
    throw DomainError("scan_hl: need 1 <= j_lo <= j_hi <= K");
  }
  if (options.block == 0) {
    throw DomainError("scan_hl: block size must be positive");
  }
  auto point = [&](const BigInt& j) { return hl_point(c, j, variant) + options.offset; };

  ScanResult result;
  bool have_records = false;
  BigInt next = j_lo;
  if (options.checkpoint) {
    if (auto cp = read_checkpoint(*options.checkpoint)) {
      if (cp->k != c.k || cp->variant != variant || cp->j_done < j_lo || cp->j_done > j_hi) {
        throw DomainError("checkpoint " + options.checkpoint->string() +
                          " belongs to a different scan");
      }
      next = cp->j_done + 1;
      result.max = {point(cp->max_j), cp->max_val, ExtremeKind::max, cp->max_j, spec.algo};
      result.min = {point(cp->min_j), cp->min_val, ExtremeKind::min, cp->min_j, spec.algo};
      have_records = true;
    }
  }

  std::vector<double> values;
  std::vector<approx::Algo> algos;
  while (next <= j_hi) {
    BigInt remaining = j_hi - next + 1;
    std::uint64_t len = remaining > BigInt(static_cast<unsigned long>(options.block))
                            ? options.block
                            : to_u64(remaining);
    values.assign(len, 0.0);
    algos.assign(len, spec.algo);
    parallel_for(len, workers, [&](std::size_t i) {
      BigInt j = next + static_cast<unsigned long>(i);
      approx::ApproxResult r = approx::evaluate(point(j), spec, 1);
      values[i] = r.value;
      algos[i] = r.algo;
    });
    for (std::size_t i = 0; i < len; ++i) {
      BigInt j = next + static_cast<unsigned long>(i);
      double v = values[i];
      if (!have_records || v > result.max.q_value) {
        result.max = {point(j), v, ExtremeKind::max, j, algos[i]};
        if (options.on_record) options.on_record(result.max);
      }
      if (!have_records || v < result.min.q_value) {
        result.min = {point(j), v, ExtremeKind::min, j, algos[i]};
        if (options.on_record) options.on_record(result.min);
      }
      have_records = true;
    }
    next += static_cast<unsigned long>(len);
    if (options.checkpoint) {
      write_checkpoint(*options.checkpoint,
                       {c.k, variant, next - 1, result.max.index, result.max.q_value,
                        result.min.index, result.min.q_value});
    }
  }
  return result;
}

std::vector<ExtremeRecord> local_extrema_scan(double x_lo, double x_hi,
                                              const approx::EvalSpec& spec, unsigned workers) {
  if (!(x_lo >= 0.0 && x_lo < x_hi) || !std::isfinite(x_hi)) {
    throw DomainError("local_extrema_scan: need 0 <= x_lo < x_hi");
  }
  const double t_lo = x_lo / std::numbers::pi;
  const double t_hi = x_hi / std::numbers::pi;
  const auto first = static_cast<std::uint64_t>(std::floor(t_lo));
  const auto last = static_cast<std::uint64_t>(std::ceil(t_hi));  // exclusive

  std::vector<ExtremeRecord> records;
  bool have_max = false;
  bool have_min = false;
  double best_max = 0.0;
  double best_min = 0.0;
  std::vector<Extremum> found;
  for (std::uint64_t block = first; block < last; block += kIntervalBlock) {
    std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kIntervalBlock, last - block));
    found.assign(len, Extremum{});
    parallel_for(len, workers, [&](std::size_t i) {
      std::uint64_t n = block + i;
      double a = std::max(static_cast<double>(n), t_lo);
      double b = std::min(static_cast<double>(n + 1), t_hi);
      if (b > a) {
        found[i] = locate_extremum(a, b, n % 2 == 0, spec);
      }
    });
    for (std::size_t i = 0; i < len; ++i) {
      std::uint64_t n = block + i;
      double a = std::max(static_cast<double>(n), t_lo);
      double b = std::min(static_cast<double>(n + 1), t_hi);
      if (!(b > a)) {
        continue;
      }
      const Extremum& e = found[i];
      bool is_max = n % 2 == 0;
      if (is_max && (!have_max || e.value > best_max)) {
        have_max = true;
        best_max = e.value;
      } else if (!is_max && (!have_min || e.value < best_min)) {
        have_min = true;
        best_min = e.value;
      } else {
        continue;
      }
      records.push_back({PiRational::from_pi_multiple(e.t), e.value,
                         is_max ? ExtremeKind::max : ExtremeKind::min,
                         BigInt(static_cast<unsigned long>(n)), e.algo});
    }
  }
  return records;
}

IntegralIdentity integral_identity(double y, std::uint64_t n_max) {
  if (!(y > 0.0 && y <= 100.0)) {
    throw DomainError("integral_identity: y must be in (0, 100]");
  }
  if (n_max < 1) {
    throw DomainError("integral_identity: n_max must be >= 1");
  }
  IntegralIdentity out;
  auto q = [](double x) { return approx::q_direct_real(x); };
  out.integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(q, 0.0, y, 10, 1e-13);

  CompensatedSum series;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    double s = std::sin(y / (2.0 * static_cast<double>(n)));
    series.add(2.0 * s * s);
  }
  out.series = series.value();

  // 2 sin^2(z) = 2z^2 - (2/3) z^4 + ..., z = y/(2n).
  const double L = static_cast<double>(n_max);
  const double y2 = y * y;
  out.tail = 0.5 * y2 * zeta_tail(L, 2.0) - y2 * y2 / 24.0 * zeta_tail(L, 4.0);
  out.residual = std::fabs(out.integral - out.series - out.tail);
  return out;
}

double verify_integral_identity(double y, std::uint64_t n_max) {
  return integral_identity(y, n_max).residual;
}

}  // namespace hlq::search
