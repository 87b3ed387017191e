#include "hlq/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "hlq/confirm.hpp"
#include "hlq/errors.hpp"
#include "hlq/parallel.hpp"

namespace hlq::cli {
namespace {

constexpr double kConfirmTolerance = 1e-5;

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericFailure(std::string("non-finite ") + what);
  }
  return v;
}

approx::EvalSpec make_spec(const RunConfig& c, approx::Algo default_algo, double default_eps) {
  approx::EvalSpec spec;
  spec.algo = c.algo.value_or(default_algo);
  spec.eps = c.eps.value_or(default_eps);
  spec.em_depth = c.em_depth;
  return spec;
}

PiRational grid_point(const RunConfig& c, double v) {
  return c.pi_units ? PiRational::from_pi_multiple(v) : PiRational::from_real(v);
}

// Exact decimal x/pi without padding zeros.
std::string pi_string(const PiRational& x) {
  std::string s = x.pi_multiple_string(18);
  if (s.find('.') != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace

unsigned resolve_cli_workers(std::optional<unsigned> flag) {
  if (flag && *flag > 0) {
    return *flag;
  }
  if (const char* env = std::getenv("HLQ_THREADS")) {
    unsigned v = 0;
    std::string_view s(env);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && v > 0) {
      return v;
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string format_value(double v, int digits) {
  digits = std::clamp(digits, 1, 17);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PiRational x = parse_pi_decimal(c.x_pi);
    approx::EvalSpec spec = make_spec(c, approx::Algo::half, 0.05);
    auto t0 = std::chrono::steady_clock::now();
    approx::ApproxResult r = approx::evaluate(x, spec, c.workers);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    checked(r.value, "value");
    if (!r.warning.empty()) {
      err << "warning: " << r.warning << '\n';
    }
    out << "x/pi,algo,value,err_heuristic,n_terms,wall_ms\n";
    out << x.pi_multiple_string() << ',' << approx::algo_name(r.algo) << ','
        << format_value(r.value, c.digits) << ',' << format_value(r.err_heuristic, 3) << ','
        << (r.n_terms_main + r.n_terms_phase) << ',' << format_value(ms, 6) << '\n';
    if (c.confirm) {
      t0 = std::chrono::steady_clock::now();
      approx::ConfirmResult mp = approx::q_third_confirm(x, std::max(c.digits, 60), c.workers);
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out << x.pi_multiple_string() << ",third_mp," << mp.text << ",,"
          << (mp.n_terms_main + mp.n_terms_phase) << ',' << format_value(ms, 6) << '\n';
    }
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(c.x_hi >= c.x_lo) || !(c.step > 0.0)) {
      throw DomainError("compare: need x_hi >= x_lo and step > 0");
    }
    approx::EvalSpec spec_a = make_spec(c, approx::Algo::direct, 0.05);
    approx::EvalSpec spec_b = spec_a;
    spec_b.algo = c.algo_b;
    out << "x,q_a,q_b,diff\n";
    if (c.x_hi == c.x_lo) {
      return kExitOk;
    }
    auto count = static_cast<std::uint64_t>(std::floor((c.x_hi - c.x_lo) / c.step + 1e-9)) + 1;
    for (std::uint64_t i = 0; i < count; ++i) {
      double v = c.x_lo + static_cast<double>(i) * c.step;
      PiRational x = grid_point(c, v);
      double qa = checked(approx::evaluate(x, spec_a, c.workers).value, "q_a");
      double qb = checked(approx::evaluate(x, spec_b, c.workers).value, "q_b");
      out << format_value(v, 15) << ',' << format_value(qa, c.digits) << ','
          << format_value(qb, c.digits) << ',' << format_value(qa - qb, 3) << '\n';
    }
    return kExitOk;
  });
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    double lo = c.pi_units ? c.x_lo * std::numbers::pi : c.x_lo;
    double hi = c.pi_units ? c.x_hi * std::numbers::pi : c.x_hi;
    approx::EvalSpec spec = make_spec(c, approx::Algo::half, 0.05);
    auto records = search::local_extrema_scan(lo, hi, spec, c.workers);
    out << "x/pi,value,kind,index,algo\n";
    for (const auto& r : records) {
      out << r.x.pi_multiple_string(8) << ',' << format_value(checked(r.q_value, "value"), c.digits)
          << ',' << search::kind_name(r.kind) << ',' << r.index.get_str() << ','
          << approx::algo_name(r.algo) << '\n';
    }
    return kExitOk;
  });
}

int cmd_hl_search(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    search::HLConstruction hc = search::big_K(c.k);
    approx::EvalSpec spec = (c.k <= 6) ? make_spec(c, approx::Algo::half, 0.025)
                                       : make_spec(c, approx::Algo::third, 0.025);
    BigInt j_lo = 1;
    BigInt j_hi = hc.K;
    if (!c.j_lo.empty() && j_lo.set_str(c.j_lo, 10) != 0) {
      throw ParseError("bad --j-lo '" + c.j_lo + "'");
    }
    if (!c.j_hi.empty() && j_hi.set_str(c.j_hi, 10) != 0) {
      throw ParseError("bad --j-hi '" + c.j_hi + "'");
    }
    search::ScanOptions opts;
    opts.offset = parse_pi_decimal(c.probe_offset);
    opts.block = c.block;
    if (c.checkpoint_path) {
      opts.checkpoint = *c.checkpoint_path;
    }
    out << "event,kind,j,x/pi,value\n";
    auto row = [&](std::string_view event, const search::ExtremeRecord& r) {
      out << event << ',' << search::kind_name(r.kind) << ',' << r.index.get_str() << ','
          << pi_string(r.x) << ',' << format_value(checked(r.q_value, "value"), c.digits)
          << '\n';
    };
    opts.on_record = [&](const search::ExtremeRecord& r) {
      row("record", r);
      out.flush();
    };
    search::ScanResult res = search::scan_hl(hc, c.variant, j_lo, j_hi, spec, c.workers, opts);
    row("final", res.max);
    row("final", res.min);
    if (spec.algo == approx::Algo::third) {
      // re-evaluate the extremes with the O(x^(1/2+eps)) formula
      for (const search::ExtremeRecord* r : {&res.max, &res.min}) {
        search::ExtremeRecord check = *r;
        check.q_value = approx::q_half(r->x, 0.05, 4, c.workers).value;
        row("confirm", check);
        if (std::fabs(check.q_value - r->q_value) > kConfirmTolerance) {
          err << "warning: " << search::kind_name(r->kind) << " at j=" << r->index.get_str()
              << " differs from the confirming evaluation by "
              << format_value(check.q_value - r->q_value, 3) << '\n';
        }
      }
    }
    return kExitOk;
  });
}

int cmd_verify_identity(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    search::IntegralIdentity r = search::integral_identity(c.y, c.n_max);
    out << "y,n_max,integral,series,tail,residual\n";
    out << format_value(c.y, 15) << ',' << c.n_max << ',' << format_value(r.integral, 17) << ','
        << format_value(r.series, 17) << ',' << format_value(r.tail, 17) << ','
        << format_value(r.residual, 3) << '\n';
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and search the Hardy-Littlewood function Q(x) = sum sin(x/n)/n"};
  app.require_subcommand(1);

  RunConfig c;
  std::optional<unsigned> workers;
  std::string algo;
  std::string algo_b = "direct";
  std::string variant = "hat";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--algo", algo, "direct | half | third | trunc");
    sub->add_option("--eps", c.eps, "epsilon for half/trunc");
    sub->add_option("--em-depth", c.em_depth, "Bernoulli correction terms for half");
    sub->add_option("--workers", workers, "worker threads (default $HLQ_THREADS or all cores)");
    sub->add_option("--digits", c.digits, "significant digits in printed values");
    sub->add_option("--out", c.output_path, "write CSV here instead of stdout");
  };

  auto* eval = app.add_subcommand("eval", "evaluate Q at x = X*pi");
  common(eval);
  eval->add_option("--x-pi", c.x_pi, "x/pi as a decimal literal")->required();
  eval->add_flag("--confirm", c.confirm, "also evaluate q_third with >= 60 digits (MPFR)");

  auto* compare = app.add_subcommand("compare", "compare two algorithms on a grid");
  common(compare);
  compare->add_option("--x-lo", c.x_lo)->required();
  compare->add_option("--x-hi", c.x_hi)->required();
  compare->add_option("--step", c.step)->required();
  compare->add_option("--algo-b", algo_b, "second algorithm");
  compare->add_flag("--pi-units", c.pi_units, "grid values are multiples of pi");

  auto* scan = app.add_subcommand("scan", "running records of local extrema");
  common(scan);
  scan->add_option("--x-lo", c.x_lo)->required();
  scan->add_option("--x-hi", c.x_hi)->required();
  scan->add_flag("--pi-units", c.pi_units, "bounds are multiples of pi");

  auto* hl = app.add_subcommand("hl-search", "scan the lattice points (4j+1)K pi/2 or (4j+3)K pi/2");
  common(hl);
  hl->add_option("--k", c.k, "level k (K = product of M up to 4k+1)")->required();
  hl->add_option("--variant", variant, "plus | hat");
  hl->add_option("--j-lo", c.j_lo);
  hl->add_option("--j-hi", c.j_hi);
  hl->add_option("--checkpoint", c.checkpoint_path, "resumable state file");
  hl->add_option("--probe-offset", c.probe_offset, "added to every point, in units of pi");
  hl->add_option("--block", c.block, "indices per checkpoint");

  auto* ident = app.add_subcommand("verify-identity", "check int_0^y Q = 2 sum sin^2(y/2n)");
  common(ident);
  ident->add_option("--y", c.y)->required();
  ident->add_option("--n-max", c.n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  int rc = guarded(err, [&] {
    if (!algo.empty()) {
      c.algo = approx::parse_algo(algo);
    }
    c.algo_b = approx::parse_algo(algo_b);
    c.variant = search::parse_variant(variant);
    if (c.eps && !(*c.eps > 0.0 && *c.eps < 0.5)) {
      throw DomainError("--eps must lie in (0, 0.5)");
    }
    return kExitOk;
  });
  if (rc != kExitOk) {
    return rc;
  }
  c.workers = resolve_cli_workers(workers);
  set_default_workers(c.workers);

  std::ofstream file;
  std::ostream* sink = &out;
  if (c.output_path) {
    file.open(*c.output_path, std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << *c.output_path << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  sink->imbue(std::locale::classic());

  if (eval->parsed()) return cmd_eval(c, *sink, err);
  if (compare->parsed()) return cmd_compare(c, *sink, err);
  if (scan->parsed()) return cmd_scan(c, *sink, err);
  if (hl->parsed()) return cmd_hl_search(c, *sink, err);
  return cmd_verify_identity(c, *sink, err);
}

}  // namespace hlq::cli
