// borelcalc: command-line front end. Results go to --out (or stdout when
// absent); the human-readable report goes to stdout, or stderr when the
// CSV itself is on stdout.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "borelcalc/borel.hpp"
#include "borelcalc/demos.hpp"
#include "borelcalc/error.hpp"
#include "borelcalc/fftsolve.hpp"
#include "borelcalc/io.hpp"
#include "borelcalc/kernels.hpp"
#include "borelcalc/solver.hpp"
#include "borelcalc/zeros.hpp"

using namespace borelcalc;
using io::format_double;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

struct Job {
  std::string symbol;
  std::string symbol_coeffs;
  std::string exppoly;
  std::string taylor;
  std::string samples;
  std::optional<double> radius;
  std::optional<double> tau;
  std::string strip;
  double y0 = 2.0;
  double tol = 1e-10;
  std::string out;
  std::size_t points = 64;
  std::string grid = "-3,3,61";
  double interval = 1.0;
  std::string demo;
};

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Symbol load_symbol(const Job& j) {
  if (!j.symbol.empty() == !j.symbol_coeffs.empty()) throw Usage("give exactly one of --symbol, --symbol-coeffs");
  if (!j.symbol.empty()) return Symbol::parse(j.symbol);
  return Symbol::polynomial(io::parse_coeffs(io::read_file(j.symbol_coeffs)), true);
}

ExpFunction load_function(const Job& j) {
  if (!j.exppoly.empty() == !j.taylor.empty()) throw Usage("give exactly one of --exppoly, --taylor");
  if (!j.exppoly.empty()) return io::parse_exppoly(io::read_file(j.exppoly));
  return io::parse_taylor(io::read_file(j.taylor));
}

std::pair<double, double> parse_pair(const std::string& s, const char* flag) {
  std::istringstream in(s);
  double a, b;
  char comma;
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw Usage(std::string(flag) + " expects two comma-separated numbers");
  }
  return {a, b};
}

std::vector<double> parse_grid(const std::string& s) {
  std::istringstream in(s);
  double a, b;
  std::size_t n;
  char c1, c2;
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ',' || c2 != ',' || n < 2 || !(a < b)) {
    throw Usage("--grid expects a,b,n with a < b and n >= 2");
  }
  return uniform_grid(a, b, n);
}

// CSV sink plus report stream chosen by whether --out was given.
struct Sinks {
  std::ostringstream csv;
  std::ostream& report;
  std::string path;

  explicit Sinks(const std::string& out) : report(out.empty() ? std::cerr : std::cout), path(out) {}
  void flush() {
    if (path.empty()) {
      std::cout << csv.str();
    } else {
      io::write_file(path, csv.str());
    }
  }
};

std::string cx_text(cx v) { return format_double(v.real()) + " " + format_double(v.imag()); }

void write_function_csv(std::ostream& os, const ExpFunction& f, const std::vector<double>& xs) {
  std::vector<cx> vals;
  for (double x : xs) vals.push_back(evaluate(f, x));
  io::write_points_csv(os, xs, vals);
}

int cmd_borel(const Job& j) {
  if (!j.radius) throw Usage("borel needs --radius");
  if (!(*j.radius > 0.0)) throw Error(ErrorKind::BadRange, "--radius must be positive");
  if (!(j.tol > 0.0)) throw Usage("--tol must be positive");
  const ExpFunction g = load_function(j);
  Sinks out(j.out);
  out.csv << "zeta_re,zeta_im,re,im\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < j.points; ++k) {
    const cx zeta = std::polar(*j.radius, 2.0 * kPi * double(k) / double(j.points));
    cx v;
    if (const auto* p = std::get_if<ExpPoly>(&g)) {
      v = borel_exppoly(*p)(zeta);
    } else {
      const auto bv = borel_series(std::get<TaylorRep>(g), zeta, std::get<TaylorRep>(g).b.size(), j.tol);
      v = bv.value;
      worst = std::max(worst, bv.est_error);
    }
    out.csv << format_double(zeta.real()) << ',' << format_double(zeta.imag()) << ',' << format_double(v.real())
            << ',' << format_double(v.imag()) << '\n';
  }
  out.report << "command: borel\nradius: " << format_double(*j.radius) << "\npoints: " << j.points
             << "\nest_error: " << format_double(worst) << '\n';
  out.flush();
  return 0;
}

int cmd_solve(const Job& j) {
  const Symbol phi = load_symbol(j);
  const ExpFunction g = load_function(j);
  const auto xs = parse_grid(j.grid);
  SolveOptions so;
  so.R_hint = j.radius;
  if (j.tol > 0.0) so.tol = std::min(j.tol, 1e-12);
  else throw Usage("--tol must be positive");
  const double tau = j.tau.value_or(0.0);
  if (tau < 0.0) throw Usage("--tau must be nonnegative");
  SolveReport rep = j.radius ? solve_particular_contour(phi, g, so) : general_solution(phi, g, 0.0, so);
  if (tau > 0.0) rep.homogeneous_basis = homogeneous_basis(phi, tau);

  Sinks out(j.out);
  write_function_csv(out.csv, rep.particular, xs);
  out.report << "command: solve\nsymbol: " << phi.describe() << '\n';
  if (const auto* p = std::get_if<ExpPoly>(&rep.particular)) {
    out.report << "method: atomic\nparticular: " << io::dump_exppoly(*p) << '\n';
  } else {
    const auto& c = std::get<Circle>(rep.contour_used);
    out.report << "method: contour\ncontour_center: " << cx_text(c.center)
               << "\ncontour_radius: " << format_double(c.radius) << '\n';
  }
  out.report << "residual: " << format_double(rep.residual) << "\nbasis_size: " << rep.homogeneous_basis.size()
             << '\n';
  for (const auto& b : rep.homogeneous_basis) {
    const auto& a = b.atoms().front();
    out.report << "basis: x^" << a.poly.size() - 1 << " exp(" << cx_text(a.zeta) << " x)\n";
  }
  for (const auto& w : rep.warnings) out.report << "warning: " << w << '\n';
  out.flush();
  return 0;
}

int cmd_zeros(const Job& j) {
  if (!j.radius) throw Usage("zeros needs --radius");
  if (!(*j.radius > 0.0)) throw Error(ErrorKind::BadRange, "--radius must be positive");
  const Symbol phi = load_symbol(j);
  const ZeroSet Z = find_zeros(phi, *j.radius);
  Sinks out(j.out);
  io::write_zeros_csv(out.csv, Z);
  out.report << "command: zeros\nsymbol: " << phi.describe() << "\ndisk_radius: " << format_double(Z.disk_radius)
             << "\ndistinct: " << Z.zeros.size() << "\ntotal: " << Z.total() << '\n';
  // Density statistics need enough zeros away from the origin.
  std::vector<cx> pts;
  for (const cx z : Z.expanded()) {
    if (std::abs(z) > 1e-8) pts.push_back(z);
  }
  if (pts.size() >= 50) {
    const auto grid = log_grid(Z.disk_radius / 10.0, Z.disk_radius, 41);
    const auto d = density_report(pts, grid, j.interval);
    out.report << "linear_slope: " << format_double(d.linear_slope)
               << "\nexponent_estimate: " << format_double(d.exponent_estimate)
               << "\nlevinson: " << to_string(d.levinson.verdict) << "\ntgb: " << to_string(d.growth.verdict) << '\n';
  } else {
    out.report << "density: skipped (fewer than 50 nonzero zeros)\n";
  }
  out.flush();
  return 0;
}

int cmd_fft_solve(const Job& j) {
  if (j.samples.empty()) throw Usage("fft-solve needs --samples");
  if (j.strip.empty()) throw Usage("fft-solve needs --strip xi_minus,xi_plus");
  const Symbol phi = load_symbol(j);
  const SampledSignal g = io::parse_samples_csv(io::read_file(j.samples));
  const auto [xm, xp] = parse_pair(j.strip, "--strip");
  const StripConfig cfg = configure_strip(phi, g, xm, xp, j.y0);
  const FftSolveResult res = fft_solve(phi, g, cfg);
  Sinks out(j.out);
  io::write_samples_csv(out.csv, res.f);
  out.report << "command: fft-solve\nsymbol: " << phi.describe() << "\nX_minus: " << format_double(cfg.X_minus)
             << "\nX_plus: " << format_double(cfg.X_plus) << "\nxi_minus: " << format_double(cfg.xi_minus)
             << "\nxi_plus: " << format_double(cfg.xi_plus) << "\nY0: " << format_double(cfg.Y0)
             << "\nepsilon: " << format_double(cfg.epsilon) << '\n';
  for (const auto& w : cfg.warnings) out.report << "warning: " << w << '\n';
  for (const auto& w : res.warnings) out.report << "warning: " << w << '\n';
  out.flush();
  return 0;
}

int cmd_demo(const Job& j) {
  Sinks out(j.out);
  if (j.demo == "divergence") {
    const auto rows = demos::divergence();
    out.csv << "K,l1_norm\n";
    for (const auto& r : rows) out.csv << r.K << ',' << format_double(r.l1_norm) << '\n';
    bool increasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) increasing = increasing && rows[i].l1_norm > rows[i - 1].l1_norm;
    out.report << "demo: divergence\ncutoff: 40\nstrictly_increasing: " << (increasing ? "yes" : "no")
               << "\nratio_last_first: " << format_double(rows.back().l1_norm / rows.front().l1_norm) << '\n';
  } else if (j.demo == "heat") {
    const auto rows = demos::heat();
    out.csv << "t,x,re,im,exact\n";
    double worst = 0.0;
    for (const auto& r : rows) {
      out.csv << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.computed.real()) << ','
              << format_double(r.computed.imag()) << ',' << format_double(r.exact) << '\n';
      worst = std::max(worst, std::abs(r.computed - r.exact));
    }
    out.report << "demo: heat\nmax_error: " << format_double(worst) << '\n';
  } else if (j.demo == "density") {
    const auto d = demos::density();
    out.csv << "r,n,N,N_over_r\n";
    for (std::size_t i = 0; i < d.r_grid.size(); ++i) {
      out.csv << format_double(d.r_grid[i]) << ',' << d.report.counts.n[i] << ',' << format_double(d.report.counts.N[i])
              << ',' << format_double(d.report.counts.N[i] / d.r_grid[i]) << '\n';
    }
    out.report << "demo: density\nzeros: " << d.zeros.size() << "\nconstant: " << format_double(d.constant)
               << "\nmin_N_over_r: " << format_double(d.report.linear_slope)
               << "\nexponent_estimate: " << format_double(d.report.exponent_estimate)
               << "\nlevinson: " << to_string(d.report.levinson.verdict)
               << "\ntgb: " << to_string(d.report.growth.verdict) << '\n';
  } else {
    throw Usage("unknown demo '" + j.demo + "' (divergence, heat, density)");
  }
  out.flush();
  return 0;
}

void apply_thread_env() {
  const char* env = std::getenv("BORELCALC_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw Usage("BORELCALC_THREADS must be a positive integer");
  kernels::set_thread_cap(int(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve phi(d/dx) f = g through the Borel transform"};
  app.require_subcommand(1);
  Job job;

  const auto add_symbol = [&](CLI::App* c) {
    c->add_option("--symbol", job.symbol, "symbol expression in z");
    c->add_option("--symbol-coeffs", job.symbol_coeffs, "JSON file of Taylor coefficients");
  };
  const auto add_input = [&](CLI::App* c) {
    c->add_option("--exppoly", job.exppoly, "exponential polynomial JSON file");
    c->add_option("--taylor", job.taylor, "Taylor representation JSON file");
  };
  const auto add_common = [&](CLI::App* c) {
    c->add_option("--out", job.out, "output CSV path (stdout if absent)");
    c->add_option("--tol", job.tol, "quadrature tolerance");
  };

  auto* borel = app.add_subcommand("borel", "sample B(g) on a circle");
  add_input(borel);
  add_common(borel);
  borel->add_option("--radius", job.radius, "circle radius");
  borel->add_option("--points", job.points, "samples on the circle")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "particular solution plus homogeneous basis");
  add_symbol(solve);
  add_input(solve);
  add_common(solve);
  solve->add_option("--radius", job.radius, "contour radius (forces the contour method)");
  solve->add_option("--tau", job.tau, "disk radius for the homogeneous basis");
  solve->add_option("--grid", job.grid, "output grid a,b,n");

  auto* zeros = app.add_subcommand("zeros", "zeros of the symbol in a disk");
  add_symbol(zeros);
  add_common(zeros);
  zeros->add_option("--radius", job.radius, "disk radius");
  zeros->add_option("--interval", job.interval, "interval length for the Levinson check");

  auto* fft = app.add_subcommand("fft-solve", "sampled-data solver");
  add_symbol(fft);
  add_common(fft);
  fft->add_option("--samples", job.samples, "CSV with header x,re,im");
  fft->add_option("--strip", job.strip, "xi_minus,xi_plus");
  fft->add_option("--y0", job.y0, "half-height of the excluded band");

  auto* demo = app.add_subcommand("demo", "named reproductions");
  demo->add_option("name", job.demo, "divergence, heat or density")->required();
  demo->add_option("--out", job.out, "output CSV path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    apply_thread_env();
    if (*borel) return cmd_borel(job);
    if (*solve) return cmd_solve(job);
    if (*zeros) return cmd_zeros(job);
    if (*fft) return cmd_fft_solve(job);
    return cmd_demo(job);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (category(e.kind())) {
      case ErrorCategory::Input:
        return kExitUsage;
      case ErrorCategory::Domain:
        return kExitDomain;
      case ErrorCategory::Numerical:
        return kExitNumerical;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitNumerical;
}
