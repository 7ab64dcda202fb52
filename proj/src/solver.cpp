#include "borelcalc/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "borelcalc/borel.hpp"
#include "borelcalc/calculus.hpp"
#include "borelcalc/error.hpp"
#include "borelcalc/zeros.hpp"

namespace borelcalc {

namespace {

constexpr double kAnnulusHalfWidth = 0.1;
constexpr double kAtomFloor = 1e-8;

ExpFunction add(const ExpFunction& a, const ExpFunction& b) {
  const auto* pa = std::get_if<ExpPoly>(&a);
  const auto* pb = std::get_if<ExpPoly>(&b);
  if (pa && pb) return *pa + *pb;
  const auto as_taylor = [](const ExpFunction& f, std::size_t n) {
    if (const auto* p = std::get_if<ExpPoly>(&f)) return TaylorRep::from_exppoly(*p, n);
    auto t = std::get<TaylorRep>(f);
    t.b.resize(std::max(n, t.b.size()), 0.0);
    return t;
  };
  std::size_t n = TaylorRep::kDefaultLength;
  if (const auto* t = std::get_if<TaylorRep>(&a)) n = std::max(n, t->b.size());
  if (const auto* t = std::get_if<TaylorRep>(&b)) n = std::max(n, t->b.size());
  auto ta = as_taylor(a, n);
  const auto tb = as_taylor(b, n);
  for (std::size_t k = 0; k < n; ++k) ta.b[k] += tb.b[k];
  ta.tau = std::max(ta.tau, tb.tau);
  return ta;
}

BorelRep borel_of(const ExpFunction& g) {
  if (const auto* p = std::get_if<ExpPoly>(&g)) return borel_exppoly(*p);
  return borel_taylor(std::get<TaylorRep>(g));
}

// Radius of the smallest circle about `center` containing B(g)'s singularities.
double singular_radius(const BorelRep& B, cx center) {
  if (B.closed_form) {
    double r = 0.0;
    for (const auto& t : B.closed_form->terms) r = std::max(r, std::abs(t.pole - center));
    return r;
  }
  return std::abs(center) + B.valid_radius;
}

bool annulus_clear(const Symbol& phi, cx center, double R) {
  QuadratureOptions o;
  o.tol = 1e-8;
  try {
    const double inner = R - kAnnulusHalfWidth;
    const std::size_t outer_count = count_zeros(phi, Circle{center, R + kAnnulusHalfWidth, 64}, o);
    const std::size_t inner_count = inner > 0.0 ? count_zeros(phi, Circle{center, inner, 64}, o) : 0;
    return outer_count == inner_count;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroOnContour || e.kind() == ErrorKind::NonConvergence) return false;
    throw;
  }
}

}  // namespace

double forward_residual(const Symbol& phi, const ExpFunction& f, const ExpFunction& g, double a, double b,
                        std::size_t points) {
  const ExpFunction image = apply_symbol(phi, f);
  double worst = 0.0;
  for (double x : uniform_grid(a, b, points)) {
    worst = std::max(worst, std::abs(evaluate(image, x) - evaluate(g, x)));
  }
  return worst;
}

SolveReport solve_particular_contour(const Symbol& phi, const ExpFunction& g, const SolveOptions& opts) {
  const BorelRep B = borel_of(g);
  const cx center = opts.center ? *opts.center : B.singular_hull().center;
  const double tau = singular_radius(B, center);

  std::optional<double> chosen;
  if (opts.R_hint) {
    if (!(*opts.R_hint > tau)) {
      throw Error(ErrorKind::NoAdmissibleRadius, "hinted radius does not enclose the singularities of B(g)");
    }
    if (!annulus_clear(phi, center, *opts.R_hint)) {
      throw Error(ErrorKind::ZeroOnContour, "phi has a zero within 0.1 of the hinted radius");
    }
    chosen = *opts.R_hint;
  } else {
    for (double R = tau + 1.0; R <= tau + 50.0 + 1e-12; R += 0.5) {
      if (annulus_clear(phi, center, R)) {
        chosen = R;
        break;
      }
    }
  }
  if (!chosen) throw Error(ErrorKind::NoAdmissibleRadius, "no zero-free annulus up to tau + 50");

  const Circle circle{center, *chosen, 64};
  const std::size_t n = opts.taylor_length;
  // b_k = (1/k!)(1/2πi)∮ ζ^k B(ζ)/φ(ζ) dζ
  const auto integrand = [&](cx zeta, std::span<cx> out) {
    const cx w = B(zeta) / eval_symbol(phi, zeta);
    cx p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = p * w;
      p *= zeta / double(k + 1);
    }
  };
  QuadratureOptions qo;
  qo.tol = opts.tol;
  auto res = contour_integrate(integrand, n, circle, qo);

  SolveReport rep;
  rep.particular = TaylorRep{std::move(res.values), std::abs(center) + *chosen};
  rep.contour_used = circle;
  rep.residual = forward_residual(phi, rep.particular, g, opts.verify_a, opts.verify_b, opts.verify_points);
  if (phi.truncated()) rep.warnings.push_back("symbol given as a truncated coefficient list");
  return rep;
}

ExpPoly solve_particular_atomic(const Symbol& phi, const ExpPoly& g) {
  std::vector<ExpAtom> out;
  for (const auto& atom : g.atoms()) {
    const std::size_t m = atom.poly.size();
    // Taylor coefficients of φ about ζ, then of 1/φ.
    std::vector<cx> c(m);
    double fact = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j > 0) fact *= double(j);
      c[j] = phi.derivative(j, atom.zeta) / fact;
    }
    if (std::abs(c[0]) <= kAtomFloor) {
      throw Error(ErrorKind::AtomOnZero, "atom at (" + std::to_string(atom.zeta.real()) + ", " +
                                             std::to_string(atom.zeta.imag()) + ") is a zero of phi");
    }
    std::vector<cx> one(m, 0.0);
    one[0] = 1.0;
    const auto inv = series::div(one, c);
    std::vector<cx> q(m, 0.0);
    std::vector<cx> dp = atom.poly;
    for (std::size_t j = 0; j < m; ++j) {
      if (j > 0) {
        std::vector<cx> next(dp.size() > 1 ? dp.size() - 1 : 0);
        for (std::size_t k = 1; k < dp.size(); ++k) next[k - 1] = double(k) * dp[k];
        dp = std::move(next);
      }
      for (std::size_t k = 0; k < dp.size(); ++k) q[k] += inv[j] * dp[k];
    }
    out.push_back({atom.zeta, std::move(q)});
  }
  return ExpPoly(std::move(out));
}

std::vector<ExpPoly> homogeneous_basis(const Symbol& phi, double tau) {
  const ZeroSet Z = find_zeros(phi, tau);
  std::vector<ExpPoly> basis;
  for (const auto& z : Z.zeros) {
    for (std::size_t j = 0; j < z.multiplicity; ++j) {
      std::vector<cx> poly(j + 1, 0.0);
      poly[j] = 1.0;
      basis.push_back(ExpPoly({ExpAtom{z.zeta, std::move(poly)}}));
    }
  }
  return basis;
}

SolveReport general_solution(const Symbol& phi, const ExpFunction& g, double tau, const SolveOptions& opts) {
  SolveReport rep;
  bool done = false;
  if (const auto* p = std::get_if<ExpPoly>(&g)) {
    try {
      rep.particular = solve_particular_atomic(phi, *p);
      rep.residual = forward_residual(phi, rep.particular, g, opts.verify_a, opts.verify_b, opts.verify_points);
      done = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AtomOnZero) throw;
    }
  }
  if (!done) rep = solve_particular_contour(phi, g, opts);
  else if (phi.truncated()) rep.warnings.push_back("symbol given as a truncated coefficient list");
  if (tau > 0.0) rep.homogeneous_basis = homogeneous_basis(phi, tau);
  for (std::size_t i = 0; i < rep.homogeneous_basis.size(); ++i) {
    const auto& b = rep.homogeneous_basis[i];
    const ExpPoly image = apply_symbol(phi, b);
    double scale = 0.0, worst = 0.0;
    for (double x : uniform_grid(opts.verify_a, opts.verify_b, opts.verify_points)) {
      scale = std::max(scale, std::abs(b(x)));
      worst = std::max(worst, std::abs(image(x)));
    }
    if (worst >= 1e-7 * std::max(1.0, scale)) {
      rep.warnings.push_back("basis element " + std::to_string(i) + " is not annihilated to 1e-7");
    }
  }
  return rep;
}

IvpResult ivp_solve(const Symbol& phi, const ExpFunction& g, const std::vector<cx>& conditions, double tau) {
  IvpResult out;
  out.basis = homogeneous_basis(phi, tau);
  const std::size_t N = conditions.size();
  if (out.basis.size() != N) {
    throw Error(ErrorKind::CountMismatch, std::to_string(N) + " conditions given but phi has " +
                                              std::to_string(out.basis.size()) + " zeros in the disk");
  }
  // Particular solution: zero data needs none.
  const auto* gp = std::get_if<ExpPoly>(&g);
  if (gp && gp->empty()) {
    out.particular = ExpPoly{};
  } else {
    SolveOptions so;
    out.particular = general_solution(phi, g, 0.0, so).particular;
  }
  if (N == 0) {
    out.solution = out.particular;
    return out;
  }
  Eigen::MatrixXcd A(N, N);
  Eigen::VectorXcd rhs(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t b = 0; b < N; ++b) A(Eigen::Index(j), Eigen::Index(b)) = out.basis[b].derivative(j, 0.0);
    rhs(Eigen::Index(j)) = conditions[j] - evaluate_derivative(out.particular, j, 0.0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::SingularSystem,
                "collocation matrix is singular (condition number " + std::to_string(out.condition) + ")");
  }
  if (out.condition > 1e12) {
    out.warnings.push_back("ill-conditioned collocation matrix, condition number " + std::to_string(out.condition));
  }
  const Eigen::VectorXcd alpha = lu.solve(rhs);
  out.coefficients.assign(alpha.data(), alpha.data() + N);
  ExpPoly hom;
  for (std::size_t b = 0; b < N; ++b) hom = hom + out.coefficients[b] * out.basis[b];
  out.solution = add(out.particular, hom);
  return out;
}

}  // namespace borelcalc
