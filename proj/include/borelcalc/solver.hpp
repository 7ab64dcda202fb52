#pragma once

#include <optional>
#include <string>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/numerics.hpp"
#include "borelcalc/symbols.hpp"

namespace borelcalc {

struct SolveOptions {
  /// Use this radius instead of searching (still checked for admissibility).
  std::optional<double> R_hint;
  /// Circle center; defaults to the center of the smallest box around the
  /// singularities of B(g) (the origin for Taylor data).
  std::optional<cx> center;
  std::size_t taylor_length = TaylorRep::kDefaultLength;
  double tol = 1e-12;
  /// Verification grid for the residual.
  double verify_a = -3.0;
  double verify_b = 3.0;
  std::size_t verify_points = 61;
};

struct SolveReport {
  ExpFunction particular;
  std::vector<ExpPoly> homogeneous_basis;
  Contour contour_used = Circle{};
  double residual = 0.0;  // sup over the verification grid of |φ(d/dx)f − g|
  std::vector<std::string> warnings;
};

/// f(x) = (1/2πi)∮ e^{xζ}B(g)(ζ)/φ(ζ)dζ on a circle around the
/// singularities of B(g). Radii are tried at τ+1, τ+1.5, ... up to τ+50 (τ
/// measured from the center) and accepted when φ has no zeros in
/// [R−0.1, R+0.1]. The solution is returned as Taylor coefficients about 0
/// obtained from the same contour.
SolveReport solve_particular_contour(const Symbol& phi, const ExpFunction& g, const SolveOptions& opts = {});

/// Exact particular solution: p e^{ζx} ↦ e^{ζx} Σ_j c_j p^{(j)} with c_j the
/// Taylor coefficients of 1/φ about ζ. Throws AtomOnZero when |φ(ζ)| ≤ 1e−8.
ExpPoly solve_particular_atomic(const Symbol& phi, const ExpPoly& g);

/// {x^j e^{ζ_k x} : 0 ≤ j < m_k} over the zeros in |ζ| ≤ tau.
std::vector<ExpPoly> homogeneous_basis(const Symbol& phi, double tau);

/// Particular solution (exact when g is an exponential polynomial with no
/// atom on a zero, contour otherwise) plus the homogeneous basis for
/// |ζ| ≤ tau (none when tau ≤ 0). Basis elements that fail the annihilation check add warnings.
SolveReport general_solution(const Symbol& phi, const ExpFunction& g, double tau, const SolveOptions& opts = {});

struct IvpResult {
  ExpFunction solution;
  ExpFunction particular;
  std::vector<ExpPoly> basis;
  std::vector<cx> coefficients;  // α_b
  double condition = 0.0;
  std::vector<std::string> warnings;
};

/// f = particular + Σ α_b basis_b with f^{(j)}(0) = conditions[j]. Throws
/// CountMismatch when the number of conditions differs from the number of
/// zeros (with multiplicity) in |ζ| ≤ tau, SingularSystem when the
/// collocation matrix is rank deficient.
IvpResult ivp_solve(const Symbol& phi, const ExpFunction& g, const std::vector<cx>& conditions, double tau);

/// sup over the grid of |φ(d/dx)f − g|.
double forward_residual(const Symbol& phi, const ExpFunction& f, const ExpFunction& g, double a = -3.0,
                        double b = 3.0, std::size_t points = 61);

}  // namespace borelcalc
