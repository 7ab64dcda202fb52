#pragma once

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "borelcalc/kernels.hpp"

namespace borelcalc {

using cx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr cx kI{0.0, 1.0};

/// Positively oriented circle; `nodes` is the starting trapezoid count.
struct Circle {
  cx center{0.0, 0.0};
  double radius = 1.0;
  std::size_t nodes = 32;
};

/// Positively oriented axis-aligned rectangle [xi_minus, xi_plus] x
/// [eta_minus, eta_plus]. The symmetric box with corners xi± ± iY is
/// `Rectangle::box`.
struct Rectangle {
  double xi_minus = -1.0;
  double xi_plus = 1.0;
  double eta_minus = -1.0;
  double eta_plus = 1.0;
  std::size_t nodes_per_side = 32;

  static Rectangle box(double xi_minus, double xi_plus, double Y, std::size_t nodes_per_side = 32) {
    return {xi_minus, xi_plus, -Y, Y, nodes_per_side};
  }
};

using Contour = std::variant<Circle, Rectangle>;

/// Throws BadRange when the invariants (radius > 0, non-degenerate sides,
/// node count >= 8 and even) do not hold.
void validate(const Contour& contour);

struct QuadratureResult {
  cx value{0.0, 0.0};
  double est_error = 0.0;
  std::size_t nodes_used = 0;
};

struct QuadratureOptions {
  double tol = 1e-10;
  std::size_t max_nodes = std::size_t{1} << 16;
  kernels::Exec exec = kernels::default_exec();
};

using Integrand = std::function<cx(cx)>;

/// (1/2πi)∮ integrand dζ with node doubling until two successive levels
/// agree to tol·max(1, |value|).
QuadratureResult contour_integrate(const Integrand& integrand, const Contour& contour,
                                   const QuadratureOptions& opts = {});

/// Vector-valued integrand: fills `width` outputs per node. Convergence is
/// judged on the worst component.
struct VectorQuadratureResult {
  std::vector<cx> values;
  double est_error = 0.0;
  std::size_t nodes_used = 0;
};
using VectorIntegrand = kernels::VectorPointFn;
VectorQuadratureResult contour_integrate(const VectorIntegrand& integrand, std::size_t width,
                                         const Contour& contour, const QuadratureOptions& opts = {});

/// Per-side contributions of a rectangle, each already divided by 2πi, in
/// traversal order: bottom (left→right), right (up), top (right→left),
/// left (down).
struct RectangleSides {
  std::array<std::vector<cx>, 4> sides;
  double est_error = 0.0;
  std::size_t nodes_used = 0;

  std::vector<cx> total() const;
};
RectangleSides integrate_rectangle_sides(const VectorIntegrand& integrand, std::size_t width,
                                         const Rectangle& rect, const QuadratureOptions& opts = {});

/// n equispaced points from a to b inclusive.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// Gauss–Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t n);

/// ∫_a^b f(x) dx with composite Gauss–Legendre (16 points per panel).
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        std::size_t panels);
cx integrate_panels(const std::function<cx(double)>& f, double a, double b, std::size_t panels);

}  // namespace borelcalc
