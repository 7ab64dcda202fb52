#include "borelcalc/borel.hpp"

#include <algorithm>
#include <cmath>

#include "borelcalc/error.hpp"

namespace borelcalc {

cx RationalBorel::operator()(cx zeta) const {
  cx acc = 0.0;
  for (const auto& t : terms) {
    const cx inv = 1.0 / (zeta - t.pole);
    cx p = inv;
    for (const auto& r : t.residues) {
      acc += r * p;
      p *= inv;
    }
  }
  return acc;
}

Circle BorelRep::singular_hull() const {
  if (!closed_form || closed_form->terms.empty()) return Circle{0.0, closed_form ? 0.0 : valid_radius, 32};
  // Bounding-box midpoint: not the minimal circle, but within √2 of it.
  double lo_re = 1e300, hi_re = -1e300, lo_im = 1e300, hi_im = -1e300;
  for (const auto& t : closed_form->terms) {
    lo_re = std::min(lo_re, t.pole.real());
    hi_re = std::max(hi_re, t.pole.real());
    lo_im = std::min(lo_im, t.pole.imag());
    hi_im = std::max(hi_im, t.pole.imag());
  }
  const cx c(0.5 * (lo_re + hi_re), 0.5 * (lo_im + hi_im));
  double r = 0.0;
  for (const auto& t : closed_form->terms) r = std::max(r, std::abs(t.pole - c));
  return Circle{c, r, 32};
}

BorelValue borel_series(const TaylorRep& f, cx zeta, std::size_t K, double tol) {
  const double az = std::abs(zeta);
  if (az <= f.tau) {
    throw Error(ErrorKind::OutsideDomain, "|zeta| = " + std::to_string(az) + " is not above the type bound " +
                                              std::to_string(f.tau));
  }
  K = std::min(K, f.b.size());
  const cx inv = 1.0 / zeta;
  cx power = inv;  // ζ^{−(k+1)}
  double fact = 1.0;
  cx acc = 0.0;
  double recent = 0.0;  // largest k!|b_k|/τ^k among the last eight terms
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0) fact *= double(k);
    acc += fact * f.b[k] * power;
    power *= inv;
    if (k + 8 >= K && f.tau > 0.0) {
      recent = std::max(recent, fact * std::abs(f.b[k]) / std::pow(f.tau, double(k)));
    }
  }
  BorelValue out{acc, 0.0};
  if (f.tau > 0.0) {
    const double q = f.tau / az;
    out.est_error = recent * std::pow(f.tau, double(K)) / std::pow(az, double(K + 1)) / (1.0 - q);
  }
  if (!(out.est_error < tol * std::max(1.0, std::abs(acc)))) {
    throw Error(ErrorKind::NonConvergence, "Borel series tail estimate " + std::to_string(out.est_error) +
                                               " above tolerance");
  }
  return out;
}

BorelRep borel_exppoly(const ExpPoly& f) {
  RationalBorel rb;
  for (const auto& a : f.atoms()) {
    PoleTerm t{a.zeta, {}};
    double fact = 1.0;
    for (std::size_t m = 0; m < a.poly.size(); ++m) {
      if (m > 0) fact *= double(m);
      t.residues.push_back(fact * a.poly[m]);
    }
    rb.terms.push_back(std::move(t));
  }
  BorelRep rep;
  rep.valid_radius = f.type();
  rep.closed_form = rb;
  rep.eval = [rb](cx zeta) { return rb(zeta); };
  return rep;
}

BorelRep borel_taylor(const TaylorRep& f, std::size_t K) {
  BorelRep rep;
  rep.valid_radius = f.tau;
  rep.eval = [f, K](cx zeta) { return borel_series(f, zeta, K).value; };
  return rep;
}

cx borel_laplace(const std::function<cx(cx)>& f, double theta, cx zeta, double t_max) {
  const cx dir = std::polar(1.0, theta);
  const cx rate = zeta * dir;
  const auto& gl = gauss_legendre(16);
  cx acc = 0.0;
  for (double a = 0.0; a < t_max; a += 1.0) {
    cx panel = 0.0;
    double peak = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = a + gl.nodes[q];
      const cx v = f(t * dir) * std::exp(-rate * t);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorKind::NoDecay, "Laplace integrand overflowed at t = " + std::to_string(t));
      }
      panel += gl.weights[q] * v;
      peak = std::max(peak, std::abs(v));
    }
    acc += panel;
    if (peak < 1e-14 * std::max(1.0, std::abs(acc))) return dir * acc;
  }
  throw Error(ErrorKind::NoDecay, "Laplace integrand did not decay before t = " + std::to_string(t_max));
}

QuadratureResult inverse_borel(const BorelRep& B, const Circle& circle, cx x, const QuadratureOptions& opts) {
  return contour_integrate([&](cx zeta) { return std::exp(x * zeta) * B(zeta); }, circle, opts);
}

QuadratureResult inverse_borel(const BorelRep& B, double R, cx x, const QuadratureOptions& opts) {
  return inverse_borel(B, Circle{0.0, R, 32}, x, opts);
}

VectorQuadratureResult inverse_borel(const BorelRep& B, const Circle& circle, const std::vector<cx>& xs,
                                     const QuadratureOptions& opts) {
  const auto integrand = [&](cx zeta, std::span<cx> out) {
    const cx b = B(zeta);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::exp(xs[i] * zeta) * b;
  };
  return contour_integrate(integrand, xs.size(), circle, opts);
}

SpectralMeasure spectral_measure_from_borel(const BorelRep& B, double R) {
  if (!(R > B.valid_radius)) {
    throw Error(ErrorKind::OutsideDomain, "measure radius must exceed the Borel validity radius");
  }
  SpectralMeasure mu;
  mu.radius = R;
  mu.density = [B, R](double theta) {
    const cx zeta = std::polar(R, theta);
    return B(zeta) * zeta / (2.0 * kPi);
  };
  return mu;
}

}  // namespace borelcalc
