#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/numerics.hpp"
#include "borelcalc/symbols.hpp"

namespace borelcalc {

/// φ(d/dx) on an exponential polynomial, exact atom by atom:
/// p e^{ζx} ↦ e^{ζx} Σ_j φ^{(j)}(ζ)/j! · p^{(j)}.
ExpPoly apply_symbol(const Symbol& phi, const ExpPoly& f);

/// φ(d/dx) on a Taylor representation through the contour
/// (1/2πi)∮_{|ζ|=τ+1} e^{xζ}φ(ζ)B(f)(ζ)dζ. The result is returned as fresh
/// Taylor coefficients b'_k = (1/k!)(1/2πi)∮ ζ^k φ(ζ)B(f)(ζ)dζ with the
/// same type bound.
TaylorRep apply_symbol(const Symbol& phi, const TaylorRep& f, const QuadratureOptions& opts = {});

ExpFunction apply_symbol(const Symbol& phi, const ExpFunction& f);

struct PartialSumResult {
  SampledSignal f_K;
  double l1_norm = 0.0;
};

/// Σ_{k≤K} a_k (d/dx)^k f computed spectrally on a periodic grid after
/// discarding frequencies above `cutoff`. The L¹ norm is taken over the
/// samples lying in [a, b] (trapezoid rule). Throws CutoffTooLow when
/// Σ_{k≤K}|a_k| cutoff^k is not representable.
PartialSumResult partial_sum_apply(const Symbol& phi, std::size_t K, const SampledSignal& f, double cutoff,
                                   double a, double b);

/// Σ_k p_k(d/dx) f(x + ζ_k).
struct TranslationTerm {
  cx shift{0.0, 0.0};
  std::vector<cx> poly;
};
struct TranslationDifferentialForm {
  std::vector<TranslationTerm> terms;

  /// φ(z) = Σ p_k(z) e^{ζ_k z}.
  Symbol to_symbol() const;
  std::size_t max_order() const;
};

/// f(j, x) returns the j-th derivative at x.
using DerivativeEvaluator = std::function<cx(std::size_t, cx)>;
std::function<cx(cx)> translate_apply(const TranslationDifferentialForm& T, DerivativeEvaluator f);

/// Sampled version: shifts must be real multiples of dx (to 1e−9) and
/// derivatives use 8th-order central differences. The result covers the
/// samples for which every stencil stays inside the input.
SampledSignal translate_apply(const TranslationDifferentialForm& T, const SampledSignal& f);

/// φ(z) = ∫_a^b e^{−zx} u(x) dx with Taylor coefficients
/// a_k = ∫ (−x)^k u(x) dx / k!. The closed-form variant integrates with
/// composite Gauss–Legendre panels; the sampled variant integrates the
/// piecewise-linear interpolant exactly.
Symbol convolution_to_symbol(std::function<double(double)> u, double a, double b, std::size_t panels = 64);
Symbol convolution_to_symbol(const SampledSignal& u);

/// F^{−1}(ψ·F f) on a periodic grid; the Nyquist bin uses the mean of ψ at
/// ±ω_N so real input stays real.
SampledSignal fourier_multiplier_apply(const std::function<cx(double)>& psi, const SampledSignal& f);

}  // namespace borelcalc
