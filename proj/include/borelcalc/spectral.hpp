#pragma once

#include <complex>
#include <vector>

namespace borelcalc::spectral {

using cx = std::complex<double>;

/// Unnormalised DFT, X_k = Σ_j x_j e^{-2πi jk/n}.
std::vector<cx> forward(const std::vector<cx>& x);
/// Normalised inverse, x_j = (1/n) Σ_k X_k e^{2πi jk/n}.
std::vector<cx> inverse(const std::vector<cx>& X);

/// Signed angular frequency of bin k for a grid with spacing dx:
/// 2πk/(n dx) for k < n/2, wrapped to negative values above.
double angular_frequency(std::size_t k, std::size_t n, double dx);

}  // namespace borelcalc::spectral
