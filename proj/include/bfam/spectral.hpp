#pragma once

#include <Eigen/Dense>

#include "bfam/grid.hpp"

namespace bfam {

// Normalized Fourier coefficients c_k with f(x_j) = sum_k c_k e^{i w_k x_j},
// stored in FFT slot order: slot j holds k = j for j <= n/2, else k = j - n.
using Spectrum = Eigen::VectorXcd;

// spectral index held by storage slot j
int spectral_index(int j, int n);

Spectrum to_spectral(const Field& f);
Field from_spectral(const Grid& g, const Spectrum& coeffs);

// d/dx via the ik multiplier; the unpaired Nyquist mode is zeroed.
Field derivative(const Field& f);

// (shift - dxx)^{-1} f; shift must be 1 or 4.
Field helmholtz_inverse(const Field& f, double shift);

// convolution with the periodic kernel p solving (1 - dxx) p = delta,
// i.e. p * f = (1 - dxx)^{-1} f.
Field green_convolve(const Field& f);

// pointwise product with both inputs truncated to |k| <= floor(n/3) first,
// which keeps quadratic interactions of resolved modes alias-free.
Field dealiased_product(const Field& f, const Field& g);

double l2_norm(const Field& f);
double linf_norm(const Field& f);
// p in [1, inf]; p = inf gives the max norm
double lp_norm(const Field& f, double p);
double mean(const Field& f);

// value of the trigonometric interpolant at an arbitrary point
double eval_interpolant(const Spectrum& coeffs, const Grid& g, double x);

}  // namespace bfam
