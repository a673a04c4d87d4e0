#pragma once

#include <Eigen/Dense>

namespace bfam {

enum class ParamKind { Constant, DampedExp, Tabulated };

// One time-dependent coefficient on t >= 0.
// damped_exp(scale, lambda) means scale * e^{-2 lambda t}, lambda > 0.
// Tabulated coefficients interpolate linearly and extrapolate by the nearest
// sample value.
struct ParamFn {
  ParamKind kind = ParamKind::Constant;
  double value = 0.0;                // Constant
  double scale = 0.0, lambda = 0.0;  // DampedExp
  Eigen::ArrayXd times, samples;     // Tabulated

  static ParamFn constant(double v);
  static ParamFn damped_exp(double scale, double lambda);
  static ParamFn tabulated(Eigen::ArrayXd times, Eigen::ArrayXd samples);
};

double eval(const ParamFn& p, double t);

// integral of |p| over [0, t_end]; t_end may be +inf. A nonzero constant over
// an infinite horizon returns +inf (divergence signal). Closed forms for
// constant/damped kinds; adaptive Simpson (tol 1e-10) for tabulated ones.
// Over an infinite horizon a tabulated coefficient is extended by zero past
// its last knot so the mass stays finite; finite horizons use the same
// constant extrapolation as eval.
double l1_mass(const ParamFn& p, double t_end);

struct ParamSet {
  ParamFn alpha, beta, gamma, xi;
  // set by damped_preset
  bool has_preset = false;
  double b = 0.0, kappa = 0.0, lambda = 0.0;
};

// coefficients (e^{-2 lambda t}, b e^{-2 lambda t}, kappa e^{-2 lambda t},
// e^{-2 lambda t})
ParamSet damped_preset(double b, double kappa, double lambda);
ParamSet constant_params(double alpha, double beta, double gamma, double xi);

// sum of the four coefficient l1 masses over [0, t_end]
double total_l1_mass(const ParamSet& ps, double t_end);

struct SignVerdict {
  bool ok = true;
  double first_violation_t = 0.0;
  const char* which = "";  // "xi" or "alpha+gamma+xi"
};

// sampled check of xi >= 0 and alpha + gamma + xi >= 0 on [0, horizon]
SignVerdict sign_check(const ParamSet& ps, double horizon, int samples = 257);

}  // namespace bfam
