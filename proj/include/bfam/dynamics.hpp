#pragma once

#include <vector>

#include "bfam/grid.hpp"
#include "bfam/params.hpp"
#include "bfam/spectral.hpp"

namespace bfam {

struct State {
  double t = 0.0;
  Field u, sigma;
};

struct Tendency {
  Field du, dsigma;
};

enum class RhsForm { Nonlocal, Momentum };

// m = (1 - dxx) u
Field momentum_density(const Field& u);

// du     = -alpha u u_x - dx p*( beta/2 u^2 + gamma/2 sigma^2
//                                + (3 alpha - beta)/2 u_x^2 )
// dsigma = -xi (u sigma_x + sigma u_x)
Tendency rhs_nonlocal(const State& s, const ParamSet& ps);

// dm     = -alpha u m_x - beta u_x m - gamma sigma sigma_x, du = (1-dxx)^{-1} dm
// dsigma = -xi (u sigma)_x
Tendency rhs_momentum(const State& s, const ParamSet& ps);

Tendency rhs(const State& s, const ParamSet& ps, RhsForm form);

// ---- damping transforms ----------------------------------------------------

// rescaled clock (1 - e^{-lambda t})/lambda
double rescaled_time(double lambda, double t);

// linear interpolation in t between stored states (frames must be
// time-ordered and bracket the query)
State sample_frames(const std::vector<State>& frames, double t);

// damped state at time t predicted from an undamped constant-coefficient run:
// fields of the frame at the rescaled clock, scaled by e^{-lambda t}
State time_rescale_transform(const std::vector<State>& frames, double lambda,
                             double t);

enum class WeightDirection { Forward, Inverse };

// multiply both fields by e^{+lambda t} (Forward) or e^{-lambda t} (Inverse)
State exp_weight_transform(const State& s, double lambda, WeightDirection dir);

// ---- initial data presets --------------------------------------------------

// amplitude * exp((cos(2 pi (x - center)/L) - 1)/width^2), a periodic bump
Field gaussian_bump(const Grid& g, double amplitude, double width,
                    double center);

// amplitude * sin(2 pi k x / L)
Field sine_mode(const Grid& g, double amplitude, int wavenumber);

// smooth peaked profile: spectral weights e^{-(k/sharpness)^2}/(1 + w_k^2),
// recentred and scaled so the maximum equals amplitude
Field smooth_peak(const Grid& g, double amplitude, double sharpness,
                  double center);

}  // namespace bfam
