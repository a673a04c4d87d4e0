#pragma once

#include <Eigen/Dense>

#include "bfam/integrator.hpp"

namespace bfam {

// flow of dpsi/dt = xi(t) u(t, psi) for a batch of seeds, sampled at the
// frame times of the source run
struct CharTrace {
  std::vector<double> times;
  Eigen::ArrayXd seeds;
  Eigen::ArrayXXd positions;      // times x seeds, wrapped into [0, L)
  Eigen::ArrayXXd jacobians;      // psi_x = exp(int xi u_x(t', psi) dt')
  Eigen::ArrayXXd jacobians_fd;   // centered differences across seeds
  Eigen::ArrayXd int_inf_xi_ux;   // running integral of inf_x{xi u_x} at times
};

Eigen::ArrayXd equispaced_seeds(const Grid& g, int count);

// RK4 along frames (one step per frame interval, trig interpolation in space,
// linear in time). Requires >= 2 frames, >= 3 seeds, and frame spacing at
// most 10x the largest recorded step.
CharTrace trace(const SimResult& result, const ParamSet& ps,
                const Eigen::ArrayXd& seeds);

// max over times/seeds of |sigma(t, psi) psi_x - sigma0(seed)|
double sigma_invariant_error(const SimResult& result, const CharTrace& tr);

struct SigmaBoundsVerdict {
  bool ok = true;
  double worst_linf_margin = 0.0;  // max observed/bound over t
  double worst_l2_margin = 0.0;
  double first_violation_t = -1.0;
};

// transport bounds ||sigma||_inf <= ||sigma0||_inf e^{-I(t)} and
// ||sigma||_2 <= ||sigma0||_2 e^{-I(t)/2}, I = int inf_x{xi u_x}, checked on
// every series row with slack factor 1 + 1e-6
SigmaBoundsVerdict sigma_bounds_check(const SimResult& result,
                                      const CharTrace& tr);

}  // namespace bfam
