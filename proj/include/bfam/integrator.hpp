#pragma once

#include <functional>
#include <vector>

#include "bfam/dynamics.hpp"

namespace bfam {

struct StepControl {
  double dt_init = 1e-2;
  double cfl = 0.3;
  double dt_min = 1e-9;
  double blowup_slope_threshold = -1e3;  // stop once inf_x u_x drops below
  double norm_guard = 1e8;               // treat larger sup norms as divergence
  double frame_interval = 0.0;           // 0 -> (t_end - t0)/200
};

enum class Verdict { Completed, BlewUp, StepUnderflow, NonFinite };

const char* verdict_name(Verdict v);

// one record per accepted step (plus the initial state)
struct SeriesRow {
  double t = 0.0;
  double hs_u = 0.0, hs_sigma = 0.0;
  double l2_u = 0.0, l2_sigma = 0.0;
  double linf_u = 0.0, linf_sigma = 0.0;
  double inf_ux = 0.0, sup_ux = 0.0;
  double m_chi = 0.0;  // ((1-dxx)u, (4-dxx)^{-1}u)
  // trapezoid accumulators / integrands carried alongside:
  double breakdown_integral = 0.0;   // int (|alpha|+|gamma|+|xi|) ||u_x||_inf
  double int_inf_xi_ux = 0.0;        // int inf_x { xi u_x }
  double gamma_sigma2_chix = 0.0;    // (gamma sigma^2, chi_x) at this time
};

struct SimResult {
  std::vector<State> frames;
  std::vector<SeriesRow> series;
  Verdict verdict = Verdict::Completed;
  double verdict_time = 0.0;
  double s_norm = 2.0;  // Sobolev index used for the recorded norms
};

using RhsFn = std::function<Tendency(const State&)>;

// classical RK4 with stage times t, t+dt/2, t+dt/2, t+dt
State step_rk4(const State& s, double dt, const RhsFn& f);
State step_rk4(const State& s, const ParamSet& ps, double dt,
               RhsForm form = RhsForm::Nonlocal);

// Fixed-step RK4 with a CFL cap: dt = min(dt_init, cfl dx / max(1, max|alpha u|,
// max|xi u|)), clipped to land on frame boundaries and t_end. Steps below
// dt_min, non-finite values, norms beyond norm_guard and slopes below
// blowup_slope_threshold end the run with the matching verdict.
SimResult simulate(const State& s0, const ParamSet& ps, double t_end,
                   const StepControl& ctrl, double s_norm = 2.0,
                   RhsForm form = RhsForm::Nonlocal);

// final value of the recorded (|alpha|+|gamma|+|xi|) ||u_x||_inf integral
double breakdown_integral(const SimResult& result);
// same integral truncated at time t (linear interpolation between rows)
double breakdown_integral_at(const SimResult& result, double t);

}  // namespace bfam
