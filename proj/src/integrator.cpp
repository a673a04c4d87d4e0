#include "bfam/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "bfam/besov.hpp"
#include "bfam/theory.hpp"

namespace bfam {

namespace {

State advanced(const State& base, const Tendency& k, double h) {
  State s;
  s.t = base.t + h;
  s.u = Field(base.u.grid, base.u.values + h * k.du.values);
  s.sigma = Field(base.sigma.grid, base.sigma.values + h * k.dsigma.values);
  return s;
}

bool all_finite(const Field& f) { return f.values.isFinite().all(); }

SeriesRow measure(const State& s, const ParamSet& ps, double s_norm) {
  SeriesRow row;
  row.t = s.t;
  row.hs_u = sobolev_norm(s.u, s_norm);
  row.hs_sigma = sobolev_norm(s.sigma, s_norm - 1.0);
  row.l2_u = l2_norm(s.u);
  row.l2_sigma = l2_norm(s.sigma);
  row.linf_u = linf_norm(s.u);
  row.linf_sigma = linf_norm(s.sigma);
  const Field ux = derivative(s.u);
  row.inf_ux = ux.values.minCoeff();
  row.sup_ux = ux.values.maxCoeff();
  row.m_chi = momentum_pairing(s.u);
  const double g = eval(ps.gamma, s.t);
  const Field chix = derivative(helmholtz_inverse(s.u, 4.0));
  row.gamma_sigma2_chix =
      g * (s.sigma.values.square() * chix.values).sum() * s.u.grid.dx();
  return row;
}

// integrands entering the running trapezoids
double breakdown_rate(const SeriesRow& row, const ParamSet& ps) {
  const double coeff = std::abs(eval(ps.alpha, row.t)) +
                       std::abs(eval(ps.gamma, row.t)) +
                       std::abs(eval(ps.xi, row.t));
  return coeff * std::max(std::abs(row.inf_ux), std::abs(row.sup_ux));
}

double inf_xi_ux(const SeriesRow& row, const ParamSet& ps) {
  const double xi = eval(ps.xi, row.t);
  return std::min(xi * row.inf_ux, xi * row.sup_ux);
}

void accumulate(SeriesRow& row, const SeriesRow& prev, const ParamSet& ps) {
  const double h = row.t - prev.t;
  row.breakdown_integral =
      prev.breakdown_integral +
      0.5 * h * (breakdown_rate(prev, ps) + breakdown_rate(row, ps));
  row.int_inf_xi_ux = prev.int_inf_xi_ux +
                      0.5 * h * (inf_xi_ux(prev, ps) + inf_xi_ux(row, ps));
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Completed: return "completed";
    case Verdict::BlewUp: return "blew_up";
    case Verdict::StepUnderflow: return "step_underflow";
    case Verdict::NonFinite: return "non_finite";
  }
  return "unknown";
}

State step_rk4(const State& s, double dt, const RhsFn& f) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be > 0");
  const Tendency k1 = f(s);
  const Tendency k2 = f(advanced(s, k1, 0.5 * dt));
  const Tendency k3 = f(advanced(s, k2, 0.5 * dt));
  const Tendency k4 = f(advanced(s, k3, dt));
  State out;
  out.t = s.t + dt;
  out.u = Field(s.u.grid,
                s.u.values + (dt / 6.0) * (k1.du.values + 2.0 * k2.du.values +
                                           2.0 * k3.du.values + k4.du.values));
  out.sigma =
      Field(s.sigma.grid,
            s.sigma.values +
                (dt / 6.0) * (k1.dsigma.values + 2.0 * k2.dsigma.values +
                              2.0 * k3.dsigma.values + k4.dsigma.values));
  return out;
}

State step_rk4(const State& s, const ParamSet& ps, double dt, RhsForm form) {
  return step_rk4(s, dt, [&](const State& q) { return rhs(q, ps, form); });
}

SimResult simulate(const State& s0, const ParamSet& ps, double t_end,
                   const StepControl& ctrl, double s_norm, RhsForm form) {
  require_same_grid(s0.u, s0.sigma);
  if (!(t_end > s0.t)) throw std::invalid_argument("simulate: t_end <= t0");
  if (!(ctrl.dt_init > 0.0) || !(ctrl.dt_min > 0.0) ||
      !(ctrl.cfl > 0.0 && ctrl.cfl <= 1.0))
    throw std::invalid_argument("simulate: bad step control");

  const double span = t_end - s0.t;
  const double frame_dt =
      ctrl.frame_interval > 0.0 ? ctrl.frame_interval : span / 200.0;
  const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));

  SimResult res;
  res.s_norm = s_norm;
  res.frames.push_back(s0);
  res.series.push_back(measure(s0, ps, s_norm));

  State cur = s0;
  long frame_count = 1;
  double next_frame = std::min(s0.t + frame_dt, t_end);
  const double dx = s0.u.grid.dx();

  while (true) {
    const double a = std::abs(eval(ps.alpha, cur.t));
    const double x = std::abs(eval(ps.xi, cur.t));
    const double umax = linf_norm(cur.u);
    const double speed = std::max(1.0, std::max(a, x) * umax);
    double dt = std::min(ctrl.dt_init, ctrl.cfl * dx / speed);
    dt = std::min(dt, t_end - cur.t);
    if (cur.t + dt >= next_frame - tiny) dt = next_frame - cur.t;
    if (dt < ctrl.dt_min) {
      res.verdict = Verdict::StepUnderflow;
      res.verdict_time = cur.t;
      break;
    }

    State nxt = step_rk4(cur, ps, dt, form);
    if (!all_finite(nxt.u) || !all_finite(nxt.sigma) ||
        linf_norm(nxt.u) > ctrl.norm_guard ||
        linf_norm(nxt.sigma) > ctrl.norm_guard) {
      res.verdict = Verdict::NonFinite;
      res.verdict_time = nxt.t;
      break;
    }

    SeriesRow row = measure(nxt, ps, s_norm);
    accumulate(row, res.series.back(), ps);
    res.series.push_back(row);

    bool framed = false;
    if (nxt.t >= next_frame - tiny) {
      res.frames.push_back(nxt);
      framed = true;
      ++frame_count;
      next_frame = std::min(s0.t + frame_count * frame_dt, t_end);
      if (next_frame <= nxt.t + tiny) next_frame = t_end;
    }

    if (row.inf_ux < ctrl.blowup_slope_threshold) {
      res.verdict = Verdict::BlewUp;
      res.verdict_time = nxt.t;
      if (!framed) res.frames.push_back(nxt);
      break;
    }
    if (nxt.t >= t_end - tiny) {
      res.verdict = Verdict::Completed;
      res.verdict_time = nxt.t;
      if (!framed) res.frames.push_back(nxt);
      break;
    }
    cur = nxt;
  }
  return res;
}

double breakdown_integral(const SimResult& result) {
  return result.series.empty() ? 0.0
                               : result.series.back().breakdown_integral;
}

double breakdown_integral_at(const SimResult& result, double t) {
  const auto& s = result.series;
  if (s.empty()) return 0.0;
  if (t <= s.front().t) return s.front().breakdown_integral;
  for (size_t i = 1; i < s.size(); ++i) {
    if (t <= s[i].t) {
      const double span = s[i].t - s[i - 1].t;
      const double w = span > 0.0 ? (t - s[i - 1].t) / span : 1.0;
      return s[i - 1].breakdown_integral +
             w * (s[i].breakdown_integral - s[i - 1].breakdown_integral);
    }
  }
  return s.back().breakdown_integral;
}

}  // namespace bfam
