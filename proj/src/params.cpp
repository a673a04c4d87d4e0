#include "bfam/params.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bfam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lerp_table(const Eigen::ArrayXd& ts, const Eigen::ArrayXd& vs,
                  double t) {
  const int n = int(ts.size());
  if (t <= ts[0]) return vs[0];
  if (t >= ts[n - 1]) return vs[n - 1];
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (ts[mid] <= t ? lo : hi) = mid;
  }
  const double w = (t - ts[lo]) / (ts[lo + 1] - ts[lo]);
  return vs[lo] + w * (vs[lo + 1] - vs[lo]);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

ParamFn ParamFn::constant(double v) {
  ParamFn p;
  p.kind = ParamKind::Constant;
  p.value = v;
  return p;
}

ParamFn ParamFn::damped_exp(double scale, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("damped_exp: lambda must be > 0");
  ParamFn p;
  p.kind = ParamKind::DampedExp;
  p.scale = scale;
  p.lambda = lambda;
  return p;
}

ParamFn ParamFn::tabulated(Eigen::ArrayXd times, Eigen::ArrayXd samples) {
  if (times.size() < 2 || times.size() != samples.size())
    throw std::invalid_argument("tabulated: need >= 2 matching knots");
  for (int i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("tabulated: times must increase strictly");
  if (!(times[0] >= 0.0))
    throw std::invalid_argument("tabulated: times must start at t >= 0");
  ParamFn p;
  p.kind = ParamKind::Tabulated;
  p.times = std::move(times);
  p.samples = std::move(samples);
  return p;
}

double eval(const ParamFn& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("ParamFn: t must be >= 0");
  switch (p.kind) {
    case ParamKind::Constant:
      return p.value;
    case ParamKind::DampedExp:
      return p.scale * std::exp(-2.0 * p.lambda * t);
    case ParamKind::Tabulated:
      return lerp_table(p.times, p.samples, t);
  }
  return 0.0;
}

double l1_mass(const ParamFn& p, double t_end) {
  if (!(t_end >= 0.0)) throw std::invalid_argument("l1_mass: t_end must be >= 0");
  switch (p.kind) {
    case ParamKind::Constant:
      if (p.value == 0.0) return 0.0;
      return std::isinf(t_end) ? kInf : std::abs(p.value) * t_end;
    case ParamKind::DampedExp: {
      const double full = std::abs(p.scale) / (2.0 * p.lambda);
      if (std::isinf(t_end)) return full;
      return full * (1.0 - std::exp(-2.0 * p.lambda * t_end));
    }
    case ParamKind::Tabulated: {
      const double last = p.times[p.times.size() - 1];
      const double upto = std::isinf(t_end) ? last : std::min(t_end, last);
      auto f = [&](double t) { return std::abs(lerp_table(p.times, p.samples, t)); };
      double mass = 0.0;
      for (int i = 0; i + 1 < p.times.size(); ++i) {
        const double a = std::max(0.0, p.times[i]);
        const double b = std::min(upto, p.times[i + 1]);
        if (b > a) mass += integrate(f, a, b, 1e-10);
      }
      if (p.times[0] > 0.0)  // constant extrapolation on the left
        mass += std::abs(p.samples[0]) * std::min(upto, p.times[0]);
      if (!std::isinf(t_end) && t_end > last)
        mass += std::abs(p.samples[p.samples.size() - 1]) * (t_end - last);
      return mass;
    }
  }
  return 0.0;
}

ParamSet damped_preset(double b, double kappa, double lambda) {
  ParamSet ps;
  ps.alpha = ParamFn::damped_exp(1.0, lambda);
  ps.beta = ParamFn::damped_exp(b, lambda);
  ps.gamma = ParamFn::damped_exp(kappa, lambda);
  ps.xi = ParamFn::damped_exp(1.0, lambda);
  ps.has_preset = true;
  ps.b = b;
  ps.kappa = kappa;
  ps.lambda = lambda;
  return ps;
}

ParamSet constant_params(double alpha, double beta, double gamma, double xi) {
  ParamSet ps;
  ps.alpha = ParamFn::constant(alpha);
  ps.beta = ParamFn::constant(beta);
  ps.gamma = ParamFn::constant(gamma);
  ps.xi = ParamFn::constant(xi);
  return ps;
}

double total_l1_mass(const ParamSet& ps, double t_end) {
  return l1_mass(ps.alpha, t_end) + l1_mass(ps.beta, t_end) +
         l1_mass(ps.gamma, t_end) + l1_mass(ps.xi, t_end);
}

SignVerdict sign_check(const ParamSet& ps, double horizon, int samples) {
  if (!(horizon > 0.0) || samples < 2)
    throw std::invalid_argument("sign_check: need horizon > 0, samples >= 2");
  constexpr double slack = -1e-14;
  SignVerdict v;
  for (int i = 0; i < samples; ++i) {
    const double t = horizon * i / (samples - 1);
    const double xi = eval(ps.xi, t);
    if (xi < slack) {
      v.ok = false;
      v.first_violation_t = t;
      v.which = "xi";
      return v;
    }
    const double sum = eval(ps.alpha, t) + eval(ps.gamma, t) + xi;
    if (sum < slack) {
      v.ok = false;
      v.first_violation_t = t;
      v.which = "alpha+gamma+xi";
      return v;
    }
  }
  return v;
}

}  // namespace bfam
