#include "bfam/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace bfam {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Field apply_even_multiplier(const Field& f, double (*mult)(double)) {
  const int n = f.grid.n;
  Spectrum c = to_spectral(f);
  for (int j = 0; j < n; ++j) {
    const double w = f.grid.wavenumber(spectral_index(j, n));
    c[j] *= mult(w);
  }
  return from_spectral(f.grid, c);
}

}  // namespace

Field momentum_density(const Field& u) {
  return apply_even_multiplier(u, [](double w) { return 1.0 + w * w; });
}

Tendency rhs_nonlocal(const State& s, const ParamSet& ps) {
  require_same_grid(s.u, s.sigma);
  const double a = eval(ps.alpha, s.t);
  const double b = eval(ps.beta, s.t);
  const double g = eval(ps.gamma, s.t);
  const double x = eval(ps.xi, s.t);

  const Field ux = derivative(s.u);
  const Field sx = derivative(s.sigma);

  Field p(s.u.grid);
  p.values = 0.5 * b * dealiased_product(s.u, s.u).values +
             0.5 * g * dealiased_product(s.sigma, s.sigma).values +
             0.5 * (3.0 * a - b) * dealiased_product(ux, ux).values;

  Tendency out;
  out.du = Field(s.u.grid);
  out.du.values = -a * dealiased_product(s.u, ux).values -
                  derivative(green_convolve(p)).values;
  out.dsigma = Field(s.u.grid);
  out.dsigma.values = -x * (dealiased_product(s.u, sx).values +
                            dealiased_product(s.sigma, ux).values);
  return out;
}

Tendency rhs_momentum(const State& s, const ParamSet& ps) {
  require_same_grid(s.u, s.sigma);
  const double a = eval(ps.alpha, s.t);
  const double b = eval(ps.beta, s.t);
  const double g = eval(ps.gamma, s.t);
  const double x = eval(ps.xi, s.t);

  const Field m = momentum_density(s.u);
  const Field mx = derivative(m);
  const Field ux = derivative(s.u);
  const Field sx = derivative(s.sigma);

  Field dm(s.u.grid);
  dm.values = -a * dealiased_product(s.u, mx).values -
              b * dealiased_product(ux, m).values -
              g * dealiased_product(s.sigma, sx).values;

  Tendency out;
  out.du = helmholtz_inverse(dm, 1.0);
  out.dsigma = -x * derivative(dealiased_product(s.u, s.sigma));
  return out;
}

Tendency rhs(const State& s, const ParamSet& ps, RhsForm form) {
  return form == RhsForm::Nonlocal ? rhs_nonlocal(s, ps) : rhs_momentum(s, ps);
}

double rescaled_time(double lambda, double t) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("rescaled_time: lambda must be > 0");
  return (1.0 - std::exp(-lambda * t)) / lambda;
}

State sample_frames(const std::vector<State>& frames, double t) {
  if (frames.size() < 2)
    throw std::invalid_argument("sample_frames: need >= 2 frames");
  const double t0 = frames.front().t, t1 = frames.back().t;
  const double slack = 1e-9 * std::max(1.0, t1 - t0);
  if (t < t0 - slack || t > t1 + slack)
    throw std::out_of_range("sample_frames: time outside stored range");
  const double tc = std::clamp(t, t0, t1);
  size_t hi = 1;
  while (hi + 1 < frames.size() && frames[hi].t < tc) ++hi;
  const State& A = frames[hi - 1];
  const State& B = frames[hi];
  const double span = B.t - A.t;
  const double w = span > 0.0 ? (tc - A.t) / span : 0.0;
  State out;
  out.t = t;
  out.u = Field(A.u.grid, (1.0 - w) * A.u.values + w * B.u.values);
  out.sigma = Field(A.sigma.grid, (1.0 - w) * A.sigma.values + w * B.sigma.values);
  return out;
}

State time_rescale_transform(const std::vector<State>& frames, double lambda,
                             double t) {
  State v = sample_frames(frames, rescaled_time(lambda, t));
  const double decay = std::exp(-lambda * t);
  State out;
  out.t = t;
  out.u = Field(v.u.grid, decay * v.u.values);
  out.sigma = Field(v.sigma.grid, decay * v.sigma.values);
  return out;
}

State exp_weight_transform(const State& s, double lambda, WeightDirection dir) {
  const double w = dir == WeightDirection::Forward ? std::exp(lambda * s.t)
                                                   : std::exp(-lambda * s.t);
  State out;
  out.t = s.t;
  out.u = Field(s.u.grid, w * s.u.values);
  out.sigma = Field(s.sigma.grid, w * s.sigma.values);
  return out;
}

Field gaussian_bump(const Grid& g, double amplitude, double width,
                    double center) {
  if (!(width > 0.0))
    throw std::invalid_argument("gaussian_bump: width must be > 0");
  Field f(g);
  const Eigen::ArrayXd phase = (kTwoPi / g.length) * (g.nodes() - center);
  f.values = amplitude * ((phase.cos() - 1.0) / (width * width)).exp();
  return f;
}

Field sine_mode(const Grid& g, double amplitude, int wavenumber) {
  if (std::abs(wavenumber) > g.n / 2)
    throw std::invalid_argument("sine_mode: wavenumber beyond the grid");
  Field f(g);
  f.values = (amplitude * ((kTwoPi * wavenumber / g.length) * g.nodes()).sin());
  return f;
}

Field smooth_peak(const Grid& g, double amplitude, double sharpness,
                  double center) {
  if (!(sharpness > 0.0))
    throw std::invalid_argument("smooth_peak: sharpness must be > 0");
  Spectrum c = Spectrum::Zero(g.n);
  for (int j = 0; j < g.n; ++j) {
    const int k = spectral_index(j, g.n);
    const double w = g.wavenumber(k);
    const double mag =
        std::exp(-(double(k) / sharpness) * (double(k) / sharpness)) /
        (1.0 + w * w);
    // recentre: multiply by e^{-i w center}
    c[j] = std::polar(mag, -w * center);
  }
  c[g.n / 2] = std::abs(c[g.n / 2]);  // keep the unpaired mode real
  Field f = from_spectral(g, c);
  const double peak = f.values.maxCoeff();
  if (!(peak > 0.0)) throw std::runtime_error("smooth_peak: degenerate profile");
  f.values *= amplitude / peak;
  return f;
}

}  // namespace bfam
