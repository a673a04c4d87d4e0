#include "bfam/characteristics.hpp"

#include <cmath>
#include <stdexcept>

namespace bfam {

namespace {

double wrap(double x, double L) {
  double y = std::fmod(x, L);
  return y < 0.0 ? y + L : y;
}

// linear interpolation of the recorded running integral at time t
double series_integral_at(const std::vector<SeriesRow>& s, double t) {
  if (t <= s.front().t) return s.front().int_inf_xi_ux;
  for (size_t i = 1; i < s.size(); ++i) {
    if (t <= s[i].t) {
      const double span = s[i].t - s[i - 1].t;
      const double w = span > 0.0 ? (t - s[i - 1].t) / span : 1.0;
      return s[i - 1].int_inf_xi_ux +
             w * (s[i].int_inf_xi_ux - s[i - 1].int_inf_xi_ux);
    }
  }
  return s.back().int_inf_xi_ux;
}

}  // namespace

Eigen::ArrayXd equispaced_seeds(const Grid& g, int count) {
  if (count < 3) throw std::invalid_argument("equispaced_seeds: count >= 3");
  return Eigen::ArrayXd::LinSpaced(count, 0.0, g.length * (count - 1) / count);
}

CharTrace trace(const SimResult& result, const ParamSet& ps,
                const Eigen::ArrayXd& seeds) {
  const auto& frames = result.frames;
  if (frames.size() < 2)
    throw std::invalid_argument("trace: need at least two frames");
  if (seeds.size() < 3)
    throw std::invalid_argument("trace: need at least three seeds");
  const double period = frames[0].u.grid.length;
  for (int i = 0; i < seeds.size(); ++i) {
    if (seeds[i] < 0.0 || seeds[i] >= period ||
        (i > 0 && !(seeds[i] > seeds[i - 1])))
      throw std::invalid_argument(
          "trace: seeds must increase strictly within one period");
  }

  double max_step = 0.0, max_gap = 0.0;
  for (size_t i = 1; i < result.series.size(); ++i)
    max_step = std::max(max_step, result.series[i].t - result.series[i - 1].t);
  for (size_t i = 1; i < frames.size(); ++i)
    max_gap = std::max(max_gap, frames[i].t - frames[i - 1].t);
  if (max_gap > 10.0 * max_step * (1.0 + 1e-6))
    throw std::invalid_argument("trace: frames too sparse for the step size");

  const Grid& g = frames[0].u.grid;
  const int nf = int(frames.size());
  const int ns = int(seeds.size());

  // cached interpolants of u and u_x per frame
  std::vector<Spectrum> cu(nf), cux(nf);
  for (int i = 0; i < nf; ++i) {
    cu[i] = to_spectral(frames[i].u);
    Spectrum d = cu[i];
    for (int j = 0; j < g.n; ++j) {
      const int k = spectral_index(j, g.n);
      d[j] *= std::complex<double>(0.0, g.wavenumber(k));
    }
    d[g.n / 2] = 0.0;
    cux[i] = std::move(d);
  }

  auto u_at = [&](int lo, double w, double x) {
    return (1.0 - w) * eval_interpolant(cu[lo], g, x) +
           w * eval_interpolant(cu[lo + 1], g, x);
  };
  auto ux_at = [&](int lo, double w, double x) {
    return (1.0 - w) * eval_interpolant(cux[lo], g, x) +
           w * eval_interpolant(cux[lo + 1], g, x);
  };

  CharTrace tr;
  tr.times.resize(nf);
  tr.seeds = seeds;
  tr.positions.resize(nf, ns);
  tr.jacobians.resize(nf, ns);
  tr.jacobians_fd.resize(nf, ns);
  tr.int_inf_xi_ux.resize(nf);

  Eigen::ArrayXd psi = seeds;                      // unwrapped positions
  Eigen::ArrayXd logj = Eigen::ArrayXd::Zero(ns);  // log psi_x

  Eigen::ArrayXXd unwrapped(nf, ns);
  for (int i = 0; i < nf; ++i) {
    tr.times[i] = frames[i].t;
    tr.int_inf_xi_ux[i] = series_integral_at(result.series, frames[i].t);
    if (i > 0) {
      const double t0 = frames[i - 1].t, t1 = frames[i].t;
      const double h = t1 - t0;
      const int lo = i - 1;
      auto f = [&](double t, const Eigen::ArrayXd& p, Eigen::ArrayXd& dp,
                   Eigen::ArrayXd& dl) {
        const double w = (t - t0) / h;
        const double xi = eval(ps.xi, std::max(0.0, t));
        for (int sdx = 0; sdx < ns; ++sdx) {
          dp[sdx] = xi * u_at(lo, w, p[sdx]);
          dl[sdx] = xi * ux_at(lo, w, p[sdx]);
        }
      };
      Eigen::ArrayXd k1p(ns), k1l(ns), k2p(ns), k2l(ns), k3p(ns), k3l(ns),
          k4p(ns), k4l(ns);
      f(t0, psi, k1p, k1l);
      f(t0 + 0.5 * h, psi + 0.5 * h * k1p, k2p, k2l);
      f(t0 + 0.5 * h, psi + 0.5 * h * k2p, k3p, k3l);
      f(t1, psi + h * k3p, k4p, k4l);
      psi += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      logj += (h / 6.0) * (k1l + 2.0 * k2l + 2.0 * k3l + k4l);
    }
    unwrapped.row(i) = psi.transpose();
    for (int sdx = 0; sdx < ns; ++sdx)
      tr.positions(i, sdx) = wrap(psi[sdx], g.length);
    tr.jacobians.row(i) = logj.exp().transpose();
  }

  // centered differences across neighbouring seeds, periodic in the seed index
  for (int i = 0; i < nf; ++i) {
    for (int sdx = 0; sdx < ns; ++sdx) {
      const int prev = (sdx + ns - 1) % ns, next = (sdx + 1) % ns;
      double dpos = unwrapped(i, next) - unwrapped(i, prev);
      double dseed = seeds[next] - seeds[prev];
      if (sdx == 0) {
        dpos += g.length;
        dseed += g.length;
      } else if (sdx == ns - 1) {
        dpos += g.length;
        dseed += g.length;
      }
      tr.jacobians_fd(i, sdx) = dpos / dseed;
    }
  }
  return tr;
}

double sigma_invariant_error(const SimResult& result, const CharTrace& tr) {
  const auto& frames = result.frames;
  if (tr.positions.rows() != long(frames.size()))
    throw std::invalid_argument("sigma_invariant_error: trace/run mismatch");
  const Grid& g = frames[0].u.grid;
  const Spectrum c0 = to_spectral(frames[0].sigma);
  double worst = 0.0;
  for (size_t i = 0; i < frames.size(); ++i) {
    const Spectrum ci = to_spectral(frames[i].sigma);
    for (int sdx = 0; sdx < tr.seeds.size(); ++sdx) {
      const double sig = eval_interpolant(ci, g, tr.positions(int(i), sdx));
      const double sig0 = eval_interpolant(c0, g, tr.seeds[sdx]);
      worst = std::max(worst,
                       std::abs(sig * tr.jacobians(int(i), sdx) - sig0));
    }
  }
  return worst;
}

SigmaBoundsVerdict sigma_bounds_check(const SimResult& result,
                                      const CharTrace& tr) {
  if (tr.times.empty() || result.series.empty())
    throw std::invalid_argument("sigma_bounds_check: empty inputs");
  constexpr double slack = 1.0 + 1e-6;
  const double linf0 = result.series.front().linf_sigma;
  const double l20 = result.series.front().l2_sigma;
  SigmaBoundsVerdict v;
  for (const SeriesRow& row : result.series) {
    const double decay = std::exp(-row.int_inf_xi_ux);
    const double linf_bound = linf0 * decay;
    const double l2_bound = l20 * std::sqrt(decay);
    const double ml = linf_bound > 0.0 ? row.linf_sigma / linf_bound
                                       : (row.linf_sigma > 0.0 ? 2.0 : 0.0);
    const double m2 = l2_bound > 0.0 ? row.l2_sigma / l2_bound
                                     : (row.l2_sigma > 0.0 ? 2.0 : 0.0);
    v.worst_linf_margin = std::max(v.worst_linf_margin, ml);
    v.worst_l2_margin = std::max(v.worst_l2_margin, m2);
    if ((ml > slack || m2 > slack) && v.first_violation_t < 0.0) {
      v.ok = false;
      v.first_violation_t = row.t;
    }
  }
  return v;
}

}  // namespace bfam
