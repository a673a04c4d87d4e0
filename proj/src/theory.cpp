#include "bfam/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;

void check_besov_spec(const BesovSpec& spec) {
  if (!(spec.p >= 1.0) && !std::isinf(spec.p))
    throw std::invalid_argument("besov p must be in [1, inf]");
  if (!(spec.r >= 1.0) && !std::isinf(spec.r))
    throw std::invalid_argument("besov r must be in [1, inf]");
  const double inv_p = std::isinf(spec.p) ? 0.0 : 1.0 / spec.p;
  if (!(spec.s > std::max(1.5, 1.0 + inv_p)))
    throw std::invalid_argument("besov s must exceed max(3/2, 1 + 1/p)");
}

void require_proportional(const ParamFn& beta, const ParamFn& alpha,
                          double factor, double horizon) {
  for (int i = 0; i <= 64; ++i) {
    const double t = horizon * i / 64.0;
    const double b = eval(beta, t), a = eval(alpha, t);
    if (std::abs(b - factor * a) >
        1e-12 * std::max({1.0, std::abs(b), std::abs(factor * a)}))
      throw std::invalid_argument(
          "velocity bounds require beta = 3 alpha on the run interval");
  }
}

double coeff_exp(double coeff, double exponent) {
  // coeff * e^{exponent} with an exact zero short-circuited so that
  // 0 * inf never appears
  return coeff == 0.0 ? 0.0 : coeff * std::exp(exponent);
}

}  // namespace

double growth_modulus(double x, const ParamSet& ps, const TheoryConfig& cfg) {
  if (!(x >= 0.0)) throw std::invalid_argument("growth_modulus: x >= 0");
  if (x == 0.0) return 0.0;
  const double i2 = l1_mass(ps.alpha, kInf) + l1_mass(ps.xi, kInf);
  const double i4 = total_l1_mass(ps, kInf);
  const double c2 = cfg.C * cfg.C;
  return std::exp(2.0 * c2 * x * i2) * (x + 4.0 * c2 * x * x * i4);
}

CheckResult global_existence_check(const Field& u0, const Field& sigma0,
                                   const BesovSpec& spec, const ParamSet& ps,
                                   const TheoryConfig& cfg) {
  check_besov_spec(spec);
  require_same_grid(u0, sigma0);
  const double h0 = besov_norm(u0, spec) +
                    besov_norm(sigma0, {spec.s - 1.0, spec.p, spec.r});
  CheckResult res;
  res.left = total_l1_mass(ps, kInf);
  if (h0 == 0.0) {
    // zero data: global regardless of the coefficients
    res.right = kInf;
    res.holds = true;
    res.margin = 0.0;
    res.degenerate = true;
    return res;
  }
  if (std::isinf(res.left)) {
    res.right = 0.0;
    res.holds = false;
    res.margin = kInf;
    return res;
  }
  const double h = growth_modulus(h0, ps, cfg);
  res.right = kLn2 / (6.0 * cfg.C * cfg.C * h);
  res.margin = res.left / res.right;
  res.holds = res.margin <= 1.0 + 1e-12;
  return res;
}

double critical_damping_rate(const Field& u0, const Field& sigma0,
                             const BesovSpec& spec, double b, double kappa,
                             const TheoryConfig& cfg) {
  check_besov_spec(spec);
  const double h0 = besov_norm(u0, spec) +
                    besov_norm(sigma0, {spec.s - 1.0, spec.p, spec.r});
  const double K = 2.0 + std::abs(b) + std::abs(kappa);
  return 8.0 * cfg.C * cfg.C * K * h0 / kLn2;
}

CheckResult damped_global_check(const Field& u0, const Field& sigma0,
                                const BesovSpec& spec, double b, double kappa,
                                double lambda, const TheoryConfig& cfg) {
  check_besov_spec(spec);
  if (!(lambda > 0.0))
    throw std::invalid_argument("damped_global_check: lambda must be > 0");
  const double h0 = besov_norm(u0, spec) +
                    besov_norm(sigma0, {spec.s - 1.0, spec.p, spec.r});
  const double K = 2.0 + std::abs(b) + std::abs(kappa);
  const double c2 = cfg.C * cfg.C;
  CheckResult res;
  res.right = lambda * kLn2 / (3.0 * c2 * K);
  if (h0 == 0.0) {
    res.left = 0.0;
    res.holds = true;
    res.margin = 0.0;
    res.degenerate = true;
    return res;
  }
  res.left = std::exp(2.0 * c2 * h0 / lambda) *
             (h0 + (2.0 * c2 * K / lambda) * h0 * h0);
  res.margin = res.left / res.right;
  res.holds = res.margin <= 1.0 + 1e-12;
  return res;
}

double breakdown_time_bound(const Field& u0, const Field& sigma0, double s,
                            const ParamSet& ps, const TheoryConfig& cfg) {
  require_same_grid(u0, sigma0);
  const double size = sobolev_norm(u0, s) + sobolev_norm(sigma0, s - 1.0);
  if (size == 0.0) return kInf;
  const double threshold = 1.0 / (cfg.C * size);
  auto mass = [&](double t) {
    return l1_mass(ps.alpha, t) + l1_mass(ps.xi, t) + l1_mass(ps.gamma, t);
  };
  const double full = l1_mass(ps.alpha, kInf) + l1_mass(ps.xi, kInf) +
                      l1_mass(ps.gamma, kInf);
  if (full <= threshold) return kInf;
  double hi = 1.0;
  while (mass(hi) < threshold) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) < threshold ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double recursion_tail_bound(const std::vector<double>& a_seq, double mass,
                            double g0, int n) {
  if (n < 0 || a_seq.size() < size_t(n) + 1)
    throw std::invalid_argument("recursion_tail_bound: need a_0..a_n");
  if (!(mass >= 0.0) || !(g0 >= 0.0))
    throw std::invalid_argument("recursion_tail_bound: negative inputs");
  double term = 1.0;  // mass^k / k!
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += a_seq[n - k] * term;
    term *= mass / double(k + 1);
  }
  return acc + g0 * term;  // term now holds mass^{n+1}/(n+1)!
}

std::pair<BoundReport, BoundReport> velocity_norm_bounds(
    const SimResult& result, const CharTrace& tr, const ParamSet& ps, double s,
    const TheoryConfig& cfg) {
  (void)cfg;
  if (result.series.empty() || result.frames.empty() || tr.times.empty())
    throw std::invalid_argument("velocity_norm_bounds: empty inputs");
  const double horizon = result.series.back().t;
  require_proportional(ps.beta, ps.alpha, 3.0, std::max(horizon, 1e-12));

  const Field& u0 = result.frames.front().u;
  const Field& sigma0 = result.frames.front().sigma;
  const double l2u0 = l2_norm(u0);
  const double linfu0 = linf_norm(u0);
  const double l2s0 = l2_norm(sigma0);
  const double hs1_4 = std::pow(sobolev_norm(sigma0, s - 1.0), 4.0);

  BoundReport l2rep, linfrep;
  l2rep.name = "l2_velocity";
  linfrep.name = "linf_velocity";
  double l2margin = kInf, linfmargin = kInf;
  bool ok2 = true, okinf = true;

  for (const SeriesRow& row : result.series) {
    const double t = row.t - result.series.front().t;
    const double G = l1_mass(ps.gamma, row.t);
    const double I = row.int_inf_xi_ux;
    const double l2_bound =
        2.0 * l2u0 * std::exp(coeff_exp(2.0 * hs1_4 * G, -3.0 * I));
    const double e1 = coeff_exp(4.0 * hs1_4 * G, -3.0 * I);
    const double J =
        coeff_exp(4.0 * l2u0 * l2u0 * std::abs(eval(ps.alpha, row.t)), e1) +
        coeff_exp(l2s0 * l2s0 * std::abs(eval(ps.gamma, row.t)), -I);
    const double linf_bound = linfu0 + t * J;

    l2rep.times.push_back(row.t);
    l2rep.bound.push_back(l2_bound);
    l2rep.observed.push_back(row.l2_u);
    linfrep.times.push_back(row.t);
    linfrep.bound.push_back(linf_bound);
    linfrep.observed.push_back(row.linf_u);

    if (t > 0.0) {
      if (row.l2_u > 0.0) l2margin = std::min(l2margin, l2_bound / row.l2_u);
      if (row.linf_u > 0.0)
        linfmargin = std::min(linfmargin, linf_bound / row.linf_u);
      ok2 = ok2 && row.l2_u <= l2_bound * (1.0 + 1e-9);
      okinf = okinf && row.linf_u <= linf_bound * (1.0 + 1e-9);
    }
  }
  l2rep.satisfied = ok2;
  l2rep.margin = l2margin;
  linfrep.satisfied = okinf;
  linfrep.margin = linfmargin;
  return {l2rep, linfrep};
}

std::vector<double> slope_growth_envelope(const SimResult& result,
                                          const ParamSet& ps, double s,
                                          double M) {
  if (result.series.empty() || result.frames.empty())
    throw std::invalid_argument("slope_growth_envelope: empty run");
  const double horizon = result.series.back().t;
  require_proportional(ps.beta, ps.alpha, 3.0, std::max(horizon, 1e-12));

  const Field& u0 = result.frames.front().u;
  const Field& sigma0 = result.frames.front().sigma;
  const double hs_u0 = sobolev_norm(u0, s);
  const double ns1 = sobolev_norm(sigma0, s - 1.0);
  const double l2u0 = l2_norm(u0);

  std::vector<double> env;
  env.reserve(result.series.size());
  double prev = 0.0;
  for (const SeriesRow& row : result.series) {
    const double t = row.t - result.series.front().t;
    const double B = l1_mass(ps.beta, row.t);
    const double G = l1_mass(ps.gamma, row.t);
    const double X = l1_mass(ps.xi, row.t);
    const double sq = B * B + G * G;
    const double term1 = 1.5 * hs_u0 * B;
    const double term2 =
        coeff_exp(1.5 * ns1 * ns1 * t * sq, M * X);
    const double inner = coeff_exp(4.0 * ns1 * ns1 * ns1 * ns1 * G, 3.0 * M * X);
    const double term3 = coeff_exp(6.0 * l2u0 * l2u0 * t * sq, inner);
    const double term4 = coeff_exp(0.5 * ns1 * G, M * X);
    const double L = term1 + term2 + term3 + term4;
    if (L < prev * (1.0 - 1e-12) - 1e-12)
      throw std::logic_error("slope_growth_envelope: lost monotonicity");
    env.push_back(L);
    prev = L;
  }
  return env;
}

double momentum_pairing(const Field& u) {
  const int n = u.grid.n;
  const Spectrum c = to_spectral(u);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = u.grid.wavenumber(spectral_index(j, n));
    acc += (1.0 + w * w) / (4.0 + w * w) * std::norm(c[j]);
  }
  return u.grid.length * acc;
}

double momentum_pairing(const State& s) { return momentum_pairing(s.u); }

PairingDrift pairing_drift(const SimResult& result) {
  if (result.series.size() < 2)
    throw std::invalid_argument("pairing_drift: need a run with steps");
  const double base = result.series.front().m_chi;
  const double scale0 = std::max(std::abs(base), 1e-300);
  PairingDrift pd;
  double integral = 0.0;
  double drift_scale = 0.0;
  std::vector<double> drifts, integrals;
  for (size_t i = 0; i < result.series.size(); ++i) {
    if (i > 0) {
      const SeriesRow& a = result.series[i - 1];
      const SeriesRow& b = result.series[i];
      integral += 0.5 * (b.t - a.t) * (a.gamma_sigma2_chix + b.gamma_sigma2_chix);
    }
    const double drift = result.series[i].m_chi - base;
    drifts.push_back(drift);
    integrals.push_back(integral);
    pd.drift_rel_initial =
        std::max(pd.drift_rel_initial, std::abs(drift) / scale0);
    drift_scale = std::max(drift_scale, std::abs(drift));
  }
  const double denom = std::max(drift_scale, 1e-300);
  for (size_t i = 0; i < drifts.size(); ++i)
    pd.mismatch_rel_drift = std::max(
        pd.mismatch_rel_drift, std::abs(drifts[i] - integrals[i]) / denom);
  return pd;
}

}  // namespace bfam
