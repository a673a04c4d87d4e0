#include "bfam/friedrichs.hpp"

#include <cmath>
#include <stdexcept>

namespace bfam {

namespace {

Field lerp_fields(const Field& a, const Field& b, double w) {
  return {a.grid, (1.0 - w) * a.values + w * b.values};
}

bool finite(const Field& f) { return f.values.isFinite().all(); }

}  // namespace

std::vector<Field> linear_transport_solve(const std::vector<Field>& advector,
                                          const ParamFn& coefficient,
                                          const std::vector<Field>& forcing,
                                          const Field& f0,
                                          const std::vector<double>& times,
                                          int substeps) {
  const size_t K = times.size();
  if (K < 2 || advector.size() != K || forcing.size() != K)
    throw std::invalid_argument(
        "linear_transport_solve: advector/forcing must match the time grid");
  if (substeps < 1)
    throw std::invalid_argument("linear_transport_solve: substeps >= 1");
  for (size_t i = 1; i < K; ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument(
          "linear_transport_solve: times must increase strictly");

  std::vector<Field> out;
  out.reserve(K);
  out.push_back(f0);
  Field f = f0;
  for (size_t i = 0; i + 1 < K; ++i) {
    const double t0 = times[i], t1 = times[i + 1];
    const double span = t1 - t0;
    auto tendency = [&](const Field& g, double t) {
      const double w = (t - t0) / span;
      const Field a = lerp_fields(advector[i], advector[i + 1], w);
      const Field F = lerp_fields(forcing[i], forcing[i + 1], w);
      const double c = eval(coefficient, std::max(0.0, t));
      Field d(g.grid);
      d.values = -c * dealiased_product(a, derivative(g)).values + F.values;
      return d;
    };
    const double h = span / substeps;
    for (int j = 0; j < substeps; ++j) {
      const double tj = t0 + j * h;
      const Field k1 = tendency(f, tj);
      const Field k2 =
          tendency({f.grid, f.values + 0.5 * h * k1.values}, tj + 0.5 * h);
      const Field k3 =
          tendency({f.grid, f.values + 0.5 * h * k2.values}, tj + 0.5 * h);
      const Field k4 = tendency({f.grid, f.values + h * k3.values}, tj + h);
      f.values += (h / 6.0) * (k1.values + 2.0 * k2.values + 2.0 * k3.values +
                               k4.values);
    }
    if (!finite(f))
      throw std::runtime_error("linear_transport_solve: iterate diverged");
    out.push_back(f);
  }
  return out;
}

std::vector<IterateRecord> friedrichs_iterate(const Field& u0,
                                              const Field& sigma0,
                                              const ParamSet& ps,
                                              const BesovSpec& spec, double T,
                                              int n_max, int frames,
                                              int substeps) {
  require_same_grid(u0, sigma0);
  if (n_max < 1) throw std::invalid_argument("friedrichs_iterate: n_max >= 1");
  if (frames < 2) throw std::invalid_argument("friedrichs_iterate: frames >= 2");
  if (!(T > 0.0)) throw std::invalid_argument("friedrichs_iterate: T > 0");

  const double frame_dt = T / frames;
  std::vector<double> times(frames + 1);
  for (int k = 0; k <= frames; ++k) times[k] = k * frame_dt;

  const BesovSpec lower{spec.s - 1.0, spec.p, spec.r};
  auto h_of = [&](const State& st) {
    return besov_norm(st.u, spec) + besov_norm(st.sigma, lower);
  };

  std::vector<IterateRecord> records;
  records.reserve(n_max);

  // first iterate: mollified data, frozen in time
  {
    IterateRecord rec;
    rec.n = 1;
    State st;
    st.u = low_pass(u0, 1);
    st.sigma = low_pass(sigma0, 1);
    const double h = h_of(st);
    for (int k = 0; k <= frames; ++k) {
      st.t = times[k];
      rec.solution.push_back(st);
      rec.h_series.push_back(h);
    }
    records.push_back(std::move(rec));
  }

  for (int n = 1; n < n_max; ++n) {
    const IterateRecord& prev = records.back();
    std::vector<Field> adv(frames + 1), fu(frames + 1), fs(frames + 1);
    for (int k = 0; k <= frames; ++k) {
      const State& st = prev.solution[k];
      const double t = times[k];
      const double a = eval(ps.alpha, t);
      const double b = eval(ps.beta, t);
      const double g = eval(ps.gamma, t);
      const double x = eval(ps.xi, t);
      const Field ux = derivative(st.u);
      Field p(st.u.grid);
      p.values = 0.5 * b * dealiased_product(st.u, st.u).values +
                 0.5 * g * dealiased_product(st.sigma, st.sigma).values +
                 0.5 * (3.0 * a - b) * dealiased_product(ux, ux).values;
      adv[k] = st.u;
      fu[k] = Field(st.u.grid, -derivative(green_convolve(p)).values);
      fs[k] = Field(st.u.grid, -x * dealiased_product(st.sigma, ux).values);
    }
    std::vector<Field> unew = linear_transport_solve(
        adv, ps.alpha, fu, low_pass(u0, n + 1), times, substeps);
    std::vector<Field> snew = linear_transport_solve(
        adv, ps.xi, fs, low_pass(sigma0, n + 1), times, substeps);

    IterateRecord rec;
    rec.n = n + 1;
    for (int k = 0; k <= frames; ++k) {
      State st;
      st.t = times[k];
      st.u = unew[k];
      st.sigma = snew[k];
      rec.h_series.push_back(h_of(st));
      rec.solution.push_back(std::move(st));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<double> cauchy_differences(
    const std::vector<IterateRecord>& records, const BesovSpec& spec, int m) {
  if (m < 1) throw std::invalid_argument("cauchy_differences: m >= 1");
  if (records.size() < size_t(m) + 1)
    throw std::invalid_argument("cauchy_differences: not enough iterates");
  const BesovSpec du_spec{spec.s - 1.0, spec.p, spec.r};
  const BesovSpec ds_spec{spec.s - 2.0, spec.p, spec.r};
  std::vector<double> sups;
  for (size_t n = 0; n + m < records.size(); ++n) {
    const auto& A = records[n];
    const auto& B = records[n + m];
    double worst = 0.0;
    for (size_t k = 0; k < A.solution.size(); ++k) {
      const double d = besov_norm(B.solution[k].u - A.solution[k].u, du_spec) +
                       besov_norm(B.solution[k].sigma - A.solution[k].sigma,
                                  ds_spec);
      worst = std::max(worst, d);
    }
    sups.push_back(worst);
  }
  return sups;
}

}  // namespace bfam
