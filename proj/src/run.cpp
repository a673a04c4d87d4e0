#include "bfam/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "json.hpp"

#include "bfam/characteristics.hpp"
#include "bfam/friedrichs.hpp"
#include "bfam/theory.hpp"

namespace bfam {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no inf/nan literals; keep them readable and deterministic
json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string series_csv(const std::vector<SeriesRow>& rows) {
  std::string out =
      "t,Hs_u,Hs_sigma,L2_u,L2_sigma,Linf_u,Linf_sigma,inf_ux,sup_ux,m_chi\n";
  for (const SeriesRow& r : rows) {
    out += fmt17(r.t);
    for (double v : {r.hs_u, r.hs_sigma, r.l2_u, r.l2_sigma, r.linf_u,
                     r.linf_sigma, r.inf_ux, r.sup_ux, r.m_chi})
      out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

std::string frames_csv(const std::vector<State>& frames) {
  std::string out = "t,x,u,sigma\n";
  for (const State& st : frames) {
    const Eigen::ArrayXd x = st.u.grid.nodes();
    for (int j = 0; j < st.u.grid.n; ++j)
      out += fmt17(st.t) + "," + fmt17(x[j]) + "," + fmt17(st.u.values[j]) +
             "," + fmt17(st.sigma.values[j]) + "\n";
  }
  return out;
}

std::string traces_csv(const CharTrace& tr) {
  std::string out = "t,seed,x0,psi,psi_x,psi_x_fd\n";
  for (size_t i = 0; i < tr.times.size(); ++i)
    for (int s = 0; s < tr.seeds.size(); ++s)
      out += fmt17(tr.times[i]) + "," + std::to_string(s) + "," +
             fmt17(tr.seeds[s]) + "," + fmt17(tr.positions(int(i), s)) + "," +
             fmt17(tr.jacobians(int(i), s)) + "," +
             fmt17(tr.jacobians_fd(int(i), s)) + "\n";
  return out;
}

json verdict_json(const SimResult& res) {
  return {{"verdict", verdict_name(res.verdict)},
          {"verdict_time", jnum(res.verdict_time)},
          {"steps", res.series.size() - 1},
          {"frames", res.frames.size()}};
}

json final_row_json(const SimResult& res) {
  const SeriesRow& r = res.series.back();
  return {{"t", jnum(r.t)},          {"Hs_u", jnum(r.hs_u)},
          {"Hs_sigma", jnum(r.hs_sigma)}, {"L2_u", jnum(r.l2_u)},
          {"L2_sigma", jnum(r.l2_sigma)}, {"Linf_u", jnum(r.linf_u)},
          {"Linf_sigma", jnum(r.linf_sigma)}, {"inf_ux", jnum(r.inf_ux)},
          {"sup_ux", jnum(r.sup_ux)},     {"m_chi", jnum(r.m_chi)}};
}

json check_json(const CheckResult& c) {
  return {{"holds", c.holds},
          {"margin", jnum(c.margin)},
          {"left", jnum(c.left)},
          {"right", jnum(c.right)},
          {"degenerate", c.degenerate}};
}

json config_echo(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : resolved_entries(cfg)) j[k] = v;
  return j;
}

// --out and --workers stay out of the echo: neither may change output bytes
json summary_shell(const RunConfig& cfg) {
  return {{"scenario", cfg.scenario},
          {"config", config_echo(cfg)},
          {"seed", cfg.seed}};
}

RhsForm form_of(const RunConfig& cfg) {
  return cfg.rhs_form == "momentum" ? RhsForm::Momentum : RhsForm::Nonlocal;
}

int verdict_exit(const SimResult& res) {
  switch (res.verdict) {
    case Verdict::Completed: return 0;
    case Verdict::BlewUp: return 2;
    default: return 1;
  }
}

Field random_band_limited(const Grid& g, int kmax, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Spectrum c = Spectrum::Zero(g.n);
  c[0] = 0.5 * unif(rng);
  for (int k = 1; k <= kmax; ++k) {
    const double decay = 1.0 / (1.0 + double(k) * k);
    const std::complex<double> z(unif(rng), unif(rng));
    c[k] = 0.5 * decay * z;
    c[g.n - k] = std::conj(c[k]);
  }
  return from_spectral(g, c);
}

// ---- scenarios -------------------------------------------------------------

int run_simulate(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  const ParamSet ps = make_params(cfg);
  State s0;
  s0.u = make_data(g, cfg.u0);
  s0.sigma = make_data(g, cfg.sigma0);
  const SimResult res =
      simulate(s0, ps, cfg.t_end, cfg.step, cfg.s, form_of(cfg));

  write_text(out / "series.csv", series_csv(res.series));
  if (cfg.output_frames) write_text(out / "frames.csv", frames_csv(res.frames));

  json j = summary_shell(cfg);
  j["result"] = verdict_json(res);
  j["result"]["final"] = final_row_json(res);
  j["result"]["breakdown_integral"] = jnum(breakdown_integral(res));
  write_text(out / "summary.json", j.dump(2) + "\n");
  return verdict_exit(res);
}

int run_transform_check(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  State s0;
  s0.u = make_data(g, cfg.u0);
  s0.sigma = make_data(g, cfg.sigma0);

  const double lambda = cfg.transform_lambda;
  const double T = cfg.t_end;

  // damped-preset run with rate lambda/2, so its coefficients decay like
  // e^{-lambda t}; its weighted image solves the damped system with rate lambda
  const ParamSet damped = damped_preset(cfg.b, cfg.kappa, 0.5 * lambda);
  const SimResult run_damped =
      simulate(s0, damped, T, cfg.step, cfg.s, form_of(cfg));

  // undamped constant-coefficient run on the rescaled clock
  const ParamSet undamped = constant_params(1.0, cfg.b, cfg.kappa, 1.0);
  const double s_end = rescaled_time(lambda, T);
  const SimResult run_plain =
      simulate(s0, undamped, s_end, cfg.step, cfg.s, form_of(cfg));

  write_text(out / "series.csv", series_csv(run_damped.series));

  json j = summary_shell(cfg);
  j["result"] = {{"damped", verdict_json(run_damped)},
                 {"undamped", verdict_json(run_plain)}};

  int code = 1;
  if (run_damped.verdict == Verdict::Completed &&
      run_plain.verdict == Verdict::Completed) {
    const State via_rescale = time_rescale_transform(run_plain.frames, lambda, T);
    const State via_weight = exp_weight_transform(run_damped.frames.back(),
                                                  lambda, WeightDirection::Inverse);
    const double diff =
        std::max(linf_norm(via_rescale.u - via_weight.u),
                 linf_norm(via_rescale.sigma - via_weight.sigma));

    const State fwd = exp_weight_transform(run_damped.frames.back(), lambda,
                                           WeightDirection::Forward);
    const State back = exp_weight_transform(fwd, lambda, WeightDirection::Inverse);
    const double roundtrip =
        std::max(linf_norm(back.u - run_damped.frames.back().u),
                 linf_norm(back.sigma - run_damped.frames.back().sigma));

    const bool pass = diff <= cfg.transform_tolerance && roundtrip <= 1e-14;
    j["result"]["lambda"] = jnum(lambda);
    j["result"]["preset_rate"] = jnum(0.5 * lambda);
    j["result"]["rescaled_horizon"] = jnum(s_end);
    j["result"]["route_difference"] = jnum(diff);
    j["result"]["weight_roundtrip_error"] = jnum(roundtrip);
    j["result"]["tolerance"] = jnum(cfg.transform_tolerance);
    j["result"]["pass"] = pass;
    code = pass ? 0 : 1;
  }
  write_text(out / "summary.json", j.dump(2) + "\n");
  return code;
}

int run_friedrichs(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  const ParamSet ps = make_params(cfg);
  const BesovSpec spec = make_besov(cfg);
  State s0;
  s0.u = make_data(g, cfg.u0);
  s0.sigma = make_data(g, cfg.sigma0);

  const auto records =
      friedrichs_iterate(s0.u, s0.sigma, ps, spec, cfg.t_end,
                         cfg.friedrichs_n_max, cfg.friedrichs_frames,
                         cfg.friedrichs_substeps);

  StepControl ctrl = cfg.step;
  ctrl.frame_interval = cfg.t_end / cfg.friedrichs_frames;
  const SimResult direct =
      simulate(s0, ps, cfg.t_end, ctrl, cfg.s, form_of(cfg));
  write_text(out / "series.csv", series_csv(direct.series));

  std::string fcsv = "n,t,H\n";
  for (const auto& rec : records)
    for (size_t k = 0; k < rec.h_series.size(); ++k)
      fcsv += std::to_string(rec.n) + "," +
              fmt17(rec.solution[k].t) + "," + fmt17(rec.h_series[k]) + "\n";
  write_text(out / "friedrichs.csv", fcsv);

  const TheoryConfig tc{cfg.theory_c};
  const double h0 = besov_norm(s0.u, spec) +
                    besov_norm(s0.sigma, {spec.s - 1.0, spec.p, spec.r});
  const CheckResult small = global_existence_check(s0.u, s0.sigma, spec, ps, tc);

  json sup_h = json::array(), cauchy = json::array(), ratios = json::array();
  for (const auto& rec : records) {
    double sup = 0.0;
    for (double h : rec.h_series) sup = std::max(sup, h);
    sup_h.push_back(jnum(sup));
  }
  const auto diffs = cauchy_differences(records, spec, 1);
  for (double d : diffs) cauchy.push_back(jnum(d));
  for (size_t i = 1; i < diffs.size(); ++i)
    ratios.push_back(diffs[i - 1] > 0.0 ? jnum(diffs[i] / diffs[i - 1])
                                        : jnum(0.0));

  double final_vs_direct = 0.0;
  bool aligned = direct.verdict == Verdict::Completed &&
                 direct.frames.size() == records.back().solution.size();
  if (aligned) {
    const BesovSpec du{spec.s - 1.0, spec.p, spec.r};
    const BesovSpec dsg{spec.s - 2.0, spec.p, spec.r};
    for (size_t k = 0; k < direct.frames.size(); ++k) {
      const State& A = records.back().solution[k];
      const State& B = direct.frames[k];
      final_vs_direct = std::max(
          final_vs_direct,
          besov_norm(A.u - B.u, du) + besov_norm(A.sigma - B.sigma, dsg));
    }
  }

  json j = summary_shell(cfg);
  j["result"] = {{"H0", jnum(h0)},
                 {"small_data_condition", check_json(small)},
                 {"uniform_bound", jnum(2.0 * growth_modulus(h0, ps, tc))},
                 {"sup_H", sup_h},
                 {"cauchy_m1", cauchy},
                 {"cauchy_ratios", ratios},
                 {"direct", verdict_json(direct)},
                 {"frames_aligned", aligned},
                 {"final_vs_direct", jnum(final_vs_direct)}};
  write_text(out / "summary.json", j.dump(2) + "\n");
  return direct.verdict == Verdict::Completed ? 0 : verdict_exit(direct);
}

int run_blowup_scan(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  const ParamSet ps = make_params(cfg);
  const TheoryConfig tc{cfg.theory_c};
  std::vector<double> amps = cfg.scan_amplitudes;
  if (amps.empty()) amps.push_back(cfg.u0.amplitude);

  struct ScanOut {
    SimResult res;
    double lower_bound = 0.0;
    double integral_final = 0.0, integral_half = 0.0;
  };
  std::vector<ScanOut> results(amps.size());

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < amps.size();
         i = next.fetch_add(1)) {
      DataSpec du = cfg.u0;
      du.amplitude = amps[i];
      State s0;
      s0.u = make_data(g, du);
      s0.sigma = make_data(g, cfg.sigma0);
      ScanOut& so = results[i];
      so.lower_bound = breakdown_time_bound(s0.u, s0.sigma, cfg.s, ps, tc);
      so.res = simulate(s0, ps, cfg.t_end, cfg.step, cfg.s, form_of(cfg));
      so.integral_final = breakdown_integral(so.res);
      const double tb = so.res.verdict_time;
      so.integral_half = breakdown_integral_at(so.res, 0.5 * tb);
    }
  };
  const int nw = std::max(1, std::min<int>(cfg.workers, int(amps.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  json runs = json::array();
  bool any_blowup = false, any_error = false;
  for (size_t i = 0; i < amps.size(); ++i) {
    const ScanOut& so = results[i];
    char dirname[32];
    std::snprintf(dirname, sizeof dirname, "run_%03zu", i);
    const fs::path sub = out / dirname;
    fs::create_directories(sub);
    write_text(sub / "series.csv", series_csv(so.res.series));
    if (cfg.output_frames)
      write_text(sub / "frames.csv", frames_csv(so.res.frames));

    const bool blew = so.res.verdict == Verdict::BlewUp;
    any_blowup = any_blowup || blew;
    any_error = any_error || so.res.verdict == Verdict::StepUnderflow ||
                so.res.verdict == Verdict::NonFinite;
    json r = {{"amplitude", jnum(amps[i])},
              {"dir", dirname},
              {"verdict", verdict_name(so.res.verdict)},
              {"verdict_time", jnum(so.res.verdict_time)},
              {"breakdown_lower_bound", jnum(so.lower_bound)},
              {"breakdown_integral", jnum(so.integral_final)},
              {"breakdown_integral_half_time", jnum(so.integral_half)}};
    if (blew)
      r["bound_respected"] =
          so.res.verdict_time >= so.lower_bound * (1.0 - 1e-9);
    runs.push_back(r);

    json sj = summary_shell(cfg);
    sj["config"]["u0.amplitude"] = fmt17(amps[i]);
    sj["result"] = verdict_json(so.res);
    sj["result"]["final"] = final_row_json(so.res);
    sj["result"]["breakdown_integral"] = jnum(so.integral_final);
    sj["result"]["breakdown_lower_bound"] = jnum(so.lower_bound);
    write_text(sub / "summary.json", sj.dump(2) + "\n");
  }

  json j = summary_shell(cfg);
  j["result"] = {{"runs", runs}};
  write_text(out / "summary.json", j.dump(2) + "\n");
  if (any_error) return 1;
  return any_blowup ? 2 : 0;
}

int run_norms(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  const BesovSpec spec = make_besov(cfg);
  const Field u0 = make_data(g, cfg.u0);
  const Field sg0 = make_data(g, cfg.sigma0);

  auto field_json = [&](const Field& f, double s_hi, double s_lo) {
    json blocks = json::array();
    const auto dec = decompose(f);
    for (size_t q = 0; q < dec.size(); ++q)
      blocks.push_back({{"q", int(q) - 1}, {"lp", jnum(lp_norm(dec[q], spec.p))}});
    return json{{"besov", jnum(besov_norm(f, {s_hi, spec.p, spec.r}))},
                {"besov_lower", jnum(besov_norm(f, {s_lo, spec.p, spec.r}))},
                {"sobolev", jnum(sobolev_norm(f, s_hi))},
                {"l2", jnum(l2_norm(f))},
                {"linf", jnum(linf_norm(f))},
                {"blocks", blocks}};
  };

  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.norms_corpus; ++i) {
    const Field f = random_band_limited(g, g.n / 6, rng);
    const Field h = random_band_limited(g, g.n / 6, rng);
    const double ratio =
        moser_ratio(f, h, cfg.norms_s1, cfg.norms_s2, spec.p, spec.r);
    worst = std::max(worst, ratio);
    best = std::min(best, ratio);
  }

  json j = summary_shell(cfg);
  j["result"] = {{"u0", field_json(u0, spec.s, spec.s - 1.0)},
                 {"sigma0", field_json(sg0, spec.s - 1.0, spec.s - 2.0)},
                 {"moser",
                  {{"corpus", cfg.norms_corpus},
                   {"s1", jnum(cfg.norms_s1)},
                   {"s2", jnum(cfg.norms_s2)},
                   {"max_ratio", jnum(worst)},
                   {"min_ratio", jnum(best)}}}};
  write_text(out / "summary.json", j.dump(2) + "\n");
  return 0;
}

int run_bounds_report(const RunConfig& cfg, const fs::path& out) {
  const Grid g = make_grid(cfg);
  const ParamSet ps = make_params(cfg);
  const BesovSpec spec = make_besov(cfg);
  const TheoryConfig tc{cfg.theory_c};
  State s0;
  s0.u = make_data(g, cfg.u0);
  s0.sigma = make_data(g, cfg.sigma0);

  const SimResult res =
      simulate(s0, ps, cfg.t_end, cfg.step, cfg.s, form_of(cfg));
  write_text(out / "series.csv", series_csv(res.series));
  if (cfg.output_frames) write_text(out / "frames.csv", frames_csv(res.frames));

  json j = summary_shell(cfg);
  j["result"] = verdict_json(res);
  j["result"]["final"] = final_row_json(res);

  const SignVerdict sv = sign_check(ps, cfg.t_end, 513);
  j["result"]["sign_check"] = {{"ok", sv.ok},
                               {"which", sv.which},
                               {"first_violation_t", jnum(sv.first_violation_t)}};
  j["result"]["small_data_condition"] =
      check_json(global_existence_check(s0.u, s0.sigma, spec, ps, tc));
  j["result"]["breakdown_lower_bound"] =
      jnum(breakdown_time_bound(s0.u, s0.sigma, cfg.s, ps, tc));
  j["result"]["breakdown_integral"] = jnum(breakdown_integral(res));
  if (ps.has_preset) {
    j["result"]["damped_condition"] = check_json(damped_global_check(
        s0.u, s0.sigma, spec, ps.b, ps.kappa, ps.lambda, tc));
    j["result"]["critical_damping_rate"] = jnum(
        critical_damping_rate(s0.u, s0.sigma, spec, ps.b, ps.kappa, tc));
  }

  // pairing sandwich on every recorded row
  bool sandwich_ok = true;
  for (const SeriesRow& row : res.series) {
    const double l2sq = row.l2_u * row.l2_u;
    sandwich_ok = sandwich_ok && row.m_chi >= 0.25 * l2sq * (1.0 - 1e-12) &&
                  row.m_chi <= l2sq * (1.0 + 1e-12);
  }
  const PairingDrift pd = pairing_drift(res);
  j["result"]["pairing"] = {{"sandwich_ok", sandwich_ok},
                            {"drift_rel_initial", jnum(pd.drift_rel_initial)},
                            {"mismatch_rel_drift", jnum(pd.mismatch_rel_drift)}};

  bool checks_ok = sandwich_ok;
  bool trace_ok = false;
  CharTrace tr;
  try {
    tr = trace(res, ps, equispaced_seeds(g, cfg.seeds_count));
    trace_ok = true;
  } catch (const std::exception& e) {
    j["result"]["trace_error"] = e.what();
    checks_ok = false;
  }
  if (trace_ok) {
    write_text(out / "traces.csv", traces_csv(tr));
    const double inv_err = sigma_invariant_error(res, tr);
    const SigmaBoundsVerdict sb = sigma_bounds_check(res, tr);
    j["result"]["sigma_invariant_error"] = jnum(inv_err);
    j["result"]["sigma_bounds"] = {
        {"ok", sb.ok},
        {"worst_linf_margin", jnum(sb.worst_linf_margin)},
        {"worst_l2_margin", jnum(sb.worst_l2_margin)},
        {"first_violation_t", jnum(sb.first_violation_t)}};
    checks_ok = checks_ok && sb.ok;

    try {
      const auto [l2rep, linfrep] =
          velocity_norm_bounds(res, tr, ps, cfg.s, tc);
      double M = 0.0;
      for (const SeriesRow& row : res.series) M = std::max(M, row.linf_u);
      const auto env = slope_growth_envelope(res, ps, cfg.s, M);
      double env_margin = std::numeric_limits<double>::infinity();
      bool env_ok = true;
      const double slope0 = std::max(std::abs(res.series.front().inf_ux),
                                     std::abs(res.series.front().sup_ux));
      for (size_t i = 1; i < res.series.size(); ++i) {
        const double bound = slope0 + env[i];
        const double obs = res.series[i].sup_ux;
        if (obs > 0.0) env_margin = std::min(env_margin, bound / obs);
        env_ok = env_ok && obs <= bound * (1.0 + 1e-9);
      }
      j["result"]["velocity_bounds"] = {
          {"applicable", true},
          {"l2",
           {{"satisfied", l2rep.satisfied}, {"margin", jnum(l2rep.margin)}}},
          {"linf",
           {{"satisfied", linfrep.satisfied},
            {"margin", jnum(linfrep.margin)}}}};
      j["result"]["slope_envelope"] = {{"applicable", true},
                                       {"satisfied", env_ok},
                                       {"margin", jnum(env_margin)},
                                       {"M", jnum(M)}};
      checks_ok = checks_ok && l2rep.satisfied && linfrep.satisfied && env_ok;
    } catch (const std::invalid_argument&) {
      j["result"]["velocity_bounds"] = {{"applicable", false}};
      j["result"]["slope_envelope"] = {{"applicable", false}};
    }
  }

  write_text(out / "summary.json", j.dump(2) + "\n");
  if (res.verdict == Verdict::BlewUp) return 2;
  if (res.verdict != Verdict::Completed) return 1;
  return checks_ok ? 0 : 1;
}

}  // namespace

int run_scenario(const RunConfig& cfg) {
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  if (cfg.scenario == "simulate") return run_simulate(cfg, out);
  if (cfg.scenario == "transform-check") return run_transform_check(cfg, out);
  if (cfg.scenario == "friedrichs") return run_friedrichs(cfg, out);
  if (cfg.scenario == "blowup-scan") return run_blowup_scan(cfg, out);
  if (cfg.scenario == "norms") return run_norms(cfg, out);
  if (cfg.scenario == "bounds-report") return run_bounds_report(cfg, out);
  throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

}  // namespace bfam
