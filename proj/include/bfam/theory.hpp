#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bfam/besov.hpp"
#include "bfam/characteristics.hpp"
#include "bfam/integrator.hpp"
#include "bfam/params.hpp"

namespace bfam {

// the single estimate constant feeding every bound below
struct TheoryConfig {
  double C = 1.0;
};

struct CheckResult {
  bool holds = false;
  double margin = 0.0;  // left/right; <= 1 means the condition is met
  double left = 0.0, right = 0.0;
  bool degenerate = false;  // zero-data convention applied
};

struct BoundReport {
  std::string name;
  std::vector<double> times;
  std::vector<double> bound;
  std::vector<double> observed;
  bool satisfied = false;
  double margin = 0.0;  // min over t > 0 of bound/observed
};

// h(x) = e^{2 C^2 x I2} (x + 4 C^2 x^2 I4), I2 = total |alpha| + |xi| mass,
// I4 = all-four mass, both over [0, inf)
double growth_modulus(double x, const ParamSet& ps, const TheoryConfig& cfg);

// small-mass global-existence condition:
// total_l1_mass(inf) <= ln 2 / (6 C^2 h(H0)),
// H0 = ||u0||_{B^s_{p,r}} + ||sigma0||_{B^{s-1}_{p,r}}.
// Requires p, r in [1, inf] and s > max(3/2, 1 + 1/p). Zero data holds
// degenerately; divergent mass fails with margin +inf.
CheckResult global_existence_check(const Field& u0, const Field& sigma0,
                                   const BesovSpec& spec, const ParamSet& ps,
                                   const TheoryConfig& cfg);

// smallest damping rate of the exponential preset for which
// damped_global_check is guaranteed: 8 C^2 (2 + |b| + |kappa|) H0 / ln 2
double critical_damping_rate(const Field& u0, const Field& sigma0,
                             const BesovSpec& spec, double b, double kappa,
                             const TheoryConfig& cfg);

// damped-preset global-existence condition:
// e^{(2 C^2/lambda) H0} (H0 + (2 C^2 K/lambda) H0^2) <= lambda ln 2/(3 C^2 K),
// K = 2 + |b| + |kappa|
CheckResult damped_global_check(const Field& u0, const Field& sigma0,
                                const BesovSpec& spec, double b, double kappa,
                                double lambda, const TheoryConfig& cfg);

// sup{ t : int_0^t (|alpha|+|xi|+|gamma|) < 1/(C (||u0||_{H^s} +
// ||sigma0||_{H^{s-1}})) }; +inf when the mass never reaches the threshold
double breakdown_time_bound(const Field& u0, const Field& sigma0, double s,
                            const ParamSet& ps, const TheoryConfig& cfg);

// closed-form majorant for g_{n+1} when g_{k+1}(t) <= a_k + int mu g_k:
// sum_{k=0}^{n} a_{n-k} mass^k / k! + g0 mass^{n+1} / (n+1)!
double recursion_tail_bound(const std::vector<double>& a_seq, double mass,
                            double g0, int n);

// transport bounds for the velocity under beta = 3 alpha (verified by
// sampling; throws otherwise):
//   ||u||_2   <= 2 ||u0||_2 exp{ 2 ||sigma0||_{H^{s-1}}^4 G(t) e^{-3 I(t)} }
//   ||u||_inf <= ||u0||_inf + t J(t),
//   J = 4 ||u0||_2^2 |alpha(t)| exp{ 4 ||sigma0||_{H^{s-1}}^4 G(t) e^{-3 I(t)} }
//       + ||sigma0||_2^2 |gamma(t)| e^{-I(t)},
// G = int |gamma|, I = int inf_x{xi u_x} (from the recorded series).
// Margins are taken over t > 0.
std::pair<BoundReport, BoundReport> velocity_norm_bounds(
    const SimResult& result, const CharTrace& tr, const ParamSet& ps, double s,
    const TheoryConfig& cfg);

// monotone envelope L(t) ensuring sup_x u_x <= ||dx u0||_inf + L(t) before
// blow-up (beta = 3 alpha required); M majorizes ||u||_inf on [0, t]
std::vector<double> slope_growth_envelope(const SimResult& result,
                                          const ParamSet& ps, double s,
                                          double M);

// ((1 - dxx) u, (4 - dxx)^{-1} u)_{L2}; equals L sum (1+w^2)/(4+w^2) |c_k|^2,
// pinched between ||u||_2^2 / 4 and ||u||_2^2
double momentum_pairing(const Field& u);
double momentum_pairing(const State& s);

struct PairingDrift {
  // max |m_chi(t) - m_chi(0)| relative to |m_chi(0)|
  double drift_rel_initial = 0.0;
  // max |drift - int (gamma sigma^2, chi_x)| relative to the drift scale
  double mismatch_rel_drift = 0.0;
};

// drift of the momentum pairing against the recorded source-term integral
PairingDrift pairing_drift(const SimResult& result);

}  // namespace bfam
