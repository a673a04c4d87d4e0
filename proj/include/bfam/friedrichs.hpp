#pragma once

#include <vector>

#include "bfam/besov.hpp"
#include "bfam/dynamics.hpp"
#include "bfam/params.hpp"

namespace bfam {

struct IterateRecord {
  int n = 0;                     // 1-based iterate index
  std::vector<State> solution;   // states on the shared output time grid
  std::vector<double> h_series;  // ||u||_{B^s} + ||sigma||_{B^{s-1}} at times
};

// solve f_t + c(t) a(t,x) f_x = F(t,x), f(times[0]) = f0, marching RK4 over
// the knots of `times` (substeps per interval); a and F are given at the
// knots and interpolated linearly in between. Advection uses the dealiased
// product. Throws on non-finite values.
std::vector<Field> linear_transport_solve(const std::vector<Field>& advector,
                                          const ParamFn& coefficient,
                                          const std::vector<Field>& forcing,
                                          const Field& f0,
                                          const std::vector<double>& times,
                                          int substeps = 1);

// mollified iteration: iterate 1 is (S_1 u0, S_1 sigma0), frozen in time;
// iterate n+1 transports along alpha u^{(n)} (resp. xi u^{(n)}) with data
// (S_{n+1} u0, S_{n+1} sigma0) and forcing
//   u:     -dx p*( beta/2 (u^n)^2 + gamma/2 (sigma^n)^2
//                  + (3 alpha - beta)/2 (u^n_x)^2 )
//   sigma: -xi sigma^n u^n_x
std::vector<IterateRecord> friedrichs_iterate(const Field& u0,
                                              const Field& sigma0,
                                              const ParamSet& ps,
                                              const BesovSpec& spec, double T,
                                              int n_max, int frames = 200,
                                              int substeps = 1);

// sup over the time grid of ||u^{n+m} - u^n||_{B^{s-1}} +
// ||sigma^{n+m} - sigma^n||_{B^{s-2}}, one value per n
std::vector<double> cauchy_differences(
    const std::vector<IterateRecord>& records, const BesovSpec& spec, int m);

}  // namespace bfam
