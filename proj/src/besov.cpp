#include "bfam/besov.hpp"

#include <cmath>
#include <stdexcept>

namespace bfam {

namespace {

void check_exponent(double p, const char* name) {
  if (!(p >= 1.0) && !std::isinf(p))
    throw std::invalid_argument(std::string(name) + " must be in [1, inf]");
}

Field keep_band(const Field& f, int lo, int hi_exclusive) {
  // keeps lo <= |k| < hi_exclusive
  const int n = f.grid.n;
  Spectrum c = to_spectral(f);
  for (int j = 0; j < n; ++j) {
    const int k = std::abs(spectral_index(j, n));
    if (k < lo || k >= hi_exclusive) c[j] = 0.0;
  }
  return from_spectral(f.grid, c);
}

}  // namespace

int max_block_index(const Grid& g) {
  int q = 0;
  while ((1 << (q + 1)) < g.n) ++q;  // n = 2^m -> q = m - 1 = ceil(log2(n/2))
  return q;
}

Field dyadic_block(const Field& f, int q) {
  if (q < -1) throw std::invalid_argument("dyadic_block: q >= -1 required");
  if (q == -1) return keep_band(f, 0, 2);
  const int lo = std::max(2, 1 << q);
  return keep_band(f, lo, 1 << (q + 1));
}

std::vector<Field> decompose(const Field& f) {
  const int qmax = max_block_index(f.grid);
  std::vector<Field> blocks;
  blocks.reserve(qmax + 2);
  for (int q = -1; q <= qmax; ++q) blocks.push_back(dyadic_block(f, q));
  return blocks;
}

Field low_pass(const Field& f, int q) {
  if (q < 0) throw std::invalid_argument("low_pass: q >= 0 required");
  return keep_band(f, 0, std::max(2, q >= 31 ? f.grid.n : (1 << q)));
}

double besov_norm(const Field& f, const BesovSpec& spec) {
  check_exponent(spec.p, "besov p");
  check_exponent(spec.r, "besov r");
  const int qmax = max_block_index(f.grid);
  double acc = 0.0, worst = 0.0;
  for (int q = -1; q <= qmax; ++q) {
    const double w =
        std::pow(2.0, q * spec.s) * lp_norm(dyadic_block(f, q), spec.p);
    if (std::isinf(spec.r))
      worst = std::max(worst, w);
    else
      acc += std::pow(w, spec.r);
  }
  return std::isinf(spec.r) ? worst : std::pow(acc, 1.0 / spec.r);
}

double sobolev_norm(const Field& f, double s) {
  const int n = f.grid.n;
  const Spectrum c = to_spectral(f);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = f.grid.wavenumber(spectral_index(j, n));
    acc += std::pow(1.0 + w * w, s) * std::norm(c[j]);
  }
  return std::sqrt(f.grid.length * acc);
}

double moser_ratio(const Field& f, const Field& g, double s1, double s2,
                   double p, double r) {
  require_same_grid(f, g);
  const double nf = besov_norm(f, {s1, p, r});
  const double ng = besov_norm(g, {s2, p, r});
  if (nf == 0.0 || ng == 0.0)
    throw std::invalid_argument("moser_ratio: zero factor norm");
  const Field fg{f.grid, f.values * g.values};
  return besov_norm(fg, {s1, p, r}) / (nf * ng);
}

}  // namespace bfam
