#include "bfam/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bfam {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  thread_local bool initialized = false;
  if (!initialized) {
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    initialized = true;
  }
  return fft;
}

}  // namespace

Grid::Grid(int n_points, double len) : n(n_points), length(len) {
  if (n < 16 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Grid: n must be a power of two >= 16");
  if (!(length > 0.0)) throw std::invalid_argument("Grid: length must be > 0");
}

double Grid::wavenumber(int k) const { return kTwoPi * k / length; }

Eigen::ArrayXd Grid::nodes() const {
  return Eigen::ArrayXd::LinSpaced(n, 0.0, length - dx());
}

Field::Field(const Grid& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.n)
    throw std::invalid_argument("Field: value count does not match grid");
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("fields live on different grids");
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return {a.grid, a.values + b.values};
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return {a.grid, a.values - b.values};
}

Field operator*(double c, const Field& f) { return {f.grid, c * f.values}; }

int spectral_index(int j, int n) { return j <= n / 2 ? j : j - n; }

Spectrum to_spectral(const Field& f) {
  const int n = f.grid.n;
  std::vector<double> in(f.values.data(), f.values.data() + n);
  std::vector<std::complex<double>> out;
  fft_engine().fwd(out, in);
  Spectrum c(n);
  for (int j = 0; j < n; ++j) c[j] = out[j] / double(n);
  return c;
}

Field from_spectral(const Grid& g, const Spectrum& coeffs) {
  if (coeffs.size() != g.n)
    throw std::invalid_argument("from_spectral: coefficient count mismatch");
  std::vector<std::complex<double>> in(coeffs.data(), coeffs.data() + g.n);
  std::vector<std::complex<double>> out;
  fft_engine().inv(out, in);
  Field f(g);
  for (int j = 0; j < g.n; ++j) f.values[j] = out[j].real();
  return f;
}

Field derivative(const Field& f) {
  const int n = f.grid.n;
  Spectrum c = to_spectral(f);
  for (int j = 0; j < n; ++j) {
    const int k = spectral_index(j, n);
    c[j] *= std::complex<double>(0.0, f.grid.wavenumber(k));
  }
  c[n / 2] = 0.0;  // unpaired mode has no well-defined odd multiplier
  return from_spectral(f.grid, c);
}

Field helmholtz_inverse(const Field& f, double shift) {
  if (shift != 1.0 && shift != 4.0)
    throw std::invalid_argument("helmholtz_inverse: shift must be 1 or 4");
  const int n = f.grid.n;
  Spectrum c = to_spectral(f);
  for (int j = 0; j < n; ++j) {
    const double w = f.grid.wavenumber(spectral_index(j, n));
    c[j] /= shift + w * w;
  }
  return from_spectral(f.grid, c);
}

Field green_convolve(const Field& f) { return helmholtz_inverse(f, 1.0); }

Field dealiased_product(const Field& f, const Field& g) {
  require_same_grid(f, g);
  const int n = f.grid.n;
  const int kc = n / 3;
  auto truncate = [&](const Field& h) {
    Spectrum c = to_spectral(h);
    for (int j = 0; j < n; ++j)
      if (std::abs(spectral_index(j, n)) > kc) c[j] = 0.0;
    return from_spectral(h.grid, c);
  };
  Field tf = truncate(f), tg = truncate(g);
  return {f.grid, tf.values * tg.values};
}

double l2_norm(const Field& f) {
  return std::sqrt(f.values.square().sum() * f.grid.dx());
}

double linf_norm(const Field& f) {
  return f.values.size() ? f.values.abs().maxCoeff() : 0.0;
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) return linf_norm(f);
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be in [1,inf]");
  return std::pow((f.values.abs().pow(p)).sum() * f.grid.dx(), 1.0 / p);
}

double mean(const Field& f) { return f.values.mean(); }

double eval_interpolant(const Spectrum& coeffs, const Grid& g, double x) {
  const int n = g.n;
  if (coeffs.size() != n)
    throw std::invalid_argument("eval_interpolant: coefficient count mismatch");
  const double theta = kTwoPi * x / g.length;
  const int kmin = -n / 2 + 1;
  const std::complex<double> rot = std::polar(1.0, theta);
  std::complex<double> phase = std::polar(1.0, kmin * theta);
  double acc = 0.0;
  for (int k = kmin; k <= n / 2; ++k) {
    const int j = k >= 0 ? k : k + n;
    acc += (coeffs[j] * phase).real();
    phase *= rot;
  }
  return acc;
}

}  // namespace bfam
