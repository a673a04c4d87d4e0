#pragma once

#include <Eigen/Dense>

namespace bfam {

// Uniform periodic grid on [0, length). n must be a power of two >= 16 so the
// dyadic frequency blocks land on clean boundaries. Resolved spectral indices
// run k = -n/2 + 1 .. n/2.
struct Grid {
  int n = 0;
  double length = 0.0;

  Grid() = default;
  Grid(int n_points, double len);

  double dx() const { return length / n; }
  // physical wavenumber of spectral index k: 2*pi*k/length
  double wavenumber(int k) const;
  Eigen::ArrayXd nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

// Real scalar field sampled at the grid nodes.
struct Field {
  Grid grid;
  Eigen::ArrayXd values;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(Eigen::ArrayXd::Zero(g.n)) {}
  Field(const Grid& g, Eigen::ArrayXd v);
};

void require_same_grid(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& f);

}  // namespace bfam
