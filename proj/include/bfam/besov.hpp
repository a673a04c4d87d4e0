#pragma once

#include <vector>

#include "bfam/grid.hpp"
#include "bfam/spectral.hpp"

namespace bfam {

// indices (s, p, r) of the Besov scale; p, r in [1, inf]
struct BesovSpec {
  double s = 2.0;
  double p = 2.0;
  double r = 2.0;
};

// highest dyadic block index on the grid: ceil(log2(n/2))
int max_block_index(const Grid& g);

// sharp dyadic frequency block. q = -1 keeps |k| <= 1; q >= 0 keeps
// max(2, 2^q) <= |k| < 2^{q+1}. On the integer lattice block q = 0 is empty:
// |k| = 1 already belongs to the q = -1 block.
Field dyadic_block(const Field& f, int q);

// blocks q = -1 .. max_block_index, summing back to f exactly
std::vector<Field> decompose(const Field& f);

// low-frequency cut S_q: keeps |k| <= 1 for q = 0, |k| < 2^q for q >= 1
Field low_pass(const Field& f, int q);

// l^r over q of 2^{qs} ||block_q||_{L^p}
double besov_norm(const Field& f, const BesovSpec& spec);

// (L * sum_k (1 + w_k^2)^s |c_k|^2)^{1/2}; s = 0 reproduces the discrete L2 norm
double sobolev_norm(const Field& f, double s);

// ||f g||_{B^{s1}} / (||f||_{B^{s1}} ||g||_{B^{s2}}) with the plain pointwise
// product; diagnostic for product estimates
double moser_ratio(const Field& f, const Field& g, double s1, double s2,
                   double p, double r);

}  // namespace bfam
