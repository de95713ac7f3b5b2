#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace amsp {

// Standard normal CDF via erfc; keeps full relative accuracy deep in the
// lower tail (needed for digital prices down to ~1e-300).
double norm_cdf(double x);

// Inverse standard normal CDF for u in (0,1).  Acklam's rational
// approximation, relative error below 1.2e-9 over the full domain —
// far below statistical resolution for simulation draws.  Exactly odd:
// norm_inv(1-u) == -norm_inv(u) for every u on the 52-bit grid used by
// RngStream, which makes antithetic mirroring exact.
double norm_inv(double u);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 divisor); 0 when n < 2
  std::size_t n = 0;
};

MeanVar mean_variance(std::span<const double> xs);

// Lower-triangular Cholesky factor of an n x n symmetric matrix given in
// row-major order.  Tolerates positive semi-definite input (zero pivots);
// throws std::invalid_argument if the matrix is not factorizable.
std::vector<double> cholesky_lower(std::span<const double> matrix,
                                   std::size_t n);

}  // namespace amsp
