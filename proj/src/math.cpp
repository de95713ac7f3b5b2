#include "amsp/math.hpp"

#include <cmath>
#include <stdexcept>

namespace amsp {

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {

// Acklam's rational approximation to the inverse normal CDF.
constexpr double kA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
constexpr double kC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kPLow = 0.02425;

double tail_value(double p) {
  double q = std::sqrt(-2.0 * std::log(p));
  return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q +
          kC[5]) /
         ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
}

}  // namespace

double norm_inv(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("norm_inv: u must lie in (0,1)");
  if (u < kPLow) return tail_value(u);
  if (u > 1.0 - kPLow) return -tail_value(1.0 - u);
  double q = u - 0.5;
  double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r +
          kA[5]) *
         q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r +
          1.0);
}

MeanVar mean_variance(std::span<const double> xs) {
  MeanVar out;
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  out.mean = mean;
  out.variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  out.n = n;
  return out;
}

std::vector<double> cholesky_lower(std::span<const double> matrix,
                                   std::size_t n) {
  if (matrix.size() != n * n)
    throw std::invalid_argument("cholesky_lower: matrix size mismatch");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(matrix[i * n + i]));
  const double tol = 1e-12 * std::max(scale, 1.0);

  std::vector<double> L(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = matrix[j * n + j];
    for (std::size_t t = 0; t < j; ++t) d -= L[j * n + t] * L[j * n + t];
    if (d < -tol)
      throw std::invalid_argument(
          "cholesky_lower: matrix is not positive semi-definite");
    if (d <= tol) {
      // semi-definite direction: pivot collapses, column must vanish
      for (std::size_t i = j + 1; i < n; ++i) {
        double s = matrix[i * n + j];
        for (std::size_t t = 0; t < j; ++t) s -= L[i * n + t] * L[j * n + t];
        if (std::abs(s) > tol)
          throw std::invalid_argument(
              "cholesky_lower: matrix is not positive semi-definite");
      }
      continue;
    }
    L[j * n + j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = matrix[i * n + j];
      for (std::size_t t = 0; t < j; ++t) s -= L[i * n + t] * L[j * n + t];
      L[i * n + j] = s / L[j * n + j];
    }
  }
  return L;
}

}  // namespace amsp
