// Independent reference implementations used to freeze expected values.
// Everything here deliberately avoids the code paths under test: the Bessel
// function is an ascending power series, the first-order kernel is a plain
// Simpson quadrature over z, and the statistics helpers are textbook
// formulas.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <vector>

#include "msq/pdc.hpp"

namespace oracles {

/// J1 by power series: sum_k (-1)^k / (k! (k+1)!) (x/2)^{2k+1}.
inline double j1_series(double x) {
  const double half = 0.5 * x;
  double term = half; // k = 0
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -half * half / (k * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// First-order Bogoliubov beta: i * rate * integral_0^L F_z dz by composite
/// Simpson rule (independent of the RK4 propagation path).
inline Eigen::MatrixXcd first_order_beta(double rate, const msq::CrystalConfig& config,
                                         const msq::TransverseGrid& grid, int n_panels = 200) {
  const double h = config.length / (2 * n_panels);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(grid.n_points, grid.n_points);
  for (int k = 0; k <= 2 * n_panels; ++k) {
    const double w = (k == 0 || k == 2 * n_panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * msq::coupling_kernel(k * h, config, grid);
  }
  return std::complex<double>(0.0, 1.0) * rate * (h / 3.0) * acc;
}

/// Power overlap of two 2D fundamental Gaussians with waist ratio r:
/// amplitude overlap 2 r / (1 + r^2) in 2D (the squared 1D value).
inline double gaussian_power_overlap_2d(double r) { return 2.0 * r / (1.0 + r * r); }

/// Chi-square statistic of `samples` against an exponential law with the
/// sample mean, over `bins` equal-probability bins. Returns the statistic;
/// degrees of freedom are bins - 2 (mean estimated from data).
inline double chi2_exponential(const std::vector<double>& samples, int bins) {
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  std::vector<double> counts(bins, 0.0);
  for (double s : samples) {
    // equal-probability bin index under Exp(mean): F(s) = 1 - exp(-s/mean)
    const double u = 1.0 - std::exp(-s / mean);
    int b = static_cast<int>(u * bins);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    counts[b] += 1.0;
  }
  const double expected = static_cast<double>(samples.size()) / bins;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  return chi2;
}

} // namespace oracles
