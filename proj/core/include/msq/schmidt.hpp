#pragma once

#include <Eigen/Core>
#include <vector>

#include "msq/modes.hpp"
#include "msq/pdc.hpp"

namespace msq {

/// Joint Schmidt decomposition of beta: beta = sum_n sqrt(weight_n) u_n psi_n^T
/// with input modes psi_n, output modes u_n, weights sorted descending and
/// gains_n = asinh(sqrt(weight_n)) so weight_n = sinh^2(gain_n).
struct SchmidtDecomposition {
  TransverseGrid grid;
  double collinear_gain = 0.0;
  std::vector<ModeFunction1D> input_modes;  // psi_n
  std::vector<ModeFunction1D> output_modes; // u_n
  Eigen::VectorXd weights;                  // Lambda_n, descending
  Eigen::VectorXd gains;                    // g_n
  std::vector<bool> degenerate;             // weight within 1e-6 relative of a neighbor
  double reconstruction_error = 0.0;        // ||beta - sum|| / ||beta|| over retained modes
  double retained_weight_fraction = 1.0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// SVD of the discrete beta. Retains every singular value above the numerical
/// noise floor (1e-12 of the largest); phases are fixed so each output mode is
/// real-positive at the grid center, or at its first lobe right of center for
/// odd modes, with the paired input mode rotated oppositely.
SchmidtDecomposition decompose(const BogoliubovKernel& kernel);

/// Tensor-product 2D mode family with the gain rule G_mn = g_m g_n / g.
struct Mode2DSpectrum {
  TransverseGrid grid;
  double collinear_gain = 0.0;
  int max_order = 0;                        // m, n run over 0..max_order
  std::vector<ModeFunction1D> input_1d, output_1d;
  Eigen::MatrixXd gains;                    // gains(m, n) = G_mn
  Eigen::MatrixXd weights;                  // sinh^2(G_mn): mean photons of mode (m, n)

  ModeFunction2D input_mode(int m, int n) const;
  ModeFunction2D output_mode(int m, int n) const;

  /// Product-form 2D weights Lambda_m * Lambda_n of the parent 1D
  /// decomposition; the participation ratio of these is exactly the squared
  /// 1D Schmidt number.
  Eigen::MatrixXd product_weights() const;

  Eigen::VectorXd flattened(const Eigen::MatrixXd& table) const;
};

/// Assemble all (m, n) with m, n <= max_order from a 1D decomposition.
Mode2DSpectrum assemble_2d(const SchmidtDecomposition& d, int max_order);

/// Participation ratio (sum w)^2 / sum w^2. Throws ConfigError when all
/// weights vanish.
double schmidt_number(const Eigen::VectorXd& weights);

} // namespace msq
