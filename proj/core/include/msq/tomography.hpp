#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "msq/modes.hpp"
#include "msq/schmidt.hpp"

namespace msq {

/// Stack of single-shot far-field intensity frames drawn from per-mode
/// thermal statistics of a 2D mode spectrum. frame(iy, ix) indexes
/// (theta_y, theta_x); values are |E|^2 in the field units of the modes.
struct FrameEnsemble {
  TransverseGrid grid;
  int n_frames = 0;
  std::uint64_t seed = 0;
  int max_order = 0;
  std::vector<Eigen::MatrixXf> frames;
};

/// Draw n_frames single-shot frames: every mode amplitude is circular
/// Gaussian with mean photon number weights(m, n); the frame is
/// |sum c_mn u_mn|^2 plus optional additive white readout noise.
/// Frame f depends only on (seed, f), so generation order never matters.
FrameEnsemble simulate_frames(const Mode2DSpectrum& spectrum, int n_frames, std::uint64_t seed,
                              double readout_noise_sigma = 0.0);

/// Optional signal/idler split applied before the covariance.
enum class HalfPlane { full, left, right };

/// Unbiased sample covariance of the 1D intensity profile along theta_x at a
/// fixed theta_y row.
struct CovarianceSlice {
  Eigen::MatrixXd covariance; // symmetric, (theta_x, theta_x')
  Eigen::VectorXd mean_intensity;
  int theta_y_index = 0;
  int n_frames = 0;
  std::vector<int> column_indices; // grid columns the slice was built from
};
CovarianceSlice covariance_slice(const FrameEnsemble& ensemble, int theta_y_index,
                                 HalfPlane half_plane = HalfPlane::full);

enum class ReconstructionStrategy {
  sqrt_sign, // elementwise sqrt of max(C, 0), signs by diagonal positivity
             // and row continuity, then eigendecomposition
  direct     // eigendecomposition of C itself (biased toward bright modes)
};

struct ReconstructedModes {
  std::vector<ModeFunction1D> modes; // orthonormal, descending weight
  Eigen::VectorXd weights;
  double negative_eigenvalue_fraction = 0.0;
  bool noise_warning = false; // negative eigenvalue mass above 10%
};

/// Recover 1D coherent modes from an intensity covariance slice.
ReconstructedModes reconstruct_modes(const CovarianceSlice& slice, int n_modes,
                                     ReconstructionStrategy strategy, const TransverseGrid& grid);

} // namespace msq
