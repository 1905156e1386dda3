#include "msq/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "msq/rng.hpp"

namespace msq {

namespace {

// Mode-amplitude matrix for one frame: c(m, n) circular Gaussian with
// <|c|^2> = weights(m, n), drawn in fixed (m, n) order from the frame's own
// stream.
Eigen::MatrixXcd draw_amplitudes(const Eigen::MatrixXd& weights, CounterRng& rng) {
  Eigen::MatrixXcd c(weights.rows(), weights.cols());
  for (int m = 0; m < weights.rows(); ++m) {
    for (int n = 0; n < weights.cols(); ++n) {
      const auto [z1, z2] = rng.next_gaussian_pair();
      const double sigma = std::sqrt(0.5 * weights(m, n));
      c(m, n) = Complex(sigma * z1, sigma * z2);
    }
  }
  return c;
}

} // namespace

FrameEnsemble simulate_frames(const Mode2DSpectrum& spectrum, int n_frames, std::uint64_t seed,
                              double readout_noise_sigma) {
  if (n_frames < 2) throw ConfigError("simulate_frames: need at least 2 frames");
  if (readout_noise_sigma < 0.0) throw ConfigError("simulate_frames: negative noise sigma");

  const TransverseGrid& grid = spectrum.grid;
  const int npts = grid.n_points;
  const int nm = spectrum.max_order + 1;

  // 1D output-mode matrix, shared by both axes (isotropic solve).
  Eigen::MatrixXcd u(npts, nm);
  for (int m = 0; m < nm; ++m) u.col(m) = spectrum.output_1d[m].samples;

  FrameEnsemble ensemble;
  ensemble.grid = grid;
  ensemble.n_frames = n_frames;
  ensemble.seed = seed;
  ensemble.max_order = spectrum.max_order;
  ensemble.frames.resize(n_frames);

#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < n_frames; ++f) {
    CounterRng rng(seed, static_cast<std::uint64_t>(f));
    const Eigen::MatrixXcd c = draw_amplitudes(spectrum.weights, rng);
    // E(iy, ix) = sum_mn c(m, n) u_m(theta_x_ix) u_n(theta_y_iy)
    const Eigen::MatrixXcd e = u * (u * c).transpose();
    Eigen::MatrixXf frame = e.cwiseAbs2().cast<float>();
    if (readout_noise_sigma > 0.0) {
      for (int ix = 0; ix < npts; ++ix) {
        for (int iy = 0; iy < npts; ++iy) {
          const auto [z1, z2] = rng.next_gaussian_pair();
          frame(iy, ix) += static_cast<float>(readout_noise_sigma * z1);
          (void)z2;
        }
      }
    }
    ensemble.frames[f] = std::move(frame);
  }
  return ensemble;
}

CovarianceSlice covariance_slice(const FrameEnsemble& ensemble, int theta_y_index, HalfPlane half_plane) {
  if (ensemble.n_frames < 2) throw ConfigError("covariance_slice: need at least 2 frames");
  const int npts = ensemble.grid.n_points;
  if (theta_y_index < 0 || theta_y_index >= npts)
    throw ConfigError("covariance_slice: theta_y_index out of range");

  std::vector<int> cols;
  for (int ix = 0; ix < npts; ++ix) {
    const double theta = ensemble.grid.theta(ix);
    if (half_plane == HalfPlane::left && theta >= 0.0) continue;
    if (half_plane == HalfPlane::right && theta <= 0.0) continue;
    cols.push_back(ix);
  }
  const int nc = static_cast<int>(cols.size());
  const int nf = ensemble.n_frames;

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(nc);
  Eigen::VectorXd row(nc);
  for (int f = 0; f < nf; ++f) {
    for (int j = 0; j < nc; ++j) row(j) = ensemble.frames[f](theta_y_index, cols[j]);
    mean += row;
  }
  mean /= nf;

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(nc, nc);
  for (int f = 0; f < nf; ++f) {
    for (int j = 0; j < nc; ++j) row(j) = ensemble.frames[f](theta_y_index, cols[j]);
    row -= mean;
    cov.selfadjointView<Eigen::Lower>().rankUpdate(row, 1.0);
  }
  cov = cov.selfadjointView<Eigen::Lower>();
  cov /= (nf - 1);

  return CovarianceSlice{std::move(cov), std::move(mean), theta_y_index, nf, std::move(cols)};
}

namespace {

// Propagate signs outward from the diagonal: flip after leaving a deep
// valley of |J|, where the smooth coherence function crossed zero.
void propagate_row_signs(const Eigen::MatrixXd& magnitude, Eigen::MatrixXd& signed_out) {
  const int n = static_cast<int>(magnitude.rows());
  for (int i = 0; i < n; ++i) {
    const double tau = 0.02 * magnitude.row(i).maxCoeff();
    for (const int dir : {+1, -1}) {
      double sign = 1.0;
      bool in_valley = false;
      for (int j = i; j >= 0 && j < n; j += dir) {
        const double m = magnitude(i, j);
        if (in_valley && m >= tau) {
          sign = -sign;
          in_valley = false;
        } else if (!in_valley && m < tau && j != i) {
          in_valley = true;
        }
        signed_out(i, j) = sign * m;
      }
    }
  }
}

} // namespace

ReconstructedModes reconstruct_modes(const CovarianceSlice& slice, int n_modes,
                                     ReconstructionStrategy strategy, const TransverseGrid& grid) {
  const int nc = static_cast<int>(slice.covariance.rows());
  if (slice.n_frames < 100) throw ConfigError("reconstruct_modes: need a covariance from >= 100 frames");
  if (n_modes < 1 || n_modes > nc) throw ConfigError("reconstruct_modes: n_modes out of range");

  Eigen::MatrixXd matrix(nc, nc);
  if (strategy == ReconstructionStrategy::sqrt_sign) {
    const Eigen::MatrixXd magnitude = slice.covariance.cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd signed_m(nc, nc);
    propagate_row_signs(magnitude, signed_m);
    matrix = 0.5 * (signed_m + signed_m.transpose());
  } else {
    matrix = 0.5 * (slice.covariance + slice.covariance.transpose());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix);
  const Eigen::VectorXd values = eig.eigenvalues(); // ascending

  double negative_mass = 0.0, total_mass = 0.0;
  for (int i = 0; i < nc; ++i) {
    total_mass += std::abs(values(i));
    if (values(i) < 0.0) negative_mass += -values(i);
  }

  ReconstructedModes result;
  result.negative_eigenvalue_fraction = total_mass > 0.0 ? negative_mass / total_mass : 0.0;
  result.noise_warning = result.negative_eigenvalue_fraction > 0.10;
  result.weights.resize(n_modes);

  const double sqrt_spacing = std::sqrt(grid.spacing());
  for (int k = 0; k < n_modes; ++k) {
    const int idx = nc - 1 - k; // descending
    result.weights(k) = values(idx);
    Eigen::VectorXd v = eig.eigenvectors().col(idx);
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;

    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(grid.n_points);
    for (int j = 0; j < nc; ++j) full(slice.column_indices.at(j)) = v(j);
    result.modes.push_back(ModeFunction1D{grid, full / sqrt_spacing});
  }
  return result;
}

} // namespace msq
