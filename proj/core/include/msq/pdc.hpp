#pragma once

#include <Eigen/Core>

#include "msq/grid.hpp"

namespace msq {

/// Geometry and drive of one type-I collinear degenerate PDC crystal.
struct CrystalConfig {
  double length = 3e-3;           // [m]
  double pump_waist = 97e-6;      // 1/e^2 intensity radius inside the crystal [m]
  double pump_wavelength = 355e-9;// [m]; degenerate signal at twice this
  double gain = 1.05;             // collinear squeezing parameter g (dimensionless)
  int n_slices = 128;             // RK4 steps along the crystal
  double refractive_index = 1.77; // signal index inside the crystal (BiBO near 710 nm)

  void validate() const {
    if (length <= 0.0) throw ConfigError("CrystalConfig: length must be positive");
    if (pump_waist <= 0.0) throw ConfigError("CrystalConfig: pump_waist must be positive");
    if (pump_wavelength <= 0.0) throw ConfigError("CrystalConfig: pump_wavelength must be positive");
    if (gain < 0.0) throw ConfigError("CrystalConfig: gain must be nonnegative");
    if (n_slices < 32) throw ConfigError("CrystalConfig: n_slices must be >= 32");
    if (refractive_index < 1.0) throw ConfigError("CrystalConfig: refractive_index must be >= 1");
  }
};

/// Discrete Bogoliubov pair (eta, beta) mapping input to output operators,
/// a_out_i = sum_j eta_ij a_in_j + beta_ij a_in_j^dagger.
///
/// Matrices absorb the grid spacing of the kernel composition, so the
/// Bogoliubov identities are plain matrix algebra:
///   eta eta^dag - beta beta^dag = I     and     eta beta^T symmetric.
struct BogoliubovKernel {
  TransverseGrid grid;
  Eigen::MatrixXcd eta;
  Eigen::MatrixXcd beta;
  double gain = 0.0;          // collinear g this kernel was propagated at
  double coupling_rate = 0.0; // calibrated coupling Gamma [1/m]
  double unitarity_defect = 0.0; // max |eta eta^dag - beta beta^dag - I| over checkpoints
  double symmetry_defect = 0.0;  // max |eta beta^T - (eta beta^T)^T| over checkpoints
};

/// Unit-rate coupling matrix at position z in the crystal:
///   F_z(i,j) = dq * pump(q_i + q_j) * exp(i * mismatch(q_i,q_j) * z)
/// with the pump angular amplitude normalized to unit L1 mass and the
/// paraxial mismatch (q - q')^2 / (4 k_s), k_s taken inside the crystal.
/// The propagation generator is coupling_rate * F_z.
Eigen::MatrixXcd coupling_kernel(double z, const CrystalConfig& config, const TransverseGrid& grid);

/// Propagate the Bogoliubov pair through the crystal with classical RK4,
/// calibrating the coupling rate so the squeezing of the collinear coherence
/// mode equals exp(-2 * gain); equivalently the pure-state photon number
/// associated with the collinear emission equals sinh^2(gain).
///
/// Throws ResolutionError when the grid undersamples the pump spectrum and
/// ConvergenceError when the Bogoliubov identities degrade past 1e-6
/// (raise n_slices) or the calibration fails to settle.
BogoliubovKernel propagate_kernels(const CrystalConfig& config, const TransverseGrid& grid);

/// Propagate at a fixed coupling rate without calibration. Used by the
/// calibration loop and by convergence studies.
BogoliubovKernel propagate_at_rate(double coupling_rate, const CrystalConfig& config,
                                   const TransverseGrid& grid);

/// Squeezing parameter of the collinear coherence mode of a propagated pair:
/// -log(V_min)/2 for the minimum quadrature variance V_min of the normalized
/// mode built from the center row of beta beta^dagger.
double collinear_gain_of(const BogoliubovKernel& kernel);

/// Total output photon number Tr(beta beta^dagger).
double total_photon_number(const BogoliubovKernel& kernel);

inline constexpr double kBogoliubovTolerance = 1e-6;

} // namespace msq
