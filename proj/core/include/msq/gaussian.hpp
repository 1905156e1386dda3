#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "msq/errors.hpp"

namespace msq {

/// One squeezed mode as seen through the squeezer -> amplifier chain.
/// All variances are in shot-noise units (vacuum = 1).
struct ModeGaussianState {
  int m = -1, n = -1;      // 2D mode indices
  double g_sq = 0.0;       // squeezing parameter of this mode
  double kappa2 = 1.0;     // power overlap with the matching amplifier mode, [0, 1]
  double extra_loss = 1.0; // pre-amplification transmission, (0, 1]

  double effective_kappa2() const { return kappa2 * extra_loss; }
};

/// Amplifier settings for the readout of one mode.
struct MopaConfig {
  double gain = 4.4;         // per-mode amplification gain G
  double phase = 0.0;        // pump phase [rad]; squeezed quadrature amplified at 0
  double readout_loss = 1.0; // post-amplification transmission, (0, 1]
};

/// 10 log10 of the squeezed-quadrature variance after mode-matching loss:
/// exp(-2 g_sq) kappa2_eff + (1 - kappa2_eff). Always <= 0 dB.
double detectable_squeezing_db(const ModeGaussianState& state);

/// Antisqueezed counterpart with exp(+2 g_sq).
double antisqueezing_db(const ModeGaussianState& state);

/// Single-mode Gaussian purity 1 / sqrt(V_s V_a) from dB variances.
/// Throws PhysicsError when V_s V_a < 1 (uncertainty violation).
double purity(double squeezing_db, double antisqueezing_db);

/// Mean photon number out of the cascade squeezer -> loss -> phase -> amplifier,
/// from the exact 2x2 symplectic composition on the vacuum covariance.
/// At phi = 0 and unit transmission this equals sinh^2(G - g_sq).
double cascade_intensity(double g_sq, double amplifier_gain, double phi, double eta_mid);

/// Variance of the amplified quadrature at pump phase phi after mode-matching
/// loss; this is the infinite-gain limit of the intensity ratio.
double eq1_limit_variance(const ModeGaussianState& state, double phi);

/// Phase-scan traces of 10 log10(I(phi) / I_vac) per mode.
///
/// The post-amplification readout loss cancels identically in the ratio and
/// therefore never enters the trace; detected_intensity exposes the scaled
/// mean photon numbers where the loss does appear.
struct PhaseTrace {
  Eigen::VectorXd phases;              // [rad]
  std::vector<ModeGaussianState> states;
  Eigen::MatrixXd db;                  // (mode, phase) -> dB readout
  Eigen::MatrixXd detected_intensity;  // readout_loss * mean photons
  double vacuum_intensity = 0.0;       // readout_loss * sinh^2(G)
  double max_finite_gain_deviation = 0.0; // |exact - limit| / limit over the scan
  bool finite_gain_warning = false;       // set when the deviation exceeds 1%
};

PhaseTrace phase_trace(const std::vector<ModeGaussianState>& states, const MopaConfig& mopa,
                       const Eigen::VectorXd& phases);

/// Same, with one amplifier gain per mode (overrides mopa.gain).
PhaseTrace phase_trace(const std::vector<ModeGaussianState>& states, const MopaConfig& mopa,
                       const Eigen::VectorXd& phases, const std::vector<double>& amplifier_gains);

/// Squeezing and antisqueezing evaluated at the endpoints of a gain
/// uncertainty interval g_sq * (1 +- delta_rel); used for uncertainty bands.
struct SqueezingBand {
  double low_db = 0.0;  // at the lower gain endpoint
  double high_db = 0.0; // at the upper gain endpoint
};
SqueezingBand squeezing_band(const ModeGaussianState& state, double delta_abs);
SqueezingBand antisqueezing_band(const ModeGaussianState& state, double delta_abs);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

} // namespace msq
