#pragma once

#include <Eigen/Core>
#include <vector>

#include "msq/modes.hpp"

namespace msq {

/// Phase-only modulator pixel grid. Physical coordinates are centered:
/// x = (ix - (nx-1)/2) * pitch, y likewise.
struct SlmGrid {
  int nx = 792;
  int ny = 600;
  double pitch = 20e-6; // [m]

  double x(int ix) const { return (ix - 0.5 * (nx - 1)) * pitch; }
  double y(int iy) const { return (iy - 0.5 * (ny - 1)) * pitch; }
  double nyquist() const { return 0.5 / pitch; } // [cycles/m]
  bool operator==(const SlmGrid&) const = default;
};

/// Sinusoidal carrier grating assigned to one target mode. Frequencies are in
/// cycles per meter; the first diffraction order lands at (fx, fy) in the
/// Fourier plane.
struct Carrier {
  double fx = 0.0;
  double fy = 0.0;
  int mode_m = -1;
  int mode_n = -1;
};

/// Complex field sampled on the SLM grid; samples(iy, ix).
struct SlmField {
  SlmGrid slm;
  Eigen::MatrixXcd samples;
};

/// Phase-only hologram. `modulation` keeps the designed first-order complex
/// content sum_k A_k exp(i(Phi_k + 2 pi c_k . r)) so holograms can be
/// multiplexed after synthesis; `phase` is the encoded SLM pattern in
/// [-pi, pi].
struct Hologram {
  SlmGrid slm;
  Eigen::MatrixXd phase;
  Eigen::MatrixXcd modulation;
  std::vector<Carrier> carriers;
};

/// Amplitude-to-phase-depth map from inverting J1(f) = 0.58 A on the
/// ascending branch of the first-order Bessel function.
double bessel_amplitude_map(double amplitude);

/// The paper's encoding constant in J1(f) = c A.
inline constexpr double kBesselEncodingConstant = 0.58;

/// Waist (1/e^2 intensity radius) for which the fundamental Gaussian has the
/// given intensity FWHM.
inline double waist_from_fwhm(double fwhm) { return fwhm / std::sqrt(2.0 * std::log(2.0)); }

/// Analytic HG target on the SLM, scaled so the fundamental of the family has
/// the given intensity FWHM (default: the working beam size). Unit power.
SlmField hg_on_slm(int m, int n, const SlmGrid& slm, double fundamental_fwhm = 1.25e-3);

/// Resample a mode from the angular grid onto the SLM at `scale` meters per
/// radian (bilinear, zero outside), normalized to unit power.
SlmField resample_to_slm(const ModeFunction2D& mode, const SlmGrid& slm, double scale);

/// Scale factor mapping a mode family onto the SLM such that the fundamental
/// profile reaches the given intensity FWHM.
double slm_scale_for(const ModeFunction1D& fundamental, double fwhm = 1.25e-3);

/// Encode one target as theta(r) = f(A(r)) sin(Phi(r) + 2 pi carrier . r),
/// A normalized to unit maximum. Throws ConfigError past Nyquist.
Hologram synthesize_hologram(const SlmField& target, const Carrier& carrier);

/// Overlay several holograms: sum their first-order complex contents and
/// re-encode the sum as a single phase-only pattern. Throws ConfigError on
/// duplicate carriers or overlapping spot windows.
Hologram multiplex(const std::vector<Hologram>& holograms);

/// Result of sorting one field: per-spot integrated first-order intensities,
/// normalized weights zeta, and the first-order efficiency.
struct SortReport {
  std::vector<Carrier> spots;
  Eigen::VectorXd window_power; // integrated intensity per spot window
  Eigen::VectorXd zeta;         // window_power / sum(window_power)
  double efficiency = 0.0;      // sum(window_power) / total input power
  double total_power = 0.0;     // Fourier-plane total, equals input power
  double input_power = 0.0;
};

/// Fourier-plane sorting of `field` through hologram `h`: FFT of
/// field * exp(i phase), intensities integrated over square windows of side
/// `window_fraction` times the carrier grid spacing around each spot.
SortReport simulate_sorting(const SlmField& field, const Hologram& h, double window_fraction = 0.5);

/// 3 x 3 carrier layout for the nine modes (m, n) <= 2: fx in f0 + m df,
/// fy in (n - 1) df.
std::vector<Carrier> default_carrier_grid(double f0 = 8000.0, double df = 3000.0);

/// Spacing of the carrier layout (min nonzero distance along either axis).
double carrier_grid_spacing(const std::vector<Carrier>& carriers);

} // namespace msq
