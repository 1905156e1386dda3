#pragma once

#include <Eigen/Core>
#include <complex>

#include "msq/errors.hpp"

namespace msq {

inline constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;

/// Uniform symmetric sample grid in transverse angle theta [rad].
///
/// Samples sit at theta_i = (i - (n-1)/2) * spacing, so the grid is
/// symmetric about theta = 0 for both parities of n_points. Transverse
/// wavevectors follow q = k * theta with k = 2*pi / wavelength (vacuum).
struct TransverseGrid {
  int n_points = 256;
  double extent = 25e-3;      // half-width [rad]
  double wavelength = 710e-9; // signal vacuum wavelength [m]

  double spacing() const { return 2.0 * extent / n_points; }
  double theta(int i) const { return (i - 0.5 * (n_points - 1)) * spacing(); }
  double wavenumber() const { return 2.0 * kPi / wavelength; }
  double q(int i) const { return wavenumber() * theta(i); }
  double q_spacing() const { return wavenumber() * spacing(); }

  Eigen::VectorXd thetas() const {
    Eigen::VectorXd t(n_points);
    for (int i = 0; i < n_points; ++i) t(i) = theta(i);
    return t;
  }

  bool operator==(const TransverseGrid&) const = default;

  void validate() const {
    if (n_points < 16) throw ConfigError("TransverseGrid: n_points must be >= 16");
    if (extent <= 0.0) throw ConfigError("TransverseGrid: extent must be positive");
    if (wavelength <= 0.0) throw ConfigError("TransverseGrid: wavelength must be positive");
  }

  static TransverseGrid make(int n_points, double extent, double wavelength) {
    TransverseGrid g{n_points, extent, wavelength};
    g.validate();
    return g;
  }
};

/// Grid used throughout for the default experiment geometry: 256 points per
/// axis over +-25 mrad at the degenerate signal wavelength (2 x 355 nm).
inline TransverseGrid default_grid() { return TransverseGrid{256, 25e-3, 710e-9}; }

} // namespace msq
