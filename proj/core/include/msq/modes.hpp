#pragma once

#include <Eigen/Core>
#include <vector>

#include "msq/grid.hpp"

namespace msq {

/// Complex field profile sampled on a TransverseGrid, unit L2 norm under the
/// spacing-weighted inner product <a,b> = spacing * sum conj(a_i) b_i.
struct ModeFunction1D {
  TransverseGrid grid;
  Eigen::VectorXcd samples;
};

/// Separable or superposed 2D mode on grid x grid. Indices (m, n) identify
/// tensor-product modes; they are -1 for general superpositions.
struct ModeFunction2D {
  TransverseGrid grid;
  Eigen::MatrixXcd samples; // samples(i, j) = field at (theta_x_i, theta_y_j)
  int m = -1;
  int n = -1;
};

double l2_norm(const ModeFunction1D& f);
double l2_norm(const ModeFunction2D& f);

/// Spacing-weighted inner product <a|b>; throws GridMismatchError when the
/// operands live on different grids.
Complex overlap(const ModeFunction1D& a, const ModeFunction1D& b);
Complex overlap(const ModeFunction2D& a, const ModeFunction2D& b);

/// Normalized Hermite-Gauss profile of the given order in transverse angle.
/// `waist` is the 1/e^2 intensity radius of the fundamental in radians.
/// Samples are real; discrete renormalization keeps unit norm on any grid.
ModeFunction1D hermite_gauss(int order, double waist, const TransverseGrid& grid);

/// Tensor product HG_m(theta_x) * HG_n(theta_y).
ModeFunction2D hermite_gauss_2d(int m, int n, double waist, const TransverseGrid& grid);

/// Normalized complex superposition c1 * a + c2 * b.
ModeFunction2D superpose(Complex c1, const ModeFunction2D& a, Complex c2, const ModeFunction2D& b);

/// Laguerre-Gauss-type superposition (HG_{m,n} + sign * i * HG_{n,m}) / sqrt(2).
/// laguerre_from_hg(0, 1, +1) is (HG_01 + i HG_10) / sqrt(2).
ModeFunction2D laguerre_from_hg(int m, int n, int sign, double waist, const TransverseGrid& grid);

/// Build a 2D mode from two 1D profiles on the same grid (exact tensor product).
ModeFunction2D tensor_mode(const ModeFunction1D& fx, const ModeFunction1D& fy, int m = -1, int n = -1);

/// 1/e^2 intensity radius of a (single-lobe-centered) profile, measured from
/// the intensity peak outward with linear interpolation [rad].
double one_over_e2_radius(const ModeFunction1D& f);

/// Gaussian-beam Fourier relation: near-field waist from angular waist.
inline double near_field_waist(double angular_waist, double wavelength) {
  return wavelength / (kPi * angular_waist);
}

} // namespace msq
