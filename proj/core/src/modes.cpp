#include "msq/modes.hpp"

#include <cmath>

namespace msq {

double l2_norm(const ModeFunction1D& f) { return std::sqrt(f.samples.squaredNorm() * f.grid.spacing()); }

double l2_norm(const ModeFunction2D& f) {
  const double s = f.grid.spacing();
  return std::sqrt(f.samples.squaredNorm() * s * s);
}

Complex overlap(const ModeFunction1D& a, const ModeFunction1D& b) {
  if (a.grid != b.grid) throw GridMismatchError("overlap: 1D modes on different grids");
  return a.samples.dot(b.samples) * a.grid.spacing(); // dot conjugates the first argument
}

Complex overlap(const ModeFunction2D& a, const ModeFunction2D& b) {
  if (a.grid != b.grid) throw GridMismatchError("overlap: 2D modes on different grids");
  const double s = a.grid.spacing();
  return (a.samples.conjugate().cwiseProduct(b.samples)).sum() * s * s;
}

ModeFunction1D hermite_gauss(int order, double waist, const TransverseGrid& grid) {
  grid.validate();
  if (order < 0) throw ConfigError("hermite_gauss: order must be nonnegative");
  if (waist <= 2.0 * grid.spacing())
    throw ResolutionError("hermite_gauss: waist is not resolvable on this grid (need waist > 2*spacing)");
  if (order > grid.n_points / 4)
    throw AliasingError("hermite_gauss: order exceeds n_points/4, samples would alias");

  Eigen::VectorXcd v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = std::sqrt(2.0) * grid.theta(i) / waist;
    // physicists' Hermite recurrence, scaled by exp(-x^2/2) as it goes to
    // keep intermediates finite at high order
    double h0 = std::exp(-0.5 * x * x), h1 = 2.0 * x * h0;
    double h = (order == 0) ? h0 : h1;
    for (int k = 2; k <= order; ++k) {
      h = 2.0 * x * h1 - 2.0 * (k - 1) * h0;
      h0 = h1;
      h1 = h;
    }
    v(i) = h;
  }
  ModeFunction1D f{grid, v};
  f.samples /= l2_norm(f);
  return f;
}

ModeFunction2D tensor_mode(const ModeFunction1D& fx, const ModeFunction1D& fy, int m, int n) {
  if (fx.grid != fy.grid) throw GridMismatchError("tensor_mode: factors on different grids");
  ModeFunction2D f{fx.grid, fx.samples * fy.samples.transpose(), m, n};
  return f;
}

ModeFunction2D hermite_gauss_2d(int m, int n, double waist, const TransverseGrid& grid) {
  return tensor_mode(hermite_gauss(m, waist, grid), hermite_gauss(n, waist, grid), m, n);
}

ModeFunction2D superpose(Complex c1, const ModeFunction2D& a, Complex c2, const ModeFunction2D& b) {
  if (a.grid != b.grid) throw GridMismatchError("superpose: modes on different grids");
  ModeFunction2D f{a.grid, c1 * a.samples + c2 * b.samples, -1, -1};
  const double nrm = l2_norm(f);
  if (nrm == 0.0) throw ConfigError("superpose: zero superposition");
  f.samples /= nrm;
  return f;
}

ModeFunction2D laguerre_from_hg(int m, int n, int sign, double waist, const TransverseGrid& grid) {
  if (sign != 1 && sign != -1) throw ConfigError("laguerre_from_hg: sign must be +1 or -1");
  const Complex i_unit(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  return superpose(r, hermite_gauss_2d(m, n, waist, grid),
                   double(sign) * r * i_unit, hermite_gauss_2d(n, m, waist, grid));
}

double one_over_e2_radius(const ModeFunction1D& f) {
  const int n = f.grid.n_points;
  int ipk = 0;
  double pk = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::norm(f.samples(i));
    if (v > pk) {
      pk = v;
      ipk = i;
    }
  }
  const double target = pk * std::exp(-2.0);
  for (int i = ipk; i < n - 1; ++i) {
    const double a = std::norm(f.samples(i));
    const double b = std::norm(f.samples(i + 1));
    if (a >= target && b < target) {
      const double frac = (a - target) / (a - b);
      return f.grid.theta(i) + frac * f.grid.spacing() - f.grid.theta(ipk);
    }
  }
  throw PhysicsError("one_over_e2_radius: profile does not decay to 1/e^2 within the grid");
}

} // namespace msq
