#include "msq/pdc.hpp"

#include <cmath>
#include <complex>

namespace msq {

namespace {

// Pump angular amplitude exp(-s^2 w^2 / 4) has L1 mass 2 sqrt(pi) / w.
double pump_l1_mass(double pump_waist) { return 2.0 * std::sqrt(kPi) / pump_waist; }

void check_pump_resolved(const CrystalConfig& config, const TransverseGrid& grid) {
  // full 1/e width of the pump angular amplitude is 4 / pump_waist
  const double width = 4.0 / config.pump_waist;
  if (width < 8.0 * grid.q_spacing())
    throw ResolutionError("propagate_kernels: grid does not resolve the pump angular spectrum "
                          "(need >= 8 samples across its 1/e width)");
}

struct Defects {
  double unitarity = 0.0;
  double symmetry = 0.0;
};

Defects measure_defects(const Eigen::MatrixXcd& eta, const Eigen::MatrixXcd& beta) {
  const Eigen::MatrixXcd unit =
      eta * eta.adjoint() - beta * beta.adjoint() - Eigen::MatrixXcd::Identity(eta.rows(), eta.cols());
  const Eigen::MatrixXcd prod = eta * beta.transpose();
  return {unit.cwiseAbs().maxCoeff(), (prod - prod.transpose()).cwiseAbs().maxCoeff()};
}

// Normalized collinear coherence mode: symmetrized central row of
// J = beta beta^dagger.
Eigen::VectorXcd coherence_mode(const TransverseGrid& grid, const Eigen::MatrixXcd& J) {
  const int n = grid.n_points;
  const int ia = (n - 1) / 2, ib = n / 2;
  Eigen::VectorXcd v = 0.5 * (J.row(ia) + J.row(ib)).conjugate().transpose();
  const double nrm = v.norm();
  if (nrm == 0.0) return Eigen::VectorXcd::Zero(n);
  return v / nrm;
}

} // namespace

Eigen::MatrixXcd coupling_kernel(double z, const CrystalConfig& config, const TransverseGrid& grid) {
  config.validate();
  grid.validate();
  if (z < 0.0 || z > config.length)
    throw ConfigError("coupling_kernel: z outside the crystal");

  const int n = grid.n_points;
  const double wp = config.pump_waist;
  const double ks = config.refractive_index * grid.wavenumber();
  const double scale = grid.q_spacing() / pump_l1_mass(wp);

  Eigen::MatrixXcd F(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double qs = grid.q(i) + grid.q(j);
      const double qd = grid.q(i) - grid.q(j);
      const double amp = scale * std::exp(-qs * qs * wp * wp / 4.0);
      const double phase = qd * qd / (4.0 * ks) * z;
      F(i, j) = amp * Complex(std::cos(phase), std::sin(phase));
      F(j, i) = F(i, j);
    }
  }
  return F;
}

BogoliubovKernel propagate_at_rate(double coupling_rate, const CrystalConfig& config,
                                   const TransverseGrid& grid) {
  config.validate();
  grid.validate();
  check_pump_resolved(config, grid);

  const int n = grid.n_points;
  BogoliubovKernel out;
  out.grid = grid;
  out.gain = config.gain;
  out.coupling_rate = coupling_rate;
  out.eta = Eigen::MatrixXcd::Identity(n, n);
  out.beta = Eigen::MatrixXcd::Zero(n, n);
  if (coupling_rate == 0.0) return out;

  const int ns = config.n_slices;
  const double h = config.length / ns;
  const Complex iu(0.0, 1.0);
  const int checkpoint_every = std::max(1, ns / 8);

  // Packed [eta beta] columns; one product per RK4 stage.
  Eigen::MatrixXcd state(n, 2 * n);
  state.leftCols(n) = out.eta;
  state.rightCols(n) = out.beta;
  Eigen::MatrixXcd k1(n, 2 * n), k2(n, 2 * n), k3(n, 2 * n), k4(n, 2 * n), tmp(n, 2 * n);

  // d/dz [eta beta] = i C_z [beta* eta*]
  auto deriv = [&](const Eigen::MatrixXcd& C, const Eigen::MatrixXcd& s, Eigen::MatrixXcd& ds) {
    tmp.leftCols(n) = s.rightCols(n).conjugate();
    tmp.rightCols(n) = s.leftCols(n).conjugate();
    ds.noalias() = iu * coupling_rate * (C * tmp);
  };

  Defects defects;
  Eigen::MatrixXcd C0 = coupling_kernel(0.0, config, grid);
  for (int s = 0; s < ns; ++s) {
    const double z0 = s * h;
    const Eigen::MatrixXcd Cm = coupling_kernel(z0 + 0.5 * h, config, grid);
    const Eigen::MatrixXcd C1 = coupling_kernel(z0 + h, config, grid);

    deriv(C0, state, k1);
    deriv(Cm, state + 0.5 * h * k1, k2);
    deriv(Cm, state + 0.5 * h * k2, k3);
    deriv(C1, state + h * k3, k4);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    C0 = C1;

    if ((s + 1) % checkpoint_every == 0 || s + 1 == ns) {
      const Defects d = measure_defects(state.leftCols(n), state.rightCols(n));
      defects.unitarity = std::max(defects.unitarity, d.unitarity);
      defects.symmetry = std::max(defects.symmetry, d.symmetry);
    }
  }

  out.eta = state.leftCols(n);
  out.beta = state.rightCols(n);
  out.unitarity_defect = defects.unitarity;
  out.symmetry_defect = defects.symmetry;
  if (defects.unitarity > kBogoliubovTolerance || defects.symmetry > kBogoliubovTolerance)
    throw ConvergenceError("propagate_kernels: Bogoliubov identities degraded beyond 1e-6; "
                           "raise n_slices");
  return out;
}

double collinear_gain_of(const BogoliubovKernel& kernel) {
  const Eigen::MatrixXcd J = kernel.beta * kernel.beta.adjoint();
  const Eigen::VectorXcd v = coherence_mode(kernel.grid, J);
  const double occupation = (v.adjoint() * J * v).real()(0, 0);
  const Complex anomalous = (v.adjoint() * kernel.eta * kernel.beta.transpose() * v.conjugate())(0, 0);
  const double v_min = 1.0 + 2.0 * occupation - 2.0 * std::abs(anomalous);
  if (v_min <= 0.0)
    throw PhysicsError("collinear_gain_of: nonpositive quadrature variance");
  return -0.5 * std::log(v_min);
}

double total_photon_number(const BogoliubovKernel& kernel) { return kernel.beta.squaredNorm(); }

BogoliubovKernel propagate_kernels(const CrystalConfig& config, const TransverseGrid& grid) {
  config.validate();
  grid.validate();
  if (config.gain == 0.0) return propagate_at_rate(0.0, config, grid);

  // The collinear gain grows almost exactly linearly with the coupling rate,
  // so a proportional update inside a widening bracket settles in a handful
  // of solves.
  double rate = 1.1 * config.gain / config.length;
  double lo = 0.0, hi = 0.0; // hi = 0 means "no upper bracket yet"
  BogoliubovKernel kernel;
  const double tol = 1e-10 * std::max(1.0, config.gain);
  for (int it = 0; it < 60; ++it) {
    kernel = propagate_at_rate(rate, config, grid);
    const double got = collinear_gain_of(kernel);
    if (std::abs(got - config.gain) <= tol) return kernel;
    if (got < config.gain) lo = rate; else hi = rate;
    double next = rate * config.gain / got;
    if (hi > 0.0 && (next <= lo || next >= hi)) next = 0.5 * (lo + hi); // bisection safeguard
    if (hi == 0.0 && next <= lo) next = 2.0 * rate;
    rate = next;
  }
  throw ConvergenceError("propagate_kernels: collinear gain calibration did not converge");
}

} // namespace msq
