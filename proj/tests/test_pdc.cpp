#include <doctest.h>

#include <cmath>

#include "msq/pdc.hpp"
#include "msq/schmidt.hpp"
#include "oracles.hpp"

using namespace msq;

namespace {

// Reduced grid keeps the unit suite fast; acceptance reruns the default one.
const TransverseGrid kGrid = TransverseGrid::make(128, 25e-3, 710e-9);

CrystalConfig squeezer_config(double gain = 1.05) {
  CrystalConfig c;
  c.gain = gain;
  c.n_slices = 64;
  return c;
}

} // namespace

TEST_SUITE_BEGIN("pdc");

TEST_CASE("coupling kernel symmetry and z = 0 structure") {
  const CrystalConfig cfg = squeezer_config();
  const Eigen::MatrixXcd f0 = coupling_kernel(0.0, cfg, kGrid);
  const Eigen::MatrixXcd fz = coupling_kernel(0.7 * cfg.length, cfg, kGrid);
  CHECK((fz - fz.transpose()).cwiseAbs().maxCoeff() == 0.0); // symmetric by construction
  for (int i = 0; i < kGrid.n_points; i += 11) {
    for (int j = 0; j < kGrid.n_points; j += 7) {
      CHECK(f0(i, j).imag() == 0.0);
      CHECK(f0(i, j).real() >= 0.0);
    }
  }
  CHECK_THROWS_AS(coupling_kernel(-1e-4, cfg, kGrid), ConfigError);
}

TEST_CASE("doubling the pump waist halves the antidiagonal width") {
  const CrystalConfig narrow = squeezer_config();
  CrystalConfig wide = narrow;
  wide.pump_waist = 2.0 * narrow.pump_waist;

  auto antidiagonal_halfwidth = [&](const CrystalConfig& cfg) {
    const Eigen::MatrixXcd f = coupling_kernel(0.0, cfg, kGrid);
    // walk along q + q' from the center antidiagonal; 1/e point of the pump
    const int n = kGrid.n_points;
    const double peak = std::abs(f(n / 2, n / 2 - 1));
    int steps = 0;
    while (n / 2 + steps < n && std::abs(f(n / 2 + steps, n / 2 - 1 + steps)) > peak / std::exp(1.0))
      ++steps;
    // interpolate the crossing for sub-sample accuracy
    const double a = std::abs(f(n / 2 + steps - 1, n / 2 - 2 + steps));
    const double b = std::abs(f(n / 2 + steps, n / 2 - 1 + steps));
    const double frac = (a - peak / std::exp(1.0)) / (a - b);
    return (steps - 1 + frac) * 2.0 * kGrid.q_spacing(); // along q+q'
  };

  const double w_narrow = antidiagonal_halfwidth(narrow);
  const double w_wide = antidiagonal_halfwidth(wide);
  CHECK(w_wide == doctest::Approx(0.5 * w_narrow).epsilon(0.05));
}

TEST_CASE("zero gain yields the identity transform") {
  const BogoliubovKernel k = propagate_kernels(squeezer_config(0.0), kGrid);
  CHECK(k.eta.isIdentity(0.0));
  CHECK(k.beta.isZero(0.0));
  CHECK(k.coupling_rate == 0.0);
}

TEST_CASE("low gain matches the first-order quadrature oracle") {
  const CrystalConfig cfg = squeezer_config(0.01);
  const BogoliubovKernel k = propagate_kernels(cfg, kGrid);
  const Eigen::MatrixXcd reference = oracles::first_order_beta(k.coupling_rate, cfg, kGrid);
  const double rel = (k.beta - reference).norm() / reference.norm();
  CHECK(rel < 0.01);
}

TEST_CASE("bogoliubov identities hold after propagation") {
  const BogoliubovKernel k = propagate_kernels(squeezer_config(1.05), kGrid);
  CHECK(k.unitarity_defect < kBogoliubovTolerance);
  CHECK(k.symmetry_defect < kBogoliubovTolerance);
  const Eigen::MatrixXcd unit =
      k.eta * k.eta.adjoint() - k.beta * k.beta.adjoint() - Eigen::MatrixXcd::Identity(128, 128);
  CHECK(unit.cwiseAbs().maxCoeff() < kBogoliubovTolerance);
}

TEST_CASE("calibration reproduces the requested collinear gain") {
  const BogoliubovKernel k = propagate_kernels(squeezer_config(1.05), kGrid);
  CHECK(collinear_gain_of(k) == doctest::Approx(1.05).epsilon(1e-9));
  CHECK(k.coupling_rate > 0.0);
}

TEST_CASE("total photon number grows monotonically with gain") {
  double prev = -1.0;
  for (double g : {0.2, 0.7, 1.3}) {
    const BogoliubovKernel k = propagate_kernels(squeezer_config(g), kGrid);
    const double photons = total_photon_number(k);
    CHECK(photons > prev);
    prev = photons;
  }
}

TEST_CASE("x and y solves are identical for one config") {
  const CrystalConfig cfg = squeezer_config(0.8);
  const BogoliubovKernel kx = propagate_kernels(cfg, kGrid);
  const BogoliubovKernel ky = propagate_kernels(cfg, kGrid);
  CHECK((kx.beta - ky.beta).cwiseAbs().maxCoeff() == 0.0);
  CHECK((kx.eta - ky.eta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("doubling n_slices moves beta by less than 1e-4 at default settings") {
  const TransverseGrid grid = default_grid();
  CrystalConfig cfg; // defaults: 97 um, g = 1.05, 128 slices
  const BogoliubovKernel coarse = propagate_kernels(cfg, grid);
  CrystalConfig fine_cfg = cfg;
  fine_cfg.n_slices = 2 * cfg.n_slices;
  const BogoliubovKernel fine = propagate_at_rate(coarse.coupling_rate, fine_cfg, grid);
  CHECK((coarse.beta - fine.beta).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("pump spectrum must be resolved") {
  CrystalConfig cfg = squeezer_config();
  cfg.pump_waist = 2e-3; // angular spectrum far below the grid spacing
  CHECK_THROWS_AS(propagate_kernels(cfg, kGrid), ResolutionError);
}

TEST_CASE("config validation") {
  CrystalConfig cfg = squeezer_config();
  cfg.n_slices = 16;
  CHECK_THROWS_AS(propagate_kernels(cfg, kGrid), ConfigError);
  cfg = squeezer_config();
  cfg.gain = -0.1;
  CHECK_THROWS_AS(propagate_kernels(cfg, kGrid), ConfigError);
}

TEST_SUITE_END();
