#include <doctest.h>

#include <cmath>

#include "msq/modes.hpp"
#include "oracles.hpp"

using namespace msq;

namespace {
const TransverseGrid kGrid = TransverseGrid::make(128, 25e-3, 710e-9);
constexpr double kWaist = 8e-3; // angular waist well resolved on kGrid
} // namespace

TEST_SUITE_BEGIN("grid_modes");

TEST_CASE("grid is symmetric about zero and q conversion is exact") {
  CHECK(kGrid.spacing() == doctest::Approx(2.0 * kGrid.extent / kGrid.n_points));
  for (int i = 0; i < kGrid.n_points; ++i) {
    CHECK(kGrid.theta(i) == doctest::Approx(-kGrid.theta(kGrid.n_points - 1 - i)).epsilon(1e-12));
    // q = k theta is exactly invertible on the grid
    CHECK(kGrid.q(i) / kGrid.wavenumber() == doctest::Approx(kGrid.theta(i)).epsilon(1e-15));
  }
  const TransverseGrid odd = TransverseGrid::make(17, 1e-2, 710e-9);
  CHECK(odd.theta(8) == doctest::Approx(0.0));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(TransverseGrid::make(8, 1e-2, 710e-9), ConfigError);
  CHECK_THROWS_AS(TransverseGrid::make(64, -1.0, 710e-9), ConfigError);
  CHECK_THROWS_AS(TransverseGrid::make(64, 1e-2, 0.0), ConfigError);
}

TEST_CASE("hermite gauss normalization and orthogonality") {
  const auto hg0 = hermite_gauss(0, kWaist, kGrid);
  CHECK(std::abs(overlap(hg0, hg0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l2_norm(hg0) == doctest::Approx(1.0).epsilon(1e-10));

  const auto hg1 = hermite_gauss(1, kWaist, kGrid);
  CHECK(std::abs(overlap(hg0, hg1)) < 1e-10); // parity orthogonality

  // recurrence-built orthonormality across orders up to n_points / 4
  for (int a = 0; a <= 16; a += 4) {
    for (int b = a; b <= 16; b += 2) {
      const double expected = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(overlap(hermite_gauss(a, kWaist, kGrid), hermite_gauss(b, kWaist, kGrid))) ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("fundamental overlap at waist ratio 1.5 matches the closed form") {
  const auto a = hermite_gauss_2d(0, 0, kWaist, kGrid);
  const auto b = hermite_gauss_2d(0, 0, 1.5 * kWaist, kGrid);
  // 2D amplitude overlap of Gaussians with waist ratio r is 2 r / (1 + r^2)
  CHECK(std::abs(overlap(a, b)) == doctest::Approx(oracles::gaussian_power_overlap_2d(1.5)).epsilon(1e-9));
  CHECK(std::abs(overlap(a, b)) == doctest::Approx(0.9230769230769231).epsilon(1e-9));
}

TEST_CASE("hermite gauss rejects unresolvable and aliased requests") {
  CHECK_THROWS_AS(hermite_gauss(0, 1.5 * kGrid.spacing(), kGrid), ResolutionError);
  CHECK_THROWS_AS(hermite_gauss(kGrid.n_points / 4 + 1, kWaist, kGrid), AliasingError);
}

TEST_CASE("tensor product is exact and unit norm") {
  const auto fx = hermite_gauss(2, kWaist, kGrid);
  const auto fy = hermite_gauss(3, kWaist, kGrid);
  const auto f2 = tensor_mode(fx, fy, 2, 3);
  for (int i = 0; i < kGrid.n_points; i += 17)
    for (int j = 0; j < kGrid.n_points; j += 13)
      CHECK(f2.samples(i, j) == fx.samples(i) * fy.samples(j)); // exact by construction
  CHECK(l2_norm(f2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("laguerre superposition from hermite gauss pair") {
  const auto lg_plus = laguerre_from_hg(0, 1, +1, kWaist, kGrid);
  const auto lg_minus = laguerre_from_hg(0, 1, -1, kWaist, kGrid);
  CHECK(l2_norm(lg_plus) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(overlap(lg_plus, lg_minus)) < 1e-10);
  CHECK(std::abs(overlap(lg_plus, hermite_gauss_2d(0, 1, kWaist, kGrid))) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("laguerre intensity ring is azimuthally uniform") {
  // fine grid; scan |LG|^2 around the ring radius by bilinear interpolation
  const TransverseGrid fine = TransverseGrid::make(256, 20e-3, 710e-9);
  const double w = 6e-3;
  const auto lg = laguerre_from_hg(0, 1, +1, w, fine);

  auto intensity_at = [&](double tx, double ty) {
    const double ix = (tx - fine.theta(0)) / fine.spacing();
    const double iy = (ty - fine.theta(0)) / fine.spacing();
    const int i0 = static_cast<int>(ix), j0 = static_cast<int>(iy);
    const double fx = ix - i0, fy = iy - j0;
    const Complex v = (1 - fx) * (1 - fy) * lg.samples(i0, j0) + fx * (1 - fy) * lg.samples(i0 + 1, j0) +
                      (1 - fx) * fy * lg.samples(i0, j0 + 1) + fx * fy * lg.samples(i0 + 1, j0 + 1);
    return std::norm(v);
  };

  const double ring = w / std::sqrt(2.0); // intensity maximum of the ring
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 720; ++k) {
    const double phi = 2.0 * kPi * k / 720.0;
    const double v = intensity_at(ring * std::cos(phi), ring * std::sin(phi));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / hi < 0.01);
}

TEST_CASE("overlap requires a shared grid") {
  const auto a = hermite_gauss(0, kWaist, kGrid);
  const auto b = hermite_gauss(0, kWaist, TransverseGrid::make(128, 20e-3, 710e-9));
  CHECK_THROWS_AS(overlap(a, b), GridMismatchError);
}

TEST_CASE("parseval: projections onto a truncated basis stay below one and grow") {
  // a unit-norm field that is not itself an HG mode
  ModeFunction1D field = hermite_gauss(0, 1.3 * kWaist, kGrid);
  for (int i = 0; i < kGrid.n_points; ++i)
    field.samples(i) *= Complex(1.0, 0.4 * std::tanh(kGrid.theta(i) / kWaist));
  field.samples /= l2_norm(field);

  double prev = 0.0;
  for (int cut : {2, 6, 12, 24}) {
    double sum = 0.0;
    for (int k = 0; k < cut; ++k) sum += std::norm(overlap(hermite_gauss(k, kWaist, kGrid), field));
    CHECK(sum <= 1.0 + 1e-9);
    CHECK(sum >= prev - 1e-12);
    prev = sum;
  }
  CHECK(prev > 0.9); // 24 modes nearly exhaust the field
}

TEST_CASE("near-field waist from the angular profile") {
  const auto hg0 = hermite_gauss(0, kWaist, kGrid);
  const double radius = one_over_e2_radius(hg0);
  CHECK(radius == doctest::Approx(kWaist).epsilon(0.02));
  CHECK(near_field_waist(radius, kGrid.wavelength) ==
        doctest::Approx(kGrid.wavelength / (kPi * kWaist)).epsilon(0.02));
}

TEST_SUITE_END();
