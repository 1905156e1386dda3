#include "msq/sorter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace msq {

namespace {

// First maximum of J1, end of the ascending branch.
constexpr double kJ1PeakArgument = 1.8411837813406593;
constexpr double kDefaultCarrierSpacing = 3000.0; // [cycles/m]

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Unitary 2D DFT of a (ny x nx) field, layout-compatible with Eigen's
// column-major storage (x is the slow index).
Eigen::MatrixXcd fft2_unitary(const Eigen::MatrixXcd& in, const SlmGrid& slm) {
  Eigen::MatrixXcd out(in.rows(), in.cols());
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_2d(
        slm.nx, slm.ny,
        reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  return out / std::sqrt(double(slm.nx) * slm.ny);
}

double frequency_of_bin(int k, int n, double pitch) {
  const int signed_k = (k <= n / 2) ? k : k - n;
  return signed_k / (n * pitch);
}

void check_carrier(const Carrier& c, const SlmGrid& slm) {
  if (std::hypot(c.fx, c.fy) >= slm.nyquist())
    throw ConfigError("carrier frequency at or beyond the SLM Nyquist limit");
}

Eigen::MatrixXd encode_phase(const Eigen::MatrixXcd& modulation) {
  const double peak = modulation.cwiseAbs().maxCoeff();
  if (peak <= 0.0) throw ConfigError("hologram: zero modulation");
  Eigen::MatrixXd phase(modulation.rows(), modulation.cols());
  for (Eigen::Index j = 0; j < modulation.cols(); ++j) {
    for (Eigen::Index i = 0; i < modulation.rows(); ++i) {
      const Complex m = modulation(i, j);
      const double amp = std::abs(m) / peak;
      phase(i, j) = (amp > 0.0) ? bessel_amplitude_map(amp) * std::sin(std::arg(m)) : 0.0;
    }
  }
  return phase;
}

} // namespace

double bessel_amplitude_map(double amplitude) {
  if (amplitude < 0.0 || amplitude > 1.0)
    throw ConfigError("bessel_amplitude_map: amplitude must be in [0, 1]");
  if (amplitude == 0.0) return 0.0;
  const double target = kBesselEncodingConstant * amplitude;
  double lo = 0.0, hi = kJ1PeakArgument;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(1.0, mid) < target) lo = mid; else hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

SlmField hg_on_slm(int m, int n, const SlmGrid& slm, double fundamental_fwhm) {
  if (m < 0 || n < 0) throw ConfigError("hg_on_slm: orders must be nonnegative");
  const double w = waist_from_fwhm(fundamental_fwhm);

  auto profile = [&](int order, double coord) {
    const double x = std::sqrt(2.0) * coord / w;
    double h0 = std::exp(-0.5 * x * x), h1 = 2.0 * x * h0;
    double h = (order == 0) ? h0 : h1;
    for (int k = 2; k <= order; ++k) {
      h = 2.0 * x * h1 - 2.0 * (k - 1) * h0;
      h0 = h1;
      h1 = h;
    }
    return h;
  };

  Eigen::VectorXd fx(slm.nx), fy(slm.ny);
  for (int ix = 0; ix < slm.nx; ++ix) fx(ix) = profile(m, slm.x(ix));
  for (int iy = 0; iy < slm.ny; ++iy) fy(iy) = profile(n, slm.y(iy));

  SlmField field{slm, (fy * fx.transpose()).cast<Complex>()};
  field.samples /= std::sqrt(field.samples.squaredNorm());
  return field;
}

double slm_scale_for(const ModeFunction1D& fundamental, double fwhm) {
  const double angular_fwhm = one_over_e2_radius(fundamental) * std::sqrt(2.0 * std::log(2.0));
  return fwhm / angular_fwhm;
}

SlmField resample_to_slm(const ModeFunction2D& mode, const SlmGrid& slm, double scale) {
  if (scale <= 0.0) throw ConfigError("resample_to_slm: scale must be positive");
  const TransverseGrid& g = mode.grid;
  const double t0 = g.theta(0), dt = g.spacing();

  auto sample = [&](double tx, double ty) -> Complex {
    const double ix = (tx - t0) / dt, iy = (ty - t0) / dt;
    const int i0 = static_cast<int>(std::floor(ix)), j0 = static_cast<int>(std::floor(iy));
    if (i0 < 0 || j0 < 0 || i0 + 1 >= g.n_points || j0 + 1 >= g.n_points) return {0.0, 0.0};
    const double fx = ix - i0, fy = iy - j0;
    return (1 - fx) * (1 - fy) * mode.samples(i0, j0) + fx * (1 - fy) * mode.samples(i0 + 1, j0) +
           (1 - fx) * fy * mode.samples(i0, j0 + 1) + fx * fy * mode.samples(i0 + 1, j0 + 1);
  };

  SlmField field{slm, Eigen::MatrixXcd(slm.ny, slm.nx)};
  for (int ix = 0; ix < slm.nx; ++ix)
    for (int iy = 0; iy < slm.ny; ++iy)
      field.samples(iy, ix) = sample(slm.x(ix) / scale, slm.y(iy) / scale);
  const double power = field.samples.squaredNorm();
  if (power <= 0.0) throw ConfigError("resample_to_slm: mode missed the SLM aperture");
  field.samples /= std::sqrt(power);
  return field;
}

Hologram synthesize_hologram(const SlmField& target, const Carrier& carrier) {
  check_carrier(carrier, target.slm);
  const SlmGrid& slm = target.slm;
  const double peak = target.samples.cwiseAbs().maxCoeff();
  if (peak <= 0.0) throw ConfigError("synthesize_hologram: empty target");

  Hologram h{slm, Eigen::MatrixXd(slm.ny, slm.nx), Eigen::MatrixXcd(slm.ny, slm.nx), {carrier}};
  for (int ix = 0; ix < slm.nx; ++ix) {
    for (int iy = 0; iy < slm.ny; ++iy) {
      const Complex u = target.samples(iy, ix);
      const double grating = 2.0 * kPi * (carrier.fx * slm.x(ix) + carrier.fy * slm.y(iy));
      h.modulation(iy, ix) = (std::abs(u) / peak) * std::polar(1.0, std::arg(u) + grating);
    }
  }
  h.phase = encode_phase(h.modulation);
  return h;
}

double carrier_grid_spacing(const std::vector<Carrier>& carriers) {
  if (carriers.size() < 2) return kDefaultCarrierSpacing;
  double spacing = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < carriers.size(); ++i)
    for (size_t j = i + 1; j < carriers.size(); ++j)
      spacing = std::min(spacing, std::max(std::abs(carriers[i].fx - carriers[j].fx),
                                           std::abs(carriers[i].fy - carriers[j].fy)));
  return spacing;
}

Hologram multiplex(const std::vector<Hologram>& holograms) {
  if (holograms.empty()) throw ConfigError("multiplex: empty hologram list");
  const SlmGrid slm = holograms[0].slm;

  Hologram h{slm, Eigen::MatrixXd(), Eigen::MatrixXcd::Zero(slm.ny, slm.nx), {}};
  for (const Hologram& part : holograms) {
    if (!(part.slm == slm)) throw ConfigError("multiplex: holograms on different SLM grids");
    h.modulation += part.modulation;
    h.carriers.insert(h.carriers.end(), part.carriers.begin(), part.carriers.end());
  }

  const double spacing = carrier_grid_spacing(h.carriers);
  if (spacing <= 0.0) throw ConfigError("multiplex: duplicate carrier frequencies");
  for (size_t i = 0; i < h.carriers.size(); ++i) {
    check_carrier(h.carriers[i], slm);
    for (size_t j = i + 1; j < h.carriers.size(); ++j) {
      const double dx = std::abs(h.carriers[i].fx - h.carriers[j].fx);
      const double dy = std::abs(h.carriers[i].fy - h.carriers[j].fy);
      if (std::max(dx, dy) < 0.5 * spacing)
        throw ConfigError("multiplex: first-order spot windows collide");
    }
  }

  h.phase = encode_phase(h.modulation);
  return h;
}

SortReport simulate_sorting(const SlmField& field, const Hologram& h, double window_fraction) {
  if (!(field.slm == h.slm)) throw ConfigError("simulate_sorting: field and hologram grids differ");
  if (window_fraction <= 0.0 || window_fraction > 1.0)
    throw ConfigError("simulate_sorting: window_fraction must be in (0, 1]");
  const SlmGrid& slm = h.slm;

  Eigen::MatrixXcd transmitted(slm.ny, slm.nx);
  for (int ix = 0; ix < slm.nx; ++ix)
    for (int iy = 0; iy < slm.ny; ++iy)
      transmitted(iy, ix) = field.samples(iy, ix) * std::polar(1.0, h.phase(iy, ix));

  const Eigen::MatrixXcd fourier = fft2_unitary(transmitted, slm);

  SortReport report;
  report.spots = h.carriers;
  report.input_power = field.samples.squaredNorm();
  report.total_power = fourier.squaredNorm();
  report.window_power = Eigen::VectorXd::Zero(static_cast<int>(h.carriers.size()));

  const double half_window = 0.5 * window_fraction * carrier_grid_spacing(h.carriers);
  for (size_t c = 0; c < h.carriers.size(); ++c) {
    double power = 0.0;
    for (int kx = 0; kx < slm.nx; ++kx) {
      const double fx = frequency_of_bin(kx, slm.nx, slm.pitch);
      if (std::abs(fx - h.carriers[c].fx) > half_window) continue;
      for (int ky = 0; ky < slm.ny; ++ky) {
        const double fy = frequency_of_bin(ky, slm.ny, slm.pitch);
        if (std::abs(fy - h.carriers[c].fy) > half_window) continue;
        power += std::norm(fourier(ky, kx));
      }
    }
    report.window_power(static_cast<int>(c)) = power;
  }

  const double sum = report.window_power.sum();
  report.zeta = sum > 0.0 ? (report.window_power / sum).eval() : report.window_power;
  report.efficiency = report.input_power > 0.0 ? sum / report.input_power : 0.0;
  return report;
}

std::vector<Carrier> default_carrier_grid(double f0, double df) {
  std::vector<Carrier> carriers;
  carriers.reserve(9);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      carriers.push_back(Carrier{f0 + m * df, (n - 1) * df, m, n});
  return carriers;
}

} // namespace msq
