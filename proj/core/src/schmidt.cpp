#include "msq/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace msq {

namespace {

// Phase reference: value at the grid center when it carries weight, else the
// first local maximum of |u| right of center (odd modes have a central node).
Complex phase_reference(const TransverseGrid& grid, const Eigen::VectorXcd& u) {
  const int n = grid.n_points;
  const Complex center = u((n - 1) / 2) + u(n / 2);
  const double peak = u.cwiseAbs().maxCoeff();
  if (std::abs(center) > 1e-3 * peak) return center;
  for (int i = n / 2 + 1; i + 1 < n; ++i) {
    const double a = std::abs(u(i - 1)), b = std::abs(u(i)), c = std::abs(u(i + 1));
    if (b >= a && b > c && b > 1e-3 * peak) return u(i);
  }
  return u(n / 2);
}

} // namespace

SchmidtDecomposition decompose(const BogoliubovKernel& kernel) {
  SchmidtDecomposition d;
  d.grid = kernel.grid;
  d.collinear_gain = kernel.gain;

  if (kernel.beta.isZero(0.0)) {
    d.weights = Eigen::VectorXd::Zero(0);
    d.gains = Eigen::VectorXd::Zero(0);
    d.reconstruction_error = 0.0;
    return d;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(kernel.beta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double floor_sv = 1e-12 * sv(0);
  int retained = 0;
  while (retained < sv.size() && sv(retained) > floor_sv) ++retained;

  const double sqrt_spacing = std::sqrt(kernel.grid.spacing());
  d.weights.resize(retained);
  d.gains.resize(retained);
  d.degenerate.assign(retained, false);
  d.input_modes.reserve(retained);
  d.output_modes.reserve(retained);

  double err2 = 0.0;
  const double total2 = sv.squaredNorm();
  for (int i = retained; i < sv.size(); ++i) err2 += sv(i) * sv(i);

  for (int i = 0; i < retained; ++i) {
    d.weights(i) = sv(i) * sv(i);
    d.gains(i) = std::asinh(sv(i));
    Eigen::VectorXcd u = svd.matrixU().col(i);
    Eigen::VectorXcd psi = svd.matrixV().col(i).conjugate(); // beta = U S V^H = sum s u psi^T

    const Complex ref = phase_reference(kernel.grid, u);
    if (std::abs(ref) > 0.0) {
      const Complex rot = std::conj(ref) / std::abs(ref);
      u *= rot;
      psi *= std::conj(rot); // keeps the dyad u psi^T unchanged
    }
    // singular vectors have unit plain norm; convert to spacing-weighted norm
    d.output_modes.push_back(ModeFunction1D{kernel.grid, u / sqrt_spacing});
    d.input_modes.push_back(ModeFunction1D{kernel.grid, psi / sqrt_spacing});
  }
  for (int i = 0; i + 1 < retained; ++i) {
    if (sv(i) - sv(i + 1) < 1e-6 * sv(i)) {
      d.degenerate[i] = true;
      d.degenerate[i + 1] = true;
    }
  }

  d.retained_weight_fraction = total2 > 0.0 ? (total2 - err2) / total2 : 1.0;
  // SVD truncation error: || beta - sum_retained ||_F / || beta ||_F
  d.reconstruction_error = total2 > 0.0 ? std::sqrt(err2 / total2) : 0.0;
  return d;
}

ModeFunction2D Mode2DSpectrum::input_mode(int m, int n) const {
  return tensor_mode(input_1d.at(m), input_1d.at(n), m, n);
}

ModeFunction2D Mode2DSpectrum::output_mode(int m, int n) const {
  return tensor_mode(output_1d.at(m), output_1d.at(n), m, n);
}

Eigen::MatrixXd Mode2DSpectrum::product_weights() const {
  Eigen::VectorXd lambda(max_order + 1);
  for (int m = 0; m <= max_order; ++m) {
    const double g_m = (m < gains.rows()) ? std::sqrt(gains(m, m) * collinear_gain) : 0.0;
    lambda(m) = std::sinh(g_m) * std::sinh(g_m);
  }
  return lambda * lambda.transpose();
}

Eigen::VectorXd Mode2DSpectrum::flattened(const Eigen::MatrixXd& table) const {
  Eigen::VectorXd v(table.size());
  int k = 0;
  for (int m = 0; m < table.rows(); ++m)
    for (int n = 0; n < table.cols(); ++n) v(k++) = table(m, n);
  return v;
}

Mode2DSpectrum assemble_2d(const SchmidtDecomposition& d, int max_order) {
  if (max_order < 0) throw ConfigError("assemble_2d: max_order must be nonnegative");
  if (max_order >= d.size())
    throw ConfigError("assemble_2d: max_order exceeds the retained 1D mode count");
  if (d.collinear_gain <= 0.0)
    throw ConfigError("assemble_2d: collinear gain must be positive for the G_mn rule");

  Mode2DSpectrum s;
  s.grid = d.grid;
  s.collinear_gain = d.collinear_gain;
  s.max_order = max_order;
  s.input_1d.assign(d.input_modes.begin(), d.input_modes.begin() + max_order + 1);
  s.output_1d.assign(d.output_modes.begin(), d.output_modes.begin() + max_order + 1);
  s.gains.resize(max_order + 1, max_order + 1);
  s.weights.resize(max_order + 1, max_order + 1);
  for (int m = 0; m <= max_order; ++m) {
    for (int n = 0; n <= max_order; ++n) {
      const double g_mn = d.gains(m) * d.gains(n) / d.collinear_gain;
      s.gains(m, n) = g_mn;
      s.weights(m, n) = std::sinh(g_mn) * std::sinh(g_mn);
    }
  }
  return s;
}

double schmidt_number(const Eigen::VectorXd& weights) {
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    if (weights(i) < 0.0) throw ConfigError("schmidt_number: negative weight");
    sum += weights(i);
    sum2 += weights(i) * weights(i);
  }
  if (sum2 == 0.0) throw ConfigError("schmidt_number: undefined for all-zero weights");
  return sum * sum / sum2;
}

} // namespace msq
