#include "msq/gaussian.hpp"

#include <cmath>

namespace msq {

namespace {

void check_state(const ModeGaussianState& s) {
  if (s.g_sq < 0.0) throw ConfigError("ModeGaussianState: g_sq must be nonnegative");
  if (s.kappa2 < 0.0 || s.kappa2 > 1.0) throw ConfigError("ModeGaussianState: kappa2 must be in [0, 1]");
  if (s.extra_loss <= 0.0 || s.extra_loss > 1.0)
    throw ConfigError("ModeGaussianState: extra_loss must be in (0, 1]");
}

struct Cov2 {
  double xx, xp, pp;
};

Cov2 cascade_covariance(double g_sq, double amplifier_gain, double phi, double eta_mid) {
  // squeezer: vacuum -> diag(e^{-2g}, e^{+2g})
  Cov2 v{std::exp(-2.0 * g_sq), 0.0, std::exp(2.0 * g_sq)};
  // mid-chain transmission
  v.xx = eta_mid * v.xx + (1.0 - eta_mid);
  v.pp = eta_mid * v.pp + (1.0 - eta_mid);
  v.xp *= eta_mid;
  // pump phase phi rotates the amplified quadrature by phi/2
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  const Cov2 r{c * c * v.xx - 2.0 * c * s * v.xp + s * s * v.pp,
               c * s * (v.xx - v.pp) + (c * c - s * s) * v.xp,
               s * s * v.xx + 2.0 * c * s * v.xp + c * c * v.pp};
  // amplifier: x -> e^{G} x, p -> e^{-G} p
  const double eg = std::exp(amplifier_gain);
  return {eg * eg * r.xx, r.xp, r.pp / (eg * eg)};
}

} // namespace

double detectable_squeezing_db(const ModeGaussianState& state) {
  check_state(state);
  const double k = state.effective_kappa2();
  return linear_to_db(std::exp(-2.0 * state.g_sq) * k + (1.0 - k));
}

double antisqueezing_db(const ModeGaussianState& state) {
  check_state(state);
  const double k = state.effective_kappa2();
  return linear_to_db(std::exp(2.0 * state.g_sq) * k + (1.0 - k));
}

double purity(double squeezing_db, double antisqueezing_db) {
  const double vs = db_to_linear(squeezing_db);
  const double va = db_to_linear(antisqueezing_db);
  const double product = vs * va;
  if (product < 1.0 - 1e-12)
    throw PhysicsError("purity: V_s * V_a < 1 violates the uncertainty relation");
  return 1.0 / std::sqrt(std::max(product, 1.0));
}

double cascade_intensity(double g_sq, double amplifier_gain, double phi, double eta_mid) {
  if (g_sq < 0.0 || amplifier_gain < 0.0)
    throw ConfigError("cascade_intensity: gains must be nonnegative");
  if (eta_mid <= 0.0 || eta_mid > 1.0)
    throw ConfigError("cascade_intensity: eta_mid must be in (0, 1]");
  const Cov2 v = cascade_covariance(g_sq, amplifier_gain, phi, eta_mid);
  return (v.xx + v.pp - 2.0) / 4.0;
}

double eq1_limit_variance(const ModeGaussianState& state, double phi) {
  const double k = state.effective_kappa2();
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  return k * (c * c * std::exp(-2.0 * state.g_sq) + s * s * std::exp(2.0 * state.g_sq)) + (1.0 - k);
}

PhaseTrace phase_trace(const std::vector<ModeGaussianState>& states, const MopaConfig& mopa,
                       const Eigen::VectorXd& phases) {
  return phase_trace(states, mopa, phases, {});
}

PhaseTrace phase_trace(const std::vector<ModeGaussianState>& states, const MopaConfig& mopa,
                       const Eigen::VectorXd& phases, const std::vector<double>& amplifier_gains) {
  if (phases.size() < 1) throw ConfigError("phase_trace: need at least one phase sample");
  if (mopa.readout_loss <= 0.0 || mopa.readout_loss > 1.0)
    throw ConfigError("phase_trace: readout_loss must be in (0, 1]");
  if (!amplifier_gains.empty() && amplifier_gains.size() != states.size())
    throw ConfigError("phase_trace: amplifier gain list does not match the mode list");

  PhaseTrace t;
  t.phases = phases;
  t.states = states;
  t.db.resize(static_cast<int>(states.size()), phases.size());
  t.detected_intensity.resize(static_cast<int>(states.size()), phases.size());
  t.vacuum_intensity = mopa.readout_loss * std::sinh(mopa.gain) * std::sinh(mopa.gain);

  for (size_t i = 0; i < states.size(); ++i) {
    check_state(states[i]);
    const double gain = amplifier_gains.empty() ? mopa.gain : amplifier_gains[i];
    const double n_vac = std::sinh(gain) * std::sinh(gain);
    for (int j = 0; j < phases.size(); ++j) {
      const double phi = mopa.phase + phases(j);
      const double n_sig = cascade_intensity(states[i].g_sq, gain, phi, states[i].effective_kappa2());
      const double ratio = n_sig / n_vac; // readout loss cancels identically here
      t.db(static_cast<int>(i), j) = linear_to_db(ratio);
      t.detected_intensity(static_cast<int>(i), j) = mopa.readout_loss * n_sig;
      const double limit = eq1_limit_variance(states[i], phi);
      const double dev = std::abs(ratio - limit) / limit;
      t.max_finite_gain_deviation = std::max(t.max_finite_gain_deviation, dev);
    }
  }
  t.finite_gain_warning = t.max_finite_gain_deviation > 0.01;
  return t;
}

SqueezingBand squeezing_band(const ModeGaussianState& state, double delta_abs) {
  ModeGaussianState lo = state, hi = state;
  lo.g_sq = std::max(0.0, state.g_sq - delta_abs);
  hi.g_sq = state.g_sq + delta_abs;
  return {detectable_squeezing_db(lo), detectable_squeezing_db(hi)};
}

SqueezingBand antisqueezing_band(const ModeGaussianState& state, double delta_abs) {
  ModeGaussianState lo = state, hi = state;
  lo.g_sq = std::max(0.0, state.g_sq - delta_abs);
  hi.g_sq = state.g_sq + delta_abs;
  return {antisqueezing_db(lo), antisqueezing_db(hi)};
}

} // namespace msq
