#include "snc/sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "snc/rng.hpp"

namespace snc {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr double kSymbolCap = 10.0;
constexpr double kZ99 = 2.5758293035489004;  // 99% two-sided normal quantile

// One causal pass of the coupled interference recursion: both inputs
// advance together time step by time step.
void ic_inputs(const BlockScheme& s, const Eigen::VectorXd& z1,
               const Eigen::VectorXd& z2, const Eigen::VectorXd& symbols,
               Eigen::VectorXd& x1, Eigen::VectorXd& x2) {
  const IcSpec& ic = *s.ic;
  const int eta = s.eta;
  x1.setZero(eta);
  x2.setZero(eta);
  for (int t = 0; t < eta; ++t) {
    double fb1 = 0.0, fb2 = 0.0;
    for (int j = 0; j < t; ++j) {
      fb1 += s.B[0](t, j) * (ic.a12 * x2(j) + z1(j));
      fb2 += s.B[1](t, j) * (ic.a21 * x1(j) + z2(j));
    }
    x1(t) = s.U(t, 0) * symbols(0) + fb1;
    x2(t) = s.U(t, 1) * symbols(1) + fb2;
  }
}

}  // namespace

TrialResult simulate_block_with_noise(const BlockScheme& s,
                                      const NoiseCovariance& cov,
                                      const Eigen::MatrixXd& noise,
                                      const Eigen::VectorXd& symbols) {
  require(symbols.size() == s.users, "one symbol per user expected");
  require(symbols.cwiseAbs().maxCoeff() <= kSymbolCap,
          "symbol exceeds the bounded-support cap");
  require(noise.rows() == cov.dim() && noise.cols() == s.eta,
          "noise must be (cov dim) x eta");

  const int eta = s.eta;
  TrialResult out;
  out.symbols = symbols;

  switch (s.model) {
    case SchemeModel::P2P: {
      Eigen::VectorXd z = noise.row(0);
      Eigen::VectorXd x = s.U.col(0) * symbols(0) + s.B[0] * z;
      Eigen::VectorXd y = x + z;
      out.outputs = Eigen::VectorXd::Constant(1, s.v[0].dot(y));
      out.energy = Eigen::VectorXd::Constant(1, x.squaredNorm());
      return out;
    }
    case SchemeModel::Bc2: {
      Eigen::VectorXd z1 = noise.row(0), z2 = noise.row(1);
      Eigen::VectorXd x =
          s.U.col(0) * symbols(0) + s.U.col(1) * symbols(1) + s.B[0] * z1 +
          s.B[1] * z2;
      out.outputs = Eigen::VectorXd(2);
      out.outputs(0) = s.v[0].dot(x + z1);
      out.outputs(1) = s.v[1].dot(x + z2);
      out.energy = Eigen::VectorXd::Constant(1, x.squaredNorm());
      return out;
    }
    case SchemeModel::Bc2FullCorr: {
      Eigen::VectorXd z1 = noise.row(0), z2 = noise.row(1);
      Eigen::VectorXd x =
          s.U.col(0) * symbols(0) + s.U.col(1) * symbols(1) + s.B[0] * z1;
      out.outputs = Eigen::VectorXd(2);
      out.outputs(0) = s.v[0].dot(x + z1);
      out.outputs(1) = s.v[1].dot(x + z2);
      out.energy = Eigen::VectorXd::Constant(1, x.squaredNorm());
      return out;
    }
    case SchemeModel::KUser: {
      // The transmitter retransmits the shared standardized noise,
      // recovered from receiver 1's feedback.
      const double alpha1 = cov.rank_one_factor()(0);
      Eigen::VectorXd zt = noise.row(0) / alpha1;
      Eigen::MatrixXd f = Eigen::MatrixXd::Zero(eta, eta);
      for (int k = 0; k < s.users; ++k)
        f += cov.rank_one_factor()(k) * s.B[static_cast<size_t>(k)];
      Eigen::VectorXd x = f * zt;
      for (int k = 0; k < s.users; ++k) x += s.U.col(k) * symbols(k);
      out.outputs = Eigen::VectorXd(s.users);
      for (int k = 0; k < s.users; ++k)
        out.outputs(k) =
            s.v[static_cast<size_t>(k)].dot(x + noise.row(k).transpose());
      out.energy = Eigen::VectorXd::Constant(1, x.squaredNorm());
      return out;
    }
    case SchemeModel::Ic: {
      const IcSpec& ic = *s.ic;
      Eigen::VectorXd z1 = noise.row(0), z2 = noise.row(1);
      Eigen::VectorXd x1, x2;
      ic_inputs(s, z1, z2, symbols, x1, x2);
      out.outputs = Eigen::VectorXd(2);
      out.outputs(0) = s.v[0].dot(ic.a11 * x1 + ic.a12 * x2 + z1);
      out.outputs(1) = s.v[1].dot(ic.a21 * x1 + ic.a22 * x2 + z2);
      out.energy = Eigen::VectorXd(2);
      out.energy(0) = x1.squaredNorm();
      out.energy(1) = x2.squaredNorm();
      return out;
    }
  }
  throw std::logic_error("unknown scheme model");
}

TrialResult simulate_block(const BlockScheme& s, const NoiseCovariance& cov,
                           const Eigen::VectorXd& symbols,
                           std::uint64_t seed) {
  const Eigen::MatrixXd noise = cov.sample(s.eta, seed).transpose();
  return simulate_block_with_noise(s, cov, noise, symbols);
}

SimSummary run_sim(const BlockScheme& s, const NoiseCovariance& cov,
                   long trials, std::uint64_t seed) {
  require(trials >= 1, "need at least one trial");
  const EquivalentChannel eq = equivalent_channel(s, cov);
  const int users = s.users;
  const int tx = (s.model == SchemeModel::Ic) ? 2 : 1;
  const double root3 = std::sqrt(3.0);

  Eigen::VectorXd sxx = Eigen::VectorXd::Zero(users);
  Eigen::VectorXd sxy = Eigen::VectorXd::Zero(users);
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(tx);

  // Trials are kept so the residual pass can subtract the fitted signal
  // sample by sample; a single-pass sum of squares loses the residual
  // entirely once the gains are large.
  Eigen::MatrixXd xs(trials, users), ys(trials, users);

  Eigen::VectorXd symbols(users);
  for (long i = 0; i < trials; ++i) {
    SplitMix64 sym_eng = substream(seed, 2 * static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> uni(-root3, root3);
    for (int k = 0; k < users; ++k) symbols(k) = uni(sym_eng);
    const std::uint64_t noise_seed =
        substream(seed, 2 * static_cast<std::uint64_t>(i) + 1)();
    const TrialResult trial = simulate_block(s, cov, symbols, noise_seed);
    for (int k = 0; k < users; ++k) {
      sxx(k) += symbols(k) * symbols(k);
      sxy(k) += symbols(k) * trial.outputs(k);
      xs(i, k) = symbols(k);
      ys(i, k) = trial.outputs(k);
    }
    energy += trial.energy;
  }

  SimSummary sum;
  sum.trials = trials;
  sum.eta = s.eta;
  sum.users = users;
  sum.gain_hat = Eigen::VectorXd(users);
  sum.gain_se = Eigen::VectorXd(users);
  sum.resid_var_hat = Eigen::VectorXd(users);
  sum.resid_var_se = Eigen::VectorXd(users);
  sum.gain_analytic = eq.gain;
  sum.resid_var_analytic = eq.residual_cov.diagonal();
  sum.mean_power = energy / static_cast<double>(trials);
  sum.power_budget = s.eta * s.power;

  bool ok = true;
  for (int k = 0; k < users; ++k) {
    const double g = sxy(k) / sxx(k);
    double ss_resid = 0.0;
    for (long i = 0; i < trials; ++i) {
      const double r = ys(i, k) - g * xs(i, k);
      ss_resid += r * r;
    }
    const double var = ss_resid / static_cast<double>(trials - 1);
    sum.gain_hat(k) = g;
    sum.resid_var_hat(k) = var;
    sum.gain_se(k) = std::sqrt(var / sxx(k));
    sum.resid_var_se(k) =
        var * std::sqrt(2.0 / static_cast<double>(trials - 1));
    if (std::abs(g - eq.gain(k)) > 3.0 * sum.gain_se(k)) ok = false;
    if (std::abs(var - eq.residual_cov(k, k)) > 3.0 * sum.resid_var_se(k))
      ok = false;
  }
  sum.estimates_ok = ok;
  sum.power_ok = (sum.mean_power.maxCoeff() <= sum.power_budget * 1.01);
  return sum;
}

EmpiricalRate empirical_rate(const SimSummary& summary) {
  const int users = summary.users;
  EmpiricalRate out;
  out.rate = Eigen::VectorXd(users);
  out.lo = Eigen::VectorXd(users);
  out.hi = Eigen::VectorXd(users);
  for (int k = 0; k < users; ++k) {
    const double g = std::abs(summary.gain_hat(k));
    const double v = summary.resid_var_hat(k);
    const double g_lo = std::max(0.0, g - kZ99 * summary.gain_se(k));
    const double g_hi = g + kZ99 * summary.gain_se(k);
    const double v_lo = std::max(1e-300, v - kZ99 * summary.resid_var_se(k));
    const double v_hi = v + kZ99 * summary.resid_var_se(k);
    out.rate(k) = half_log2_1p(g * g / v) / summary.eta;
    out.lo(k) = half_log2_1p(g_lo * g_lo / v_hi) / summary.eta;
    out.hi(k) = half_log2_1p(g_hi * g_hi / v_lo) / summary.eta;
  }
  return out;
}

}  // namespace snc
