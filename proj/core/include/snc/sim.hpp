#pragma once

#include <cstdint>

#include "snc/channel.hpp"
#include "snc/scheme.hpp"

namespace snc {

struct TrialResult {
  Eigen::VectorXd outputs;  // combined output per user
  Eigen::VectorXd symbols;
  Eigen::VectorXd energy;  // realized block energy per transmitter
};

// Runs one eta-block with freshly sampled noise. Inputs are formed
// causally: the symbol sent at time t depends only on noise samples
// strictly before t. Symbols must satisfy |x| <= 10 (unit second moment
// with bounded support).
TrialResult simulate_block(const BlockScheme& scheme,
                           const NoiseCovariance& cov,
                           const Eigen::VectorXd& symbols,
                           std::uint64_t seed);

// Same with caller-provided noise (cov dim x eta); test hook.
TrialResult simulate_block_with_noise(const BlockScheme& scheme,
                                      const NoiseCovariance& cov,
                                      const Eigen::MatrixXd& noise,
                                      const Eigen::VectorXd& symbols);

struct SimSummary {
  long trials = 0;
  int eta = 0;
  int users = 0;
  Eigen::VectorXd gain_hat, gain_se;
  Eigen::VectorXd resid_var_hat, resid_var_se;
  Eigen::VectorXd gain_analytic, resid_var_analytic;
  Eigen::VectorXd mean_power;  // per transmitter
  double power_budget = 0;     // eta * P per transmitter
  bool estimates_ok = false;   // all within three standard errors
  bool power_ok = false;       // mean power within 1% of the budget
};

// Monte-Carlo verification of a scheme against its analytic equivalent
// channel: least-squares gain estimates, residual variances, and the
// realized power, all from trials keyed by (seed, trial index).
SimSummary run_sim(const BlockScheme& scheme, const NoiseCovariance& cov,
                   long trials, std::uint64_t seed);

struct EmpiricalRate {
  Eigen::VectorXd rate, lo, hi;  // 99% confidence band, bits per use
};

EmpiricalRate empirical_rate(const SimSummary& summary);

}  // namespace snc
