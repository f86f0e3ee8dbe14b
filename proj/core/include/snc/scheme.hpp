#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "snc/channel.hpp"
#include "snc/rates.hpp"

namespace snc {

// Parameters of the two-tap broadcast feedback recursion: a one-step
// tap a_k and a two-step tap b_k per user, all derived from (delta, q).
struct SchemeParams {
  double delta = 0;
  double q = 0;
  int eta = 1;

  double a1() const { return q; }
  double a2() const { return -delta * delta * q; }
  double b1() const { return -delta * (1.0 + delta) * q * q; }
  double b2() const { return -delta * delta * (1.0 + delta) * q * q; }
};

// Left-hand side of the per-block power budget for the two-tap
// recursion (quadratic plus quartic in q).
double bc2_power_lhs(const BcSpec& spec, double delta, double q);
// Largest q meeting the budget with equality for a given delta.
double bc2_max_q(const BcSpec& spec, double delta);
bool bc2_params_feasible(const BcSpec& spec, const SchemeParams& params,
                         double rel_slack = 1e-9);

struct ParamChoice {
  SchemeParams params;
  bool feasible = false;
  double power_lhs = 0;
};

// Closed-form (delta, q) for partially correlated, non-degraded noises;
// feasible whenever the power exceeds a finite threshold.
ParamChoice bc2_partial_corr_params(const BcSpec& spec, double eps);
// That threshold, in closed form.
double bc2_partial_corr_power_threshold(const BcSpec& spec, double eps);

// Closed-form (delta, q) for fully correlated, non-degraded noises;
// meets the power budget with equality at every power.
ParamChoice bc2_fullcorr_params(const BcSpec& spec);

enum class SchemeModel { P2P, Bc2, Bc2FullCorr, KUser, Ic };

// One eta-block linear feedback scheme. U holds the signaling vectors
// (one column per information symbol), v the receive combiners, and B
// the strictly lower-triangular feedback taps. The meaning of B depends
// on the model:
//   P2P          one matrix applied to the receiver noise
//   Bc2          one matrix per receiver noise sequence
//   Bc2FullCorr  one matrix applied to receiver 1's noise
//   KUser        per-user matrices whose alpha-weighted sum feeds back
//                the shared standardized noise
//   Ic           one matrix per transmitter (applied to its feedback)
struct BlockScheme {
  SchemeModel model = SchemeModel::P2P;
  int eta = 0;
  int users = 0;
  double power = 0;  // per-transmitter block budget
  Eigen::MatrixXd U;
  std::vector<Eigen::VectorXd> v;
  std::vector<Eigen::MatrixXd> B;
  std::optional<IcSpec> ic;
  std::optional<SchemeParams> params;
};

BlockScheme build_p2p_scheme(double power, double sigma_sq, int eta);
BlockScheme build_bc2_scheme(const BcSpec& spec, const SchemeParams& params);
BlockScheme build_bc2_fullcorr_scheme(const BcSpec& spec, int eta);
BlockScheme build_kuser_scheme(const KUserSpec& spec, int eta);
BlockScheme build_ic_scheme(const IcSpec& spec, int eta);

// The one-shot channel induced by an eta-block: exact coefficients of
// every information symbol and of every noise sample in each receiver's
// combined output, obtained by direct matrix algebra.
struct EquivalentChannel {
  int eta = 0;
  int users = 0;
  int noise_rows = 0;
  Eigen::MatrixXd xi_coeff;                  // users x users
  std::vector<Eigen::MatrixXd> noise_coeff;  // per user: noise_rows x eta
  Eigen::MatrixXd residual_cov;              // users x users
  Eigen::VectorXd gain;                      // own-symbol coefficient
  Eigen::VectorXd snr;
  Eigen::VectorXd rate;  // per user, bits per original channel use
};

EquivalentChannel equivalent_channel(const BlockScheme& scheme,
                                     const NoiseCovariance& cov);

// Largest leftover coefficient (relative to the output's scale) on the
// cross information symbols and on the noise samples the scheme is
// supposed to cancel.
struct CancellationReport {
  double max_interference_rel = 0;
  double max_canceled_noise_rel = 0;

  bool pass(double tol = 1e-10) const {
    return max_interference_rel <= tol && max_canceled_noise_rel <= tol;
  }
};

CancellationReport check_cancellation(const BlockScheme& scheme,
                                      const EquivalentChannel& eq);

// Expected block energy spent by each transmitter.
Eigen::VectorXd block_power(const BlockScheme& scheme,
                            const NoiseCovariance& cov);

RateReport p2p_finite_rate(double power, double sigma_sq, int eta);

// Finite-block rates of the two-user scheme. `exact` uses the full
// residual-noise variance; `uncorrelated` drops the cross covariance of
// the two surviving same-time noise samples. The two coincide whenever
// that covariance vanishes. For eta >= 2 the exact form equals the rate
// of the induced one-shot channel; a single use leaves the cross symbol
// uncanceled, so the eta = 1 value is only the formula's extrapolation.
struct Bc2FiniteRates {
  RateReport exact;
  RateReport uncorrelated;
  double max_rel_difference = 0;

  bool agrees(double tol = 1e-9) const { return max_rel_difference <= tol; }
};

Bc2FiniteRates bc2_finite_rates(const BcSpec& spec,
                                const SchemeParams& params);

// Finite-block rates at the full-correlation parameter choice.
RateReport bc2_fullcorr_finite_rates(const BcSpec& spec, int eta);
// Finite-block rates of the two-symbol warm-up scheme for fully
// correlated noises.
RateReport bc2_fullcorr_motivation_rates(const BcSpec& spec, int eta);

RateReport kuser_finite_rates(const KUserSpec& spec, int eta);
RateReport ic_finite_rates(const IcSpec& spec, int eta);

// Large-block rate envelopes.
RateReport bc2_limit_rates(const BcSpec& spec, const SchemeParams& params);
RateReport bc2_partial_corr_limit_rates(const BcSpec& spec, double eps);
RateReport bc2_fullcorr_limit_rates(const BcSpec& spec);
RateReport kuser_limit_rates(const KUserSpec& spec);
RateReport ic_limit_rates(const IcSpec& spec);
// Same with the transmitter roles exchanged.
RateReport ic_limit_rates_swapped(const IcSpec& spec);

struct Bc2SumRateOpt {
  std::optional<SchemeParams> params;
  double sum = 0;
  bool used_fallback = false;  // no feasible choice beat no-feedback operation
};

// Deterministic search over (delta, q) for the best large-block sum rate
// under the power budget; never returns less than the closed-form
// choices when those are feasible.
Bc2SumRateOpt optimize_bc2_sum_rate(const BcSpec& spec);

// Unit projection directions for the K-user scheme: w_k is orthogonal to
// the flipped-node Vandermonde vectors of every other user. signal[k] is
// the inner product of w_k with its own Vandermonde vector.
struct KUserProjection {
  Eigen::MatrixXd w;       // K x K, column k = w_k
  Eigen::VectorXd signal;  // K
};

KUserProjection kuser_projection(const std::vector<double>& alphas);

}  // namespace snc
