#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snc/channel.hpp"

namespace snc {

// Rates are in bits per channel use; all logarithms are base 2. An
// infinite rate is a deliberate value (the -log 0 = inf convention),
// never the result of overflow.
inline constexpr double kInfiniteRate =
    std::numeric_limits<double>::infinity();

// 1/2 log2(1 + x), the Gaussian-channel rate at SNR x.
double half_log2_1p(double x);
// 1/2 max{0, log2 x}; zero for x <= 0.
double half_log2_pos(double x);

struct RateReport {
  std::vector<double> per_user;
  std::string scheme;

  double sum() const;
  bool finite() const;
};

// Sum capacity without feedback (also the capacity with feedback when
// the channel is physically degraded).
double no_feedback_sum_capacity(const BcSpec& spec);

// High-SNR sum capacity with noise-free feedback: the no-feedback value
// when degraded, the sum of the two single-user log terms at full
// correlation, and the full-cooperation log term otherwise.
double hi_snr_sum_capacity(const BcSpec& spec);

// Effective SNR multiplier of the full-cooperation sum capacity at high
// SNR, defined for |rho| < 1. Diverges toward either endpoint when the
// variances differ; rejected at |rho| = 1 with equal variances.
double power_offset(double sigma1_sq, double sigma2_sq, double rho);

// Sum of the two single-user capacities (one cut per receiver).
double cutset_two_cuts(const BcSpec& spec);
// Full-cooperation bound (a single cut around the transmitter);
// infinite at |rho| = 1.
double cutset_single_cut(const BcSpec& spec);

// Variances of the residual noises once the transmitter-side genie
// information has been conditioned out. Requires strictly positive
// feedback-noise variances.
std::pair<double, double> less_noisy_variances(const BcSpec& spec,
                                               const FeedbackNoiseSpec& fb);
// Sum capacity of the reduced-noise channel; upper-bounds the
// noisy-feedback sum capacity.
double less_noisy_sum_capacity(const BcSpec& spec,
                               const FeedbackNoiseSpec& fb);

enum class EtaOptimum { AtOne, AtInfinity };

struct EtaTradeoff {
  EtaOptimum where;
  double value;
};

// Supremum of eta -> 1/(2 eta) log2(1 + xi^(eta-1) zeta) over positive
// integers: attained at eta = 1 when 1 + zeta >= xi, approached as
// eta -> infinity otherwise.
EtaTradeoff eta_tradeoff(double xi, double zeta);

// Per-user cut-set bounds for the interference channel.
std::pair<double, double> ic_cutset_bounds(const IcSpec& spec);

// Genie-plus-MAC sum-rate bound for the interference channel; valid for
// |rho| < 1, where the conditional noise variance is positive.
double ic_genie_mac_bound(const IcSpec& spec);

// Correlation-versus-power family rho(P) = sign * (1 - eps_factor *
// P^-zeta). eps_factor = 0 encodes the constant schedules rho = +-1.
struct ScheduleSpec {
  int sign;
  double zeta;
  double eps_factor;

  ScheduleSpec(int sign, double zeta, double eps_factor);

  double rho(double power) const;
  // Growth exponents of -log(1 + rho(P)) and -log(1 - rho(P)) against
  // log P (infinite for the exact constant +-1 schedules).
  double zeta_minus() const;
  double zeta_plus() const;
};

struct ScheduleParams {
  double delta = 0;
  double q = 0;
  double rho = 0;
  // Growth limit of P times the quartic-term noise quadratic form along
  // the schedule; decides which q recipe applies.
  double kappa = 0;
  bool kappa_finite = false;
  bool feasible = false;  // power budget holds at the requested power
  double power_lhs = 0;
};

// Parameter schedule for the two-tap scheme along a correlation family.
// The kappa classification samples the growth numerically at
// P in {1e3, 1e6, 1e9, 1e12}; callers may override it.
ScheduleParams schedule_params(double sigma1_sq, double sigma2_sq,
                               const ScheduleSpec& sched, double power,
                               double eps,
                               std::optional<bool> kappa_finite_override = {});

// Smallest power at which schedule_params turns feasible (log-scan plus
// bisection); nullopt if none is found up to the search cap.
std::optional<double> schedule_power_threshold(double sigma1_sq,
                                               double sigma2_sq,
                                               const ScheduleSpec& sched,
                                               double eps,
                                               double p_max = 1e12);

// Least-squares slope of rate_fn(P) against 1/2 log2(1 + P).
double prelog_estimate(const std::function<double(double)>& rate_fn,
                       std::span<const double> p_grid);

}  // namespace snc
