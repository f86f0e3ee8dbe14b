#include "snc/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace snc {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool nearly_equal(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double half_log2_1p(double x) {
  if (std::isinf(x)) return kInfiniteRate;
  return 0.5 * std::log2(1.0 + x);
}

double half_log2_pos(double x) {
  if (x <= 1.0) return 0.0;
  if (std::isinf(x)) return kInfiniteRate;
  return 0.5 * std::log2(x);
}

double RateReport::sum() const {
  double s = 0.0;
  for (double r : per_user) s += r;
  return s;
}

bool RateReport::finite() const {
  for (double r : per_user)
    if (!std::isfinite(r)) return false;
  return true;
}

double no_feedback_sum_capacity(const BcSpec& spec) {
  return half_log2_1p(spec.power / std::min(spec.sigma1_sq, spec.sigma2_sq));
}

double hi_snr_sum_capacity(const BcSpec& spec) {
  if (spec.physically_degraded()) return no_feedback_sum_capacity(spec);
  if (std::abs(spec.rho_z) == 1.0) {
    return 0.5 * std::log2(spec.power / spec.sigma1_sq) +
           0.5 * std::log2(spec.power / spec.sigma2_sq);
  }
  const double gamma =
      power_offset(spec.sigma1_sq, spec.sigma2_sq, spec.rho_z);
  return 0.5 * std::log2(spec.power * gamma);
}

double power_offset(double s1, double s2, double rho) {
  require(s1 > 0.0 && s2 > 0.0, "variances must be positive");
  require(std::abs(rho) <= 1.0, "correlation must lie in [-1, 1]");
  if (std::abs(rho) == 1.0) {
    if (nearly_equal(s1, s2))
      throw std::domain_error(
          "power offset undefined at |rho| = 1 with equal variances");
    return std::numeric_limits<double>::infinity();
  }
  const double cross = std::sqrt(s1 * s2);
  return (s1 + s2 - 2.0 * rho * cross) / (s1 * s2 * (1.0 - rho * rho));
}

double cutset_two_cuts(const BcSpec& spec) {
  return half_log2_1p(spec.power / spec.sigma1_sq) +
         half_log2_1p(spec.power / spec.sigma2_sq);
}

double cutset_single_cut(const BcSpec& spec) {
  if (std::abs(spec.rho_z) == 1.0) return kInfiniteRate;
  const double gamma =
      power_offset(spec.sigma1_sq, spec.sigma2_sq, spec.rho_z);
  return half_log2_1p(spec.power * gamma);
}

std::pair<double, double> less_noisy_variances(const BcSpec& spec,
                                               const FeedbackNoiseSpec& fb) {
  require(fb.sigma_w1_sq > 0.0 && fb.sigma_w2_sq > 0.0,
          "feedback noise variances must be strictly positive");
  const double s1 = spec.sigma1_sq, s2 = spec.sigma2_sq;
  const double w1 = fb.sigma_w1_sq, w2 = fb.sigma_w2_sq;
  const double rho2 = spec.rho_z * spec.rho_z;
  const double den = (s1 + w1) * (s2 + w2) - s1 * s2 * rho2;
  const double var1 = s1 * (w1 * s2 * (1.0 - rho2) + w1 * w2) / den;
  const double var2 = s2 * (w2 * s1 * (1.0 - rho2) + w2 * w1) / den;
  return {var1, var2};
}

double less_noisy_sum_capacity(const BcSpec& spec,
                               const FeedbackNoiseSpec& fb) {
  const auto [v1, v2] = less_noisy_variances(spec, fb);
  return half_log2_1p(spec.power / std::min(v1, v2));
}

EtaTradeoff eta_tradeoff(double xi, double zeta) {
  require(xi > 0.0 && zeta > 0.0, "xi and zeta must be positive");
  if (1.0 + zeta >= xi) return {EtaOptimum::AtOne, half_log2_1p(zeta)};
  return {EtaOptimum::AtInfinity, 0.5 * std::log2(xi)};
}

std::pair<double, double> ic_cutset_bounds(const IcSpec& spec) {
  const double g1 = std::abs(spec.a11) + std::abs(spec.a12);
  const double g2 = std::abs(spec.a21) + std::abs(spec.a22);
  return {half_log2_1p(g1 * g1 * spec.power / spec.sigma1_sq),
          half_log2_1p(g2 * g2 * spec.power / spec.sigma2_sq)};
}

double ic_genie_mac_bound(const IcSpec& spec) {
  if (std::abs(spec.rho_z) == 1.0)
    throw std::domain_error(
        "genie bound requires |rho| < 1 (conditional variance is zero)");
  // Gaussian conditioning of Z1 on U = Z2 - c Z1 with c = a22/a12.
  const double c = spec.a22 / spec.a12;
  const double s1 = spec.sigma1_sq, s2 = spec.sigma2_sq;
  const double cross = spec.rho_z * spec.sigma1() * spec.sigma2();
  const double cov_z1_u = cross - c * s1;
  const double var_u = s2 + c * c * s1 - 2.0 * c * cross;
  const double cond_var = s1 - cov_z1_u * cov_z1_u / var_u;
  const double g = std::abs(spec.a11) + std::abs(spec.a12);
  return half_log2_1p(g * g * spec.power / cond_var);
}

ScheduleSpec::ScheduleSpec(int sign_, double zeta_, double eps_factor_)
    : sign(sign_), zeta(zeta_), eps_factor(eps_factor_) {
  require(sign == 1 || sign == -1, "schedule sign must be +1 or -1");
  require(zeta >= 0.0 && zeta <= 1.0, "zeta must lie in [0, 1]");
  require(eps_factor >= 0.0, "eps factor must be >= 0");
}

double ScheduleSpec::rho(double power) const {
  require(power > 0.0, "power must be positive");
  if (eps_factor == 0.0) return static_cast<double>(sign);
  const double r =
      static_cast<double>(sign) * (1.0 - eps_factor / std::pow(power, zeta));
  if (r < -1.0 || r > 1.0)
    throw std::domain_error("schedule leaves [-1, 1] at this power");
  return r;
}

double ScheduleSpec::zeta_minus() const {
  if (sign != -1) return 0.0;
  return eps_factor == 0.0 ? std::numeric_limits<double>::infinity() : zeta;
}

double ScheduleSpec::zeta_plus() const {
  if (sign != 1) return 0.0;
  return eps_factor == 0.0 ? std::numeric_limits<double>::infinity() : zeta;
}

namespace {

// delta recipe along a schedule: the partial-correlation expression for
// |rho| < 1, its continuous limit -rho sigma1/sigma2 at |rho| = 1.
double schedule_delta(double sigma1, double sigma2, double rho) {
  if (std::abs(rho) == 1.0) return -rho * sigma1 / sigma2;
  const double den = sigma2 - rho * sigma1;
  if (den == 0.0)
    throw std::domain_error("schedule hits the degraded correlation");
  return (sigma1 / sigma2) * (sigma1 - rho * sigma2) / den;
}

// q^2 coefficient of the power budget (the two one-step taps), written
// as a sum of squares so it stays nonnegative under rounding.
double budget_quad(double s1, double s2, double rho, double delta) {
  const double d2 = delta * delta;
  const double head = std::sqrt(s1) - d2 * rho * std::sqrt(s2);
  return head * head + d2 * d2 * s2 * (1.0 - rho * rho);
}

// Inner quadratic form of the q^4 coefficient, same rewrite.
double budget_form(double s1, double s2, double rho, double delta) {
  const double head = std::sqrt(s1) + delta * rho * std::sqrt(s2);
  return head * head + delta * delta * s2 * (1.0 - rho * rho);
}

// q^4 coefficient (the two two-step taps), without the q powers.
double budget_quart(double s1, double s2, double rho, double delta) {
  const double one_plus = 1.0 + delta;
  return one_plus * one_plus * delta * delta *
         budget_form(s1, s2, rho, delta);
}

}  // namespace

ScheduleParams schedule_params(double s1, double s2,
                               const ScheduleSpec& sched, double power,
                               double eps,
                               std::optional<bool> kappa_override) {
  require(s1 > 0.0 && s2 > 0.0, "variances must be positive");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  const double sigma1 = std::sqrt(s1), sigma2 = std::sqrt(s2);

  const bool equal_vars = nearly_equal(s1, s2);
  const bool tends_to_plus_one =
      sched.sign == 1 && (sched.eps_factor == 0.0 || sched.zeta > 0.0);
  if (equal_vars && tends_to_plus_one)
    throw std::domain_error(
        "no parameter choice for equal variances on a +1 schedule");

  ScheduleParams out;
  out.rho = sched.rho(power);
  if (std::abs(out.rho) < 1.0 &&
      BcSpec(s1, s2, out.rho, power).physically_degraded())
    throw std::domain_error("schedule hits the degraded correlation");
  out.delta = schedule_delta(sigma1, sigma2, out.rho);

  // Classify the growth of P * (quartic-term quadratic form) by sampling.
  const std::array<double, 4> probes = {1e3, 1e6, 1e9, 1e12};
  double vmax = 0.0;
  double vfirst = -1.0, vlast = -1.0;
  for (double p : probes) {
    const double r = sched.rho(p);
    const double d = schedule_delta(sigma1, sigma2, r);
    double v = p * budget_form(s1, s2, r, d);
    vmax = std::max(vmax, v);
    if (vfirst < 0.0) vfirst = v;
    vlast = v;
  }
  bool finite;
  if (kappa_override.has_value()) {
    finite = *kappa_override;
  } else if (vmax <= 1e-12 * std::max(s1, s2)) {
    finite = true;  // form vanishes along the schedule
  } else {
    const double slope = (std::log10(std::max(vlast, 1e-300)) -
                          std::log10(std::max(vfirst, 1e-300))) /
                         (std::log10(probes.back()) - std::log10(probes[0]));
    finite = slope <= 0.05;
  }
  out.kappa_finite = finite;
  out.kappa = finite ? vmax : std::numeric_limits<double>::infinity();

  if (!finite) {
    const double d = out.delta;
    const double form = budget_form(s1, s2, out.rho, d);
    out.q = std::pow(
        (1.0 - eps) * power / (d * d * (1.0 + d) * (1.0 + d) * form), 0.25);
  } else {
    // beta solves s1 c^2 beta (1 + beta kappa / s2) = 1 with
    // c = 1 + sigma1/sigma2 on a -1 schedule, 1 - sigma1/sigma2 on a +1
    // schedule (the latter needs unequal variances). Unique positive root.
    const double c = (sched.sign == -1) ? (1.0 + sigma1 / sigma2)
                                        : (1.0 - sigma1 / sigma2);
    const double a2 = s1 * c * c * out.kappa / s2;
    const double a1 = s1 * c * c;
    double beta;
    if (a2 <= 1e-300) {
      beta = 1.0 / a1;
    } else {
      beta = (-a1 + std::sqrt(a1 * a1 + 4.0 * a2)) / (2.0 * a2);
    }
    out.q = std::sqrt(beta * (1.0 - eps) * power);
  }

  const double quad = budget_quad(s1, s2, out.rho, out.delta);
  const double quart = budget_quart(s1, s2, out.rho, out.delta);
  out.power_lhs =
      quad * out.q * out.q + quart * out.q * out.q * out.q * out.q;
  out.feasible = out.power_lhs <= power * (1.0 + 1e-9);
  return out;
}

std::optional<double> schedule_power_threshold(double s1, double s2,
                                               const ScheduleSpec& sched,
                                               double eps, double p_max) {
  auto feasible_at = [&](double p) {
    try {
      return schedule_params(s1, s2, sched, p, eps).feasible;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  // Small powers can be spuriously feasible before the budget tightens,
  // so locate the last infeasible point of a log scan and refine beyond
  // it.
  double last_bad = -1.0, first_good_after = -1.0;
  for (double p = 1.0; p <= p_max; p *= 2.0) {
    if (feasible_at(p)) {
      if (first_good_after < 0.0) first_good_after = p;
    } else {
      last_bad = p;
      first_good_after = -1.0;
    }
  }
  if (last_bad < 0.0) return 1.0;
  if (first_good_after < 0.0) return std::nullopt;
  double lo = last_bad, hi = first_good_after;
  for (int i = 0; i < 60 && hi / lo > 1.001; ++i) {
    const double mid = std::sqrt(lo * hi);
    (feasible_at(mid) ? hi : lo) = mid;
  }
  return hi;
}

double prelog_estimate(const std::function<double(double)>& rate_fn,
                       std::span<const double> p_grid) {
  require(p_grid.size() >= 2, "need at least two grid points");
  for (size_t i = 0; i < p_grid.size(); ++i) {
    require(p_grid[i] > 0.0, "powers must be positive");
    if (i > 0) require(p_grid[i] > p_grid[i - 1], "grid must be increasing");
  }
  const size_t n = p_grid.size();
  std::vector<double> x(n), y(n);
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    x[i] = half_log2_1p(p_grid[i]);
    y[i] = rate_fn(p_grid[i]);
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace snc
