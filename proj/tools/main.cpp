// Command-line front end: closed-form rates and bounds, scheme
// verification, Monte-Carlo simulation, and CSV sweep data.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <snc/channel.hpp>
#include <snc/rates.hpp>
#include <snc/scheme.hpp>
#include <snc/sim.hpp>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

// 12 significant digits, '.' decimal separator; infinities spelled out.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << body;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SNC_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 12345;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (points < 1 || lo <= 0 || hi < lo)
    throw std::invalid_argument("bad grid specification");
  std::vector<double> g;
  if (points == 1) {
    g.push_back(lo);
    return g;
  }
  for (int i = 0; i < points; ++i)
    g.push_back(lo * std::pow(hi / lo, double(i) / (points - 1)));
  return g;
}

struct ModelFlags {
  std::vector<double> p;
  double s1 = 1.0, s2 = 1.0, rho = 0.0;
  std::vector<double> rho_list;
  std::vector<double> alphas;
  std::vector<double> gains;
  int eta = 0;
  double eps = 0.1;
  double delta = 0.0, q = 0.0;
  bool has_delta = false, has_q = false;
  long trials = 0;
  std::uint64_t seed = default_seed();
  double sw1 = 0.0, sw2 = 0.0;
  std::string out;
};

void add_common(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--p", f.p, "power grid")->delimiter(',');
  cmd->add_option("--s1", f.s1, "noise variance at receiver 1");
  cmd->add_option("--s2", f.s2, "noise variance at receiver 2");
  cmd->add_option("--rho", f.rho_list, "noise correlation(s)")->delimiter(',');
  cmd->add_option("--alphas", f.alphas, "signed deviations, rank-one model")
      ->delimiter(',');
  cmd->add_option("--gains", f.gains, "a11,a12,a21,a22")->delimiter(',');
  cmd->add_option("--eta", f.eta, "block length");
  cmd->add_option("--eps", f.eps, "power margin in (0,1)");
  cmd->add_option("--delta", f.delta, "two-tap delta")
      ->each([&f](const std::string&) { f.has_delta = true; });
  cmd->add_option("--q", f.q, "two-tap q")->each([&f](const std::string&) {
    f.has_q = true;
  });
  cmd->add_option("--sw1", f.sw1, "feedback noise variance, link 1");
  cmd->add_option("--sw2", f.sw2, "feedback noise variance, link 2");
  cmd->add_option("--trials", f.trials, "Monte-Carlo trials");
  cmd->add_option("--seed", f.seed, "master seed (env SNC_SEED)");
  cmd->add_option("--out", f.out, "output path (default stdout)");
}

double first_rho(const ModelFlags& f) {
  return f.rho_list.empty() ? 0.0 : f.rho_list.front();
}

// ---------------------------------------------------------------------
// rates

std::string rates_bc2(const ModelFlags& f) {
  if (f.p.empty()) throw std::invalid_argument("empty power grid");
  std::ostringstream os;
  os << "p,s1_sq,s2_sq,rho,degraded,full_corr,no_feedback_sum,hi_snr_sum,"
        "cutset_two_cuts,cutset_single_cut,opt_sum,opt_delta,opt_q,"
        "opt_fallback,fullcorr_r1,fullcorr_r2,partial_sum,partial_p0\n";
  std::vector<double> rhos = f.rho_list.empty()
                                 ? std::vector<double>{0.0}
                                 : f.rho_list;
  for (double p : f.p)
    for (double rho : rhos) {
      snc::BcSpec spec(f.s1, f.s2, rho, p);
      const bool degraded = spec.physically_degraded();
      const bool full = std::abs(rho) == 1.0;
      // feedback is useless on a degraded channel; at full correlation
      // the search itself is undefined, so report plain operation
      snc::Bc2SumRateOpt opt;
      if (full && degraded) {
        opt.sum = snc::no_feedback_sum_capacity(spec);
        opt.used_fallback = true;
      } else {
        opt = snc::optimize_bc2_sum_rate(spec);
      }
      double fc1 = std::nan(""), fc2 = std::nan(""), partial = std::nan("");
      if (full && !degraded) {
        auto r = snc::bc2_fullcorr_limit_rates(spec);
        fc1 = r.per_user[0];
        fc2 = r.per_user[1];
      }
      double partial_p0 = std::nan("");
      if (!full && !degraded) {
        auto choice = snc::bc2_partial_corr_params(spec, f.eps);
        if (choice.feasible)
          partial = snc::bc2_limit_rates(spec, choice.params).sum();
        partial_p0 = snc::bc2_partial_corr_power_threshold(spec, f.eps);
      }
      os << fmt(p) << ',' << fmt(f.s1) << ',' << fmt(f.s2) << ',' << fmt(rho)
         << ',' << (degraded ? 1 : 0) << ',' << (full ? 1 : 0) << ','
         << fmt(snc::no_feedback_sum_capacity(spec)) << ','
         << fmt(snc::hi_snr_sum_capacity(spec)) << ','
         << fmt(snc::cutset_two_cuts(spec)) << ','
         << fmt(snc::cutset_single_cut(spec)) << ',' << fmt(opt.sum) << ','
         << fmt(opt.params ? opt.params->delta : std::nan("")) << ','
         << fmt(opt.params ? opt.params->q : std::nan("")) << ','
         << (opt.used_fallback ? 1 : 0) << ',' << fmt(fc1) << ',' << fmt(fc2)
         << ',' << fmt(partial) << ',' << fmt(partial_p0) << '\n';
    }
  return os.str();
}

std::string rates_p2p(const ModelFlags& f) {
  if (f.p.empty()) throw std::invalid_argument("empty power grid");
  const int eta = f.eta > 0 ? f.eta : 1;
  std::ostringstream os;
  os << "p,sigma_sq,eta,finite_rate,capacity\n";
  for (double p : f.p) {
    os << fmt(p) << ',' << fmt(f.s1) << ',' << eta << ','
       << fmt(snc::p2p_finite_rate(p, f.s1, eta).per_user[0]) << ','
       << fmt(snc::half_log2_1p(p / f.s1)) << '\n';
  }
  return os.str();
}

std::string rates_bck(const ModelFlags& f) {
  if (f.p.empty()) throw std::invalid_argument("empty power grid");
  if (f.alphas.size() < 2) throw std::invalid_argument("need --alphas");
  std::ostringstream os;
  os << "p,eta,user,alpha,limit_rate,finite_rate\n";
  for (double p : f.p) {
    snc::KUserSpec spec(f.alphas, p);
    const int eta = f.eta >= spec.users() ? f.eta : spec.users();
    auto limit = snc::kuser_limit_rates(spec);
    auto finite = snc::kuser_finite_rates(spec, eta);
    for (int u = 0; u < spec.users(); ++u)
      os << fmt(p) << ',' << eta << ',' << (u + 1) << ','
         << fmt(f.alphas[size_t(u)]) << ',' << fmt(limit.per_user[size_t(u)])
         << ',' << fmt(finite.per_user[size_t(u)]) << '\n';
  }
  return os.str();
}

std::string rates_ic(const ModelFlags& f) {
  if (f.p.empty()) throw std::invalid_argument("empty power grid");
  if (f.gains.size() != 4) throw std::invalid_argument("need --gains with 4 values");
  const double rho = first_rho(f);
  std::ostringstream os;
  os << "p,rho,cutset_r1,cutset_r2,genie_sum_bound,ach_r1,ach_r2,"
        "finite_r1,finite_r2\n";
  for (double p : f.p) {
    snc::IcSpec spec(f.gains[0], f.gains[1], f.gains[2], f.gains[3], f.s1,
                     f.s2, rho, p);
    auto [c1, c2] = snc::ic_cutset_bounds(spec);
    double genie = std::nan("");
    if (std::abs(rho) < 1.0) genie = snc::ic_genie_mac_bound(spec);
    double a1 = std::nan(""), a2 = std::nan("");
    double f1 = std::nan(""), f2 = std::nan("");
    if (std::abs(rho) == 1.0) {
      auto lim = snc::ic_limit_rates(spec);
      a1 = lim.per_user[0];
      a2 = lim.per_user[1];
      if (f.eta >= 2) {
        auto fin = snc::ic_finite_rates(spec, f.eta);
        f1 = fin.per_user[0];
        f2 = fin.per_user[1];
      }
    }
    os << fmt(p) << ',' << fmt(rho) << ',' << fmt(c1) << ',' << fmt(c2) << ','
       << fmt(genie) << ',' << fmt(a1) << ',' << fmt(a2) << ',' << fmt(f1)
       << ',' << fmt(f2) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------
// bounds

std::string bounds_body(const std::string& model, const ModelFlags& f) {
  if (f.p.empty()) throw std::invalid_argument("empty power grid");
  std::ostringstream os;
  if (model == "ic") {
    if (f.gains.size() != 4)
      throw std::invalid_argument("need --gains with 4 values");
    const double rho = first_rho(f);
    os << "p,rho,cutset_r1,cutset_r2,genie_sum_bound\n";
    for (double p : f.p) {
      snc::IcSpec spec(f.gains[0], f.gains[1], f.gains[2], f.gains[3], f.s1,
                       f.s2, rho, p);
      auto [c1, c2] = snc::ic_cutset_bounds(spec);
      const double genie =
          std::abs(rho) < 1.0 ? snc::ic_genie_mac_bound(spec) : std::nan("");
      os << fmt(p) << ',' << fmt(rho) << ',' << fmt(c1) << ',' << fmt(c2)
         << ',' << fmt(genie) << '\n';
    }
    return os.str();
  }
  std::vector<double> rhos =
      f.rho_list.empty() ? std::vector<double>{0.0} : f.rho_list;
  os << "p,rho,no_feedback_sum,cutset_two_cuts,cutset_single_cut,hi_snr_sum,"
        "power_offset,less_noisy_var1,less_noisy_var2,less_noisy_sum\n";
  for (double p : f.p)
    for (double rho : rhos) {
      snc::BcSpec spec(f.s1, f.s2, rho, p);
      double offset = std::nan("");
      if (std::abs(rho) < 1.0) offset = snc::power_offset(f.s1, f.s2, rho);
      double lv1 = std::nan(""), lv2 = std::nan(""), lsum = std::nan("");
      if (f.sw1 > 0.0 && f.sw2 > 0.0) {
        snc::FeedbackNoiseSpec fb(f.sw1, f.sw2);
        auto [v1, v2] = snc::less_noisy_variances(spec, fb);
        lv1 = v1;
        lv2 = v2;
        lsum = snc::less_noisy_sum_capacity(spec, fb);
      }
      os << fmt(p) << ',' << fmt(rho) << ','
         << fmt(snc::no_feedback_sum_capacity(spec)) << ','
         << fmt(snc::cutset_two_cuts(spec)) << ','
         << fmt(snc::cutset_single_cut(spec)) << ','
         << fmt(snc::hi_snr_sum_capacity(spec)) << ',' << fmt(offset) << ','
         << fmt(lv1) << ',' << fmt(lv2) << ',' << fmt(lsum) << '\n';
    }
  return os.str();
}

// ---------------------------------------------------------------------
// figure sweeps

std::string fig3_body(double s1_sq, double s2_sq, double rho_min,
                      double rho_max, int points) {
  if (points < 1) throw std::invalid_argument("need at least one grid point");
  if (rho_min > rho_max) throw std::invalid_argument("bad correlation range");
  if (rho_min <= -1.0 || rho_max >= 1.0)
    throw std::invalid_argument("correlation grid must stay inside (-1, 1)");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(points == 1 ? rho_min
                               : rho_min + (rho_max - rho_min) * i /
                                               double(points - 1));
  // Pin the known minimizer onto the grid so the sweep includes the
  // exact extremum of the curve.
  const double s1 = std::sqrt(s1_sq), s2 = std::sqrt(s2_sq);
  const double rho_star = std::min(s1 / s2, s2 / s1);
  if (points >= 3 && rho_star > grid.front() && rho_star < grid.back()) {
    size_t nearest = 0;
    for (size_t i = 1; i < grid.size(); ++i)
      if (std::abs(grid[i] - rho_star) < std::abs(grid[nearest] - rho_star))
        nearest = i;
    grid[nearest] = rho_star;
  }
  std::ostringstream os;
  os << "rho,gamma\n";
  for (double rho : grid)
    os << fmt(rho) << ',' << fmt(snc::power_offset(s1_sq, s2_sq, rho)) << '\n';
  return os.str();
}

std::string fig4_body(double p_min, double p_max, int p_points,
                      const std::vector<double>& rhos, double s1_sq,
                      double s2_sq) {
  for (double rho : rhos)
    if (rho < -1.0 || rho > 1.0)
      throw std::invalid_argument("correlation outside [-1, 1]");
  std::ostringstream os;
  os << "p,rho,ratio\n";
  for (double p : log_grid(p_min, p_max, p_points))
    for (double rho : rhos) {
      snc::BcSpec spec(s1_sq, s2_sq, rho, p);
      const double sum = snc::optimize_bc2_sum_rate(spec).sum;
      os << fmt(p) << ',' << fmt(rho) << ','
         << fmt(sum / snc::half_log2_1p(p / s1_sq)) << '\n';
    }
  return os.str();
}

// ---------------------------------------------------------------------
// scheme-verify / simulate

struct BuiltScheme {
  snc::BlockScheme scheme;
  snc::NoiseCovariance cov;
  std::vector<double> closed_form_rates;
};

BuiltScheme build_from_flags(const std::string& model, const ModelFlags& f,
                             int eta) {
  if (model == "p2p") {
    const double p = f.p.empty() ? 1.0 : f.p.front();
    snc::BlockScheme s = snc::build_p2p_scheme(p, f.s1, eta);
    snc::NoiseCovariance cov(Eigen::MatrixXd::Constant(1, 1, f.s1));
    return {std::move(s), std::move(cov),
            snc::p2p_finite_rate(p, f.s1, eta).per_user};
  }
  if (model == "bc2") {
    if (f.p.empty()) throw std::invalid_argument("need --p");
    snc::BcSpec spec(f.s1, f.s2, first_rho(f), f.p.front());
    snc::SchemeParams params;
    if (f.has_delta && f.has_q) {
      params = {f.delta, f.q, eta};
    } else if (std::abs(spec.rho_z) == 1.0) {
      params = snc::bc2_fullcorr_params(spec).params;
      params.eta = eta;
    } else {
      auto choice = snc::bc2_partial_corr_params(spec, f.eps);
      if (!choice.feasible)
        throw std::invalid_argument("power below the feasibility threshold");
      params = choice.params;
      params.eta = eta;
    }
    snc::BlockScheme s = snc::build_bc2_scheme(spec, params);
    return {std::move(s), snc::bc_noise_cov(spec),
            snc::bc2_finite_rates(spec, params).exact.per_user};
  }
  if (model == "bck") {
    if (f.alphas.size() < 2) throw std::invalid_argument("need --alphas");
    if (f.p.empty()) throw std::invalid_argument("need --p");
    snc::KUserSpec spec(f.alphas, f.p.front());
    snc::BlockScheme s = snc::build_kuser_scheme(spec, eta);
    return {std::move(s), snc::kuser_noise_cov(spec),
            snc::kuser_finite_rates(spec, eta).per_user};
  }
  if (model == "ic") {
    if (f.gains.size() != 4)
      throw std::invalid_argument("need --gains with 4 values");
    if (f.p.empty()) throw std::invalid_argument("need --p");
    snc::IcSpec spec(f.gains[0], f.gains[1], f.gains[2], f.gains[3], f.s1,
                     f.s2, first_rho(f), f.p.front());
    snc::BlockScheme s = snc::build_ic_scheme(spec, eta);
    return {std::move(s), snc::ic_noise_cov(spec),
            snc::ic_finite_rates(spec, eta).per_user};
  }
  throw std::invalid_argument("unknown model: " + model);
}

int run_verify(const std::string& model, const ModelFlags& f, int eta_min,
               int eta_max) {
  json report;
  report["model"] = model;
  report["checks"] = json::array();
  bool all_pass = true;
  std::string first_failure;

  for (int eta = eta_min; eta <= eta_max; ++eta) {
    BuiltScheme built = build_from_flags(model, f, eta);
    auto eq = snc::equivalent_channel(built.scheme, built.cov);
    auto cancel = snc::check_cancellation(built.scheme, eq);
    auto power = snc::block_power(built.scheme, built.cov);

    const double budget = eta * built.scheme.power;
    const double power_excess = power.maxCoeff() / budget - 1.0;
    double rate_gap = 0.0;
    for (int u = 0; u < built.scheme.users; ++u) {
      const double closed = built.closed_form_rates[size_t(u)];
      rate_gap = std::max(rate_gap, std::abs(closed - eq.rate(u)) /
                                        std::max(1e-300, std::abs(closed)));
    }

    auto add_check = [&](const std::string& name, double value, double tol) {
      const bool pass = value <= tol;
      json c;
      c["name"] = name;
      c["eta"] = eta;
      c["value"] = value;
      c["tol"] = tol;
      c["pass"] = pass;
      report["checks"].push_back(c);
      if (!pass && all_pass) {
        all_pass = false;
        first_failure = name;
      }
    };
    add_check("interference_cancellation", cancel.max_interference_rel, 1e-10);
    add_check("noise_cancellation", cancel.max_canceled_noise_rel, 1e-10);
    add_check("power_budget", power_excess, 1e-9);
    add_check("closed_form_rate_agreement", rate_gap, 1e-9);

    if (f.trials > 0) {
      auto sim = snc::run_sim(built.scheme, built.cov, f.trials, f.seed);
      add_check("monte_carlo_estimates", sim.estimates_ok ? 0.0 : 1.0, 0.5);
      add_check("monte_carlo_power", sim.power_ok ? 0.0 : 1.0, 0.5);
    }

    if (model == "bc2" && built.scheme.params) {
      snc::BcSpec spec(f.s1, f.s2, first_rho(f), f.p.front());
      auto cmp = snc::bc2_finite_rates(spec, *built.scheme.params);
      json info;
      info["eta"] = eta;
      info["exact_rates"] = cmp.exact.per_user;
      info["uncorrelated_form_rates"] = cmp.uncorrelated.per_user;
      info["max_rel_difference"] = cmp.max_rel_difference;
      info["forms_agree"] = cmp.agrees();
      report["residual_variance_forms"].push_back(info);
    }
  }

  report["pass"] = all_pass;
  emit(report.dump(2) + "\n", f.out);
  if (!all_pass) {
    std::cerr << "verification failed: " << first_failure << "\n";
    return 1;
  }
  return 0;
}

int run_simulate(const std::string& model, const ModelFlags& f) {
  const int eta = f.eta > 0 ? f.eta : 3;
  const long trials = f.trials > 0 ? f.trials : 10000;
  BuiltScheme built = build_from_flags(model, f, eta);
  auto sim = snc::run_sim(built.scheme, built.cov, trials, f.seed);
  auto emp = snc::empirical_rate(sim);

  json out;
  out["model"] = model;
  out["eta"] = eta;
  out["trials"] = trials;
  out["seed"] = f.seed;
  for (int u = 0; u < sim.users; ++u) {
    json user;
    user["gain_hat"] = sim.gain_hat(u);
    user["gain_se"] = sim.gain_se(u);
    user["gain_analytic"] = sim.gain_analytic(u);
    user["resid_var_hat"] = sim.resid_var_hat(u);
    user["resid_var_se"] = sim.resid_var_se(u);
    user["resid_var_analytic"] = sim.resid_var_analytic(u);
    user["rate"] = emp.rate(u);
    user["rate_lo"] = emp.lo(u);
    user["rate_hi"] = emp.hi(u);
    user["closed_form_rate"] = built.closed_form_rates[size_t(u)];
    out["users"].push_back(user);
  }
  out["mean_power"] = std::vector<double>(
      sim.mean_power.data(), sim.mean_power.data() + sim.mean_power.size());
  out["power_budget"] = sim.power_budget;
  out["estimates_ok"] = sim.estimates_ok;
  out["power_ok"] = sim.power_ok;
  emit(out.dump(2) + "\n", f.out);
  return sim.estimates_ok && sim.power_ok ? 0 : 1;
}

// ---------------------------------------------------------------------
// prelog

std::string prelog_body(const std::string& family, const ModelFlags& f,
                        int sched_sign, double sched_zeta,
                        double sched_eps_factor,
                        const std::string& kappa_mode) {
  std::vector<double> grid =
      f.p.empty() ? std::vector<double>{1e4, 1e5, 1e6, 1e7, 1e8} : f.p;
  std::function<double(double)> fn;
  if (family == "no-feedback") {
    fn = [&](double p) {
      return snc::no_feedback_sum_capacity(snc::BcSpec(f.s1, f.s2, first_rho(f), p));
    };
  } else if (family == "cutset-two") {
    fn = [&](double p) {
      return snc::cutset_two_cuts(snc::BcSpec(f.s1, f.s2, first_rho(f), p));
    };
  } else if (family == "less-noisy") {
    if (f.sw1 <= 0.0 || f.sw2 <= 0.0)
      throw std::invalid_argument("need --sw1/--sw2 > 0");
    fn = [&](double p) {
      return snc::less_noisy_sum_capacity(
          snc::BcSpec(f.s1, f.s2, first_rho(f), p),
          snc::FeedbackNoiseSpec(f.sw1, f.sw2));
    };
  } else if (family == "bc2-fullcorr") {
    fn = [&](double p) {
      return snc::bc2_fullcorr_limit_rates(
                 snc::BcSpec(f.s1, f.s2, first_rho(f), p))
          .sum();
    };
  } else if (family == "bc2-fullcorr-finite") {
    const int eta = f.eta > 0 ? f.eta : 3;
    fn = [&, eta](double p) {
      return snc::bc2_fullcorr_finite_rates(
                 snc::BcSpec(f.s1, f.s2, first_rho(f), p), eta)
          .sum();
    };
  } else if (family == "bc2-opt") {
    fn = [&](double p) {
      return snc::optimize_bc2_sum_rate(snc::BcSpec(f.s1, f.s2, first_rho(f), p))
          .sum;
    };
  } else if (family == "kuser") {
    if (f.alphas.size() < 2) throw std::invalid_argument("need --alphas");
    fn = [&](double p) {
      return snc::kuser_limit_rates(snc::KUserSpec(f.alphas, p)).sum();
    };
  } else if (family == "ic") {
    if (f.gains.size() != 4)
      throw std::invalid_argument("need --gains with 4 values");
    fn = [&](double p) {
      return snc::ic_limit_rates(snc::IcSpec(f.gains[0], f.gains[1],
                                             f.gains[2], f.gains[3], f.s1,
                                             f.s2, first_rho(f), p))
          .sum();
    };
  } else if (family == "schedule" || family == "envelope") {
    snc::ScheduleSpec sched(sched_sign, sched_zeta, sched_eps_factor);
    std::optional<bool> kappa_override;
    if (kappa_mode == "finite") kappa_override = true;
    else if (kappa_mode == "infinite") kappa_override = false;
    else if (kappa_mode != "auto")
      throw std::invalid_argument("--sched-kappa must be auto|finite|infinite");
    if (family == "schedule") {
      fn = [&, sched, kappa_override](double p) {
        auto sp =
            snc::schedule_params(f.s1, f.s2, sched, p, f.eps, kappa_override);
        if (!sp.feasible)
          throw std::invalid_argument("schedule infeasible at p=" + fmt(p));
        snc::BcSpec spec(f.s1, f.s2, sp.rho, p);
        return snc::bc2_limit_rates(spec, {sp.delta, sp.q, 1}).sum();
      };
    } else {
      fn = [&, sched](double p) {
        snc::BcSpec spec(f.s1, f.s2, sched.rho(p), p);
        return std::min(snc::cutset_two_cuts(spec),
                        snc::cutset_single_cut(spec));
      };
    }
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }

  const double slope = snc::prelog_estimate(fn, grid);
  std::ostringstream os;
  os << "family,slope\n" << family << ',' << fmt(slope) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear feedback coding schemes and capacity bounds for "
               "Gaussian broadcast and interference channels"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (sections per subcommand)");

  ModelFlags f;
  std::string model = "bc2";

  auto* rates = app.add_subcommand("rates", "achievable rates and bounds");
  rates->add_option("--model", model, "p2p|bc2|bck|ic");
  add_common(rates, f);

  auto* bounds = app.add_subcommand("bounds", "capacity upper bounds");
  bounds->add_option("--model", model, "bc2|ic");
  add_common(bounds, f);

  auto* fig3 = app.add_subcommand("fig3", "power-offset sweep CSV");
  double f3_s1 = 2.0, f3_s2 = 0.25, f3_lo = -0.9, f3_hi = 0.95;
  int f3_points = 1000;
  std::string f3_out;
  fig3->add_option("--s1", f3_s1, "noise variance 1");
  fig3->add_option("--s2", f3_s2, "noise variance 2");
  fig3->add_option("--rho-min", f3_lo, "grid start");
  fig3->add_option("--rho-max", f3_hi, "grid end");
  fig3->add_option("--points", f3_points, "grid size");
  fig3->add_option("--out", f3_out, "output path");

  auto* fig4 = app.add_subcommand("fig4", "normalized optimized sum-rate CSV");
  double f4_pmin = 1.0, f4_pmax = 1e4, f4_s1 = 1.0, f4_s2 = 1.0;
  int f4_points = 33;
  std::vector<double> f4_rhos = {-0.85, -0.95, -0.99, -0.999, -0.9999};
  std::string f4_out;
  fig4->add_option("--p-min", f4_pmin, "grid start");
  fig4->add_option("--p-max", f4_pmax, "grid end");
  fig4->add_option("--p-points", f4_points, "grid size");
  fig4->add_option("--rho", f4_rhos, "correlations")->delimiter(',');
  fig4->add_option("--s1", f4_s1, "noise variance 1");
  fig4->add_option("--s2", f4_s2, "noise variance 2");
  fig4->add_option("--out", f4_out, "output path");

  auto* verify = app.add_subcommand("scheme-verify",
                                    "cancellation, power, and rate checks");
  verify->add_option("--model", model, "p2p|bc2|bck|ic");
  int eta_min = 0, eta_max = 0;
  verify->add_option("--eta-min", eta_min, "first block length");
  verify->add_option("--eta-max", eta_max, "last block length");
  add_common(verify, f);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo verification");
  simulate->add_option("--model", model, "p2p|bc2|bck|ic");
  add_common(simulate, f);

  auto* prelog = app.add_subcommand("prelog", "growth-rate slope estimates");
  std::string family = "no-feedback";
  int sched_sign = -1;
  double sched_zeta = 0.5, sched_eps_factor = 1.0;
  std::string sched_kappa = "auto";
  prelog->add_option("--family", family,
                     "no-feedback|cutset-two|less-noisy|bc2-fullcorr|"
                     "bc2-fullcorr-finite|bc2-opt|kuser|ic|schedule|envelope");
  prelog->add_option("--sched-sign", sched_sign, "schedule sign (+1|-1)");
  prelog->add_option("--sched-zeta", sched_zeta, "schedule exponent");
  prelog->add_option("--sched-eps-factor", sched_eps_factor,
                     "schedule closeness factor (0 = exactly +-1)");
  prelog->add_option("--sched-kappa", sched_kappa,
                     "override the growth classification (auto|finite|infinite)");
  add_common(prelog, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rates->parsed()) {
      std::string body;
      if (model == "bc2")
        body = rates_bc2(f);
      else if (model == "p2p")
        body = rates_p2p(f);
      else if (model == "bck")
        body = rates_bck(f);
      else if (model == "ic")
        body = rates_ic(f);
      else
        throw std::invalid_argument("unknown model: " + model);
      emit(body, f.out);
      return 0;
    }
    if (bounds->parsed()) {
      emit(bounds_body(model, f), f.out);
      return 0;
    }
    if (fig3->parsed()) {
      emit(fig3_body(f3_s1, f3_s2, f3_lo, f3_hi, f3_points), f3_out);
      return 0;
    }
    if (fig4->parsed()) {
      emit(fig4_body(f4_pmin, f4_pmax, f4_points, f4_rhos, f4_s1, f4_s2),
           f4_out);
      return 0;
    }
    if (verify->parsed()) {
      int lo = eta_min, hi = eta_max;
      if (lo == 0) lo = f.eta > 0 ? f.eta : 3;
      if (hi == 0) hi = lo;
      if (hi < lo) throw std::invalid_argument("eta range is empty");
      return run_verify(model, f, lo, hi);
    }
    if (simulate->parsed()) return run_simulate(model, f);
    if (prelog->parsed()) {
      emit(prelog_body(family, f, sched_sign, sched_zeta, sched_eps_factor,
                       sched_kappa),
           f.out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
