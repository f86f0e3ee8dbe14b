#include "snc/scheme.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snc {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double ipow(double base, int exp) {
  if (exp < 0) return 1.0 / ipow(base, -exp);
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_delta(double delta) {
  require(std::abs(delta) > 1e-9 && std::abs(1.0 + delta) > 1e-9,
          "delta must stay away from 0 and -1");
}

// Strictly lower-triangular Toeplitz matrix with value `one_step` on the
// first subdiagonal and `two_step` on the second.
Eigen::MatrixXd two_tap_matrix(int eta, double one_step, double two_step) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(eta, eta);
  for (int i = 1; i < eta; ++i) b(i, i - 1) = one_step;
  for (int i = 2; i < eta; ++i) b(i, i - 2) = two_step;
  return b;
}

Eigen::MatrixXd subdiag_matrix(int eta, double value) {
  return two_tap_matrix(eta, value, 0.0);
}

// Alternating-power combiner (r^(eta-1), ..., r, 1) with r = -ratio.
Eigen::VectorXd combiner(int eta, double ratio) {
  Eigen::VectorXd v(eta);
  for (int i = 0; i < eta; ++i) v(i) = ipow(-ratio, eta - 1 - i);
  return v;
}

// Sum-of-squares rewrites of the budget quadratic forms; the naive
// expansions cancel catastrophically near the full-correlation choice.
double quad_coeff(const BcSpec& spec, double delta) {
  const double d2 = delta * delta;
  const double head = spec.sigma1() - d2 * spec.rho_z * spec.sigma2();
  return head * head +
         d2 * d2 * spec.sigma2_sq * (1.0 - spec.rho_z * spec.rho_z);
}

double quart_coeff(const BcSpec& spec, double delta) {
  const double head = spec.sigma1() + delta * spec.rho_z * spec.sigma2();
  const double form =
      head * head +
      delta * delta * spec.sigma2_sq * (1.0 - spec.rho_z * spec.rho_z);
  return (1.0 + delta) * (1.0 + delta) * delta * delta * form;
}

RateReport make_report(std::vector<double> rates, std::string scheme) {
  RateReport r;
  r.per_user = std::move(rates);
  r.scheme = std::move(scheme);
  return r;
}

// 1/(2 eta) log2(1 + factor * base^expo), evaluated in the log domain so
// long blocks cannot overflow.
double block_rate(double factor, double base, int expo, int eta) {
  if (factor <= 0.0) return 0.0;
  const double log2_snr = std::log2(factor) + expo * std::log2(base);
  if (log2_snr > 60.0) return 0.5 * log2_snr / eta;
  return half_log2_1p(std::exp2(log2_snr)) / eta;
}

}  // namespace

double bc2_power_lhs(const BcSpec& spec, double delta, double q) {
  const double q2 = q * q;
  return quad_coeff(spec, delta) * q2 + quart_coeff(spec, delta) * q2 * q2;
}

double bc2_max_q(const BcSpec& spec, double delta) {
  const double a = quad_coeff(spec, delta);
  const double b = quart_coeff(spec, delta);
  const double p = spec.power;
  if (b <= 1e-300) {
    if (a <= 1e-300) throw std::domain_error("power budget is degenerate");
    return std::sqrt(p / a);
  }
  const double q2 = (-a + std::sqrt(a * a + 4.0 * b * p)) / (2.0 * b);
  return std::sqrt(q2);
}

bool bc2_params_feasible(const BcSpec& spec, const SchemeParams& params,
                         double rel_slack) {
  return bc2_power_lhs(spec, params.delta, params.q) <=
         spec.power * (1.0 + rel_slack);
}

ParamChoice bc2_partial_corr_params(const BcSpec& spec, double eps) {
  require(std::abs(spec.rho_z) < 1.0, "requires |rho| < 1");
  require(!spec.physically_degraded(),
          "no useful parameter choice for a degraded channel");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  const double s1 = spec.sigma1(), s2 = spec.sigma2();
  const double delta =
      (s1 / s2) * (s1 - spec.rho_z * s2) / (s2 - spec.rho_z * s1);
  require_delta(delta);
  const double b = quart_coeff(spec, delta);
  const double q = std::pow((1.0 - eps) * spec.power / b, 0.25);
  ParamChoice choice;
  choice.params = {delta, q, 1};
  choice.power_lhs = bc2_power_lhs(spec, delta, q);
  choice.feasible = choice.power_lhs <= spec.power * (1.0 + 1e-9);
  return choice;
}

double bc2_partial_corr_power_threshold(const BcSpec& spec, double eps) {
  require(std::abs(spec.rho_z) < 1.0, "requires |rho| < 1");
  require(!spec.physically_degraded(),
          "no useful parameter choice for a degraded channel");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  const double s1 = spec.sigma1(), s2 = spec.sigma2();
  const double delta =
      (s1 / s2) * (s1 - spec.rho_z * s2) / (s2 - spec.rho_z * s1);
  const double a = quad_coeff(spec, delta);
  const double b = quart_coeff(spec, delta);
  // Budget holds iff a*q^2 <= eps*P with q^4 = (1-eps)P/b.
  return a * a * (1.0 - eps) / (b * eps * eps);
}

ParamChoice bc2_fullcorr_params(const BcSpec& spec) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(!spec.physically_degraded(),
          "degraded at full correlation (equal variances)");
  const double s1 = spec.sigma1(), s2 = spec.sigma2();
  const double delta = -spec.rho_z * s1 / s2;
  const double denom = 1.0 - (s1 / s2) * spec.rho_z;
  const double q = std::sqrt(spec.power / (spec.sigma1_sq * denom * denom));
  ParamChoice choice;
  choice.params = {delta, q, 1};
  choice.power_lhs = bc2_power_lhs(spec, delta, q);
  choice.feasible = choice.power_lhs <= spec.power * (1.0 + 1e-9);
  return choice;
}

BlockScheme build_p2p_scheme(double power, double sigma_sq, int eta) {
  require(power > 0.0 && sigma_sq > 0.0, "power and variance must be > 0");
  require(eta >= 1, "eta must be >= 1");
  const double tap = std::sqrt(power / sigma_sq);
  BlockScheme s;
  s.model = SchemeModel::P2P;
  s.eta = eta;
  s.users = 1;
  s.power = power;
  s.U = Eigen::MatrixXd::Zero(eta, 1);
  s.U(0, 0) = std::sqrt(power);
  s.B = {subdiag_matrix(eta, tap)};
  s.v = {combiner(eta, tap)};
  return s;
}

BlockScheme build_bc2_scheme(const BcSpec& spec, const SchemeParams& params) {
  require(params.eta >= 1, "eta must be >= 1");
  require_delta(params.delta);
  require(params.q > 0.0, "q must be positive");
  if (!bc2_params_feasible(spec, params))
    throw std::invalid_argument("parameters violate the power budget");

  const int eta = params.eta;
  const double r1 = params.b1() / params.a1();  // -delta (1+delta) q
  const double r2 = params.b2() / params.a2();  // (1+delta) q
  const double c1 = std::sqrt(spec.power / (2.0 + 2.0 * r1 * r1));
  const double c2 = std::sqrt(spec.power / (2.0 + 2.0 * r2 * r2));

  BlockScheme s;
  s.model = SchemeModel::Bc2;
  s.eta = eta;
  s.users = 2;
  s.power = spec.power;
  s.params = params;
  s.U = Eigen::MatrixXd::Zero(eta, 2);
  s.U(0, 0) = c1;
  s.U(0, 1) = c2;
  if (eta >= 2) {
    s.U(1, 0) = c1 * r1;
    s.U(1, 1) = c2 * r2;
  }
  s.B = {two_tap_matrix(eta, params.a1(), params.b1()),
         two_tap_matrix(eta, params.a2(), params.b2())};
  s.v = {combiner(eta, r2), combiner(eta, r1)};
  return s;
}

BlockScheme build_bc2_fullcorr_scheme(const BcSpec& spec, int eta) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(!spec.physically_degraded(),
          "degraded at full correlation (equal variances)");
  require(eta >= 2, "eta must be >= 2");
  const double p = spec.power;
  const double t1 = std::sqrt(p / spec.sigma1_sq);
  const double t2 = std::sqrt(p / spec.sigma2_sq);
  // Largest scaling that keeps the first two inputs within twice the
  // per-use budget.
  const double gamma =
      std::sqrt(p / (2.0 + p / spec.sigma1_sq + p / spec.sigma2_sq));

  BlockScheme s;
  s.model = SchemeModel::Bc2FullCorr;
  s.eta = eta;
  s.users = 2;
  s.power = p;
  s.U = Eigen::MatrixXd::Zero(eta, 2);
  s.U(0, 0) = gamma;
  s.U(1, 0) = gamma * spec.rho_z * t2;
  s.U(0, 1) = gamma;
  s.U(1, 1) = gamma * t1;
  s.B = {subdiag_matrix(eta, t1)};
  s.v = {combiner(eta, t1), combiner(eta, spec.rho_z * t2)};
  return s;
}

KUserProjection kuser_projection(const std::vector<double>& alphas) {
  const int k = static_cast<int>(alphas.size());
  Eigen::MatrixXd nodes(k, k);  // column j: powers of -alpha_j
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i)
      nodes(i, j) = ipow(-alphas[static_cast<size_t>(j)], i);

  KUserProjection proj;
  proj.w = Eigen::MatrixXd(k, k);
  proj.signal = Eigen::VectorXd(k);
  for (int j = 0; j < k; ++j) {
    Eigen::MatrixXd others(k, k - 1);
    int col = 0;
    for (int o = 0; o < k; ++o)
      if (o != j) others.col(col++) = nodes.col(o);
    // Least-squares projection; stabler than sequential
    // orthogonalization when nodes nearly coincide.
    Eigen::VectorXd coeff = others.colPivHouseholderQr().solve(nodes.col(j));
    Eigen::VectorXd w = nodes.col(j) - others * coeff;
    const double norm = w.norm();
    if (norm <= 1e-12 * nodes.col(j).norm())
      throw std::invalid_argument("alphas too close for a stable projection");
    w /= norm;
    proj.w.col(j) = w;
    proj.signal(j) = nodes.col(j).dot(w);
  }
  return proj;
}

BlockScheme build_kuser_scheme(const KUserSpec& spec, int eta) {
  const int k = spec.users();
  require(spec.all_distinct(), "alphas must be pairwise distinct");
  require(eta >= k, "eta must be at least the number of users");
  require(spec.power > static_cast<double>(k),
          "power must exceed the number of users");

  const double root_p = std::sqrt(spec.power);
  const KUserProjection proj = kuser_projection(spec.alphas);

  BlockScheme s;
  s.model = SchemeModel::KUser;
  s.eta = eta;
  s.users = k;
  s.power = spec.power;
  s.U = Eigen::MatrixXd::Zero(eta, k);
  for (int user = 0; user < k; ++user)
    for (int j = 0; j < k; ++j)
      s.U(j, user) = proj.w(j, user) * ipow(root_p, j + 1 - k);
  s.v.resize(static_cast<size_t>(k));
  for (int user = 0; user < k; ++user)
    s.v[static_cast<size_t>(user)] =
        combiner(eta, root_p / spec.alphas[static_cast<size_t>(user)]);
  // The alpha-weighted sum of the feedback taps must be the one-step
  // shift by sqrt(P); loading it all on user 1 is one valid split.
  s.B.assign(static_cast<size_t>(k), Eigen::MatrixXd::Zero(eta, eta));
  s.B[0] = subdiag_matrix(eta, root_p / spec.alphas[0]);
  return s;
}

BlockScheme build_ic_scheme(const IcSpec& spec, int eta) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  const double c21 = spec.rho_z * spec.sigma2() / spec.sigma1();
  const double tol = 1e-9 * std::max(1.0, std::abs(c21));
  require(std::abs(spec.a21 / spec.a11 - c21) > tol,
          "a21/a11 must differ from rho sigma2/sigma1");
  require(std::abs(spec.a22 / spec.a12 - c21) > tol,
          "a22/a12 must differ from rho sigma2/sigma1");
  require(eta >= 2, "eta must be >= 2");
  const double p = spec.power;
  const double u2_energy = spec.sigma1_sq / (2.0 * spec.a12 * spec.a12);
  require(u2_energy <= eta * p * (1.0 + 1e-9),
          "block too short for transmitter 2's power budget");

  const double root_p = std::sqrt(p);
  BlockScheme s;
  s.model = SchemeModel::Ic;
  s.eta = eta;
  s.users = 2;
  s.power = p;
  s.ic = spec;
  s.U = Eigen::MatrixXd::Zero(eta, 2);
  const double c1 = std::sqrt(
      (p / 2.0) / (1.0 + spec.a21 * spec.a21 * p / spec.sigma2_sq));
  s.U(0, 0) = c1;
  s.U(1, 0) = c1 * spec.a21 * root_p / (spec.rho_z * spec.sigma2());
  s.U(0, 1) = std::sqrt(u2_energy);
  s.B = {subdiag_matrix(eta, root_p / spec.sigma1()),
         Eigen::MatrixXd::Zero(eta, eta)};
  s.v = {combiner(eta, spec.a11 * root_p / spec.sigma1()),
         combiner(eta, spec.a21 * root_p / (spec.rho_z * spec.sigma2()))};
  return s;
}

namespace {

struct ReceiverMaps {
  std::vector<Eigen::MatrixXd> sig;    // per user: eta x users
  std::vector<std::vector<Eigen::MatrixXd>> noise;  // per user, per row
  Eigen::MatrixXd time_cov;            // per-time covariance of the rows
};

Eigen::VectorXd rank_one_ratios(const NoiseCovariance& cov, const char* who) {
  if (!cov.rank_one())
    throw std::invalid_argument(std::string(who) +
                                " needs a rank-one noise covariance");
  return cov.rank_one_factor();
}

// Input maps of the two coupled transmitters: columns of each matrix
// give X_k as a function of (Xi_1, Xi_2, Z_1 samples).
struct IcInputMaps {
  Eigen::MatrixXd x1_sig, x2_sig;  // eta x 2
  Eigen::MatrixXd x1_z, x2_z;      // eta x eta
};

IcInputMaps ic_input_maps(const BlockScheme& s, double c21) {
  const IcSpec& ic = *s.ic;
  const int eta = s.eta;
  const Eigen::MatrixXd& b1 = s.B[0];
  const Eigen::MatrixXd& b2 = s.B[1];
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(eta, eta);
  // X1 = u1 Xi1 + B1 (a12 X2 + Z1), X2 = u2 Xi2 + B2 (a21 X1 + Z2)
  // with Z2 = c21 Z1; the coupling matrix is nilpotent, so the joint
  // system always solves.
  Eigen::MatrixXd coupling = eye - ic.a12 * ic.a21 * b1 * b2;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(coupling);

  IcInputMaps m;
  m.x1_sig = Eigen::MatrixXd::Zero(eta, 2);
  m.x1_sig.col(0) = lu.solve(s.U.col(0).eval());
  m.x1_sig.col(1) = lu.solve((ic.a12 * b1 * s.U.col(1)).eval());
  m.x1_z = lu.solve((b1 + c21 * ic.a12 * b1 * b2).eval());
  m.x2_sig = Eigen::MatrixXd::Zero(eta, 2);
  m.x2_sig.col(0) = ic.a21 * b2 * m.x1_sig.col(0);
  m.x2_sig.col(1) = s.U.col(1) + ic.a21 * b2 * m.x1_sig.col(1);
  m.x2_z = ic.a21 * b2 * m.x1_z + c21 * b2;
  return m;
}

ReceiverMaps receiver_maps(const BlockScheme& s, const NoiseCovariance& cov) {
  const int eta = s.eta;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(eta, eta);
  ReceiverMaps maps;
  switch (s.model) {
    case SchemeModel::P2P: {
      require(cov.dim() == 1, "point-to-point noise is one-dimensional");
      maps.sig = {s.U};
      maps.noise = {{s.B[0] + eye}};
      maps.time_cov = cov.matrix();
      return maps;
    }
    case SchemeModel::Bc2: {
      require(cov.dim() == 2, "two-user noise covariance expected");
      maps.sig = {s.U, s.U};
      maps.noise = {{s.B[0] + eye, s.B[1]}, {s.B[0], s.B[1] + eye}};
      maps.time_cov = cov.matrix();
      return maps;
    }
    case SchemeModel::Bc2FullCorr: {
      const Eigen::VectorXd v = rank_one_ratios(cov, "full-correlation scheme");
      require(v.size() == 2, "two-user noise covariance expected");
      const double c21 = v(1) / v(0);
      maps.sig = {s.U, s.U};
      maps.noise = {{s.B[0] + eye}, {s.B[0] + c21 * eye}};
      maps.time_cov = Eigen::MatrixXd::Constant(1, 1, v(0) * v(0));
      return maps;
    }
    case SchemeModel::KUser: {
      const Eigen::VectorXd alpha = rank_one_ratios(cov, "K-user scheme");
      require(static_cast<int>(alpha.size()) == s.users,
              "covariance dimension must match the user count");
      Eigen::MatrixXd f = Eigen::MatrixXd::Zero(eta, eta);
      for (int k = 0; k < s.users; ++k)
        f += alpha(k) * s.B[static_cast<size_t>(k)];
      maps.sig.assign(static_cast<size_t>(s.users), s.U);
      maps.noise.resize(static_cast<size_t>(s.users));
      for (int k = 0; k < s.users; ++k)
        maps.noise[static_cast<size_t>(k)] = {f + alpha(k) * eye};
      // Noise samples are expressed against the shared standardized
      // process, so the per-time variance is one.
      maps.time_cov = Eigen::MatrixXd::Constant(1, 1, 1.0);
      return maps;
    }
    case SchemeModel::Ic: {
      const Eigen::VectorXd v = rank_one_ratios(cov, "interference scheme");
      require(v.size() == 2, "two-receiver noise covariance expected");
      const double c21 = v(1) / v(0);
      const IcSpec& ic = *s.ic;
      const IcInputMaps m = ic_input_maps(s, c21);
      Eigen::MatrixXd sig1 = ic.a11 * m.x1_sig + ic.a12 * m.x2_sig;
      Eigen::MatrixXd sig2 = ic.a21 * m.x1_sig + ic.a22 * m.x2_sig;
      maps.sig = {sig1, sig2};
      maps.noise = {{ic.a11 * m.x1_z + ic.a12 * m.x2_z + eye},
                    {ic.a21 * m.x1_z + ic.a22 * m.x2_z + c21 * eye}};
      maps.time_cov = Eigen::MatrixXd::Constant(1, 1, v(0) * v(0));
      return maps;
    }
  }
  throw std::logic_error("unknown scheme model");
}

}  // namespace

EquivalentChannel equivalent_channel(const BlockScheme& s,
                                     const NoiseCovariance& cov) {
  const ReceiverMaps maps = receiver_maps(s, cov);
  const int users = s.users;
  const int rows = static_cast<int>(maps.noise[0].size());

  EquivalentChannel eq;
  eq.eta = s.eta;
  eq.users = users;
  eq.noise_rows = rows;
  eq.xi_coeff = Eigen::MatrixXd(users, users);
  eq.noise_coeff.resize(static_cast<size_t>(users));
  for (int k = 0; k < users; ++k) {
    const Eigen::VectorXd& vk = s.v[static_cast<size_t>(k)];
    eq.xi_coeff.row(k) = vk.transpose() * maps.sig[static_cast<size_t>(k)];
    Eigen::MatrixXd nk(rows, s.eta);
    for (int r = 0; r < rows; ++r)
      nk.row(r) =
          vk.transpose() * maps.noise[static_cast<size_t>(k)][static_cast<size_t>(r)];
    eq.noise_coeff[static_cast<size_t>(k)] = std::move(nk);
  }

  eq.residual_cov = Eigen::MatrixXd::Zero(users, users);
  for (int k = 0; k < users; ++k)
    for (int l = 0; l < users; ++l) {
      double acc = 0.0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < rows; ++c)
          acc += maps.time_cov(r, c) *
                 eq.noise_coeff[static_cast<size_t>(k)].row(r).dot(
                     eq.noise_coeff[static_cast<size_t>(l)].row(c));
      eq.residual_cov(k, l) = acc;
    }

  eq.gain = eq.xi_coeff.diagonal();
  eq.snr = Eigen::VectorXd(users);
  eq.rate = Eigen::VectorXd(users);
  for (int k = 0; k < users; ++k) {
    const double g2 = eq.gain(k) * eq.gain(k);
    const double var = eq.residual_cov(k, k);
    eq.snr(k) = var > 0.0 ? g2 / var
                          : (g2 > 0.0 ? kInfiniteRate : 0.0);
    eq.rate(k) = half_log2_1p(eq.snr(k)) / s.eta;
  }
  return eq;
}

CancellationReport check_cancellation(const BlockScheme& s,
                                      const EquivalentChannel& eq) {
  // Time indices the scheme must wipe out (0-based, exclusive end).
  int canceled_end = 0;
  switch (s.model) {
    case SchemeModel::Bc2:
      canceled_end = s.eta - 2;
      break;
    case SchemeModel::P2P:
    case SchemeModel::Bc2FullCorr:
    case SchemeModel::KUser:
    case SchemeModel::Ic:
      canceled_end = s.eta - 1;
      break;
  }

  CancellationReport report;
  for (int k = 0; k < eq.users; ++k) {
    double scale = eq.xi_coeff.row(k).cwiseAbs().maxCoeff();
    scale = std::max(
        scale, eq.noise_coeff[static_cast<size_t>(k)].cwiseAbs().maxCoeff());
    scale = std::max(scale, 1e-300);
    for (int j = 0; j < eq.users; ++j)
      if (j != k)
        report.max_interference_rel = std::max(
            report.max_interference_rel, std::abs(eq.xi_coeff(k, j)) / scale);
    for (int r = 0; r < eq.noise_rows; ++r)
      for (int t = 0; t < canceled_end; ++t)
        report.max_canceled_noise_rel = std::max(
            report.max_canceled_noise_rel,
            std::abs(eq.noise_coeff[static_cast<size_t>(k)](r, t)) / scale);
  }
  return report;
}

Eigen::VectorXd block_power(const BlockScheme& s, const NoiseCovariance& cov) {
  switch (s.model) {
    case SchemeModel::P2P:
      return Eigen::VectorXd::Constant(
          1, s.U.squaredNorm() +
                 (s.B[0] * s.B[0].transpose()).trace() * cov.matrix()(0, 0));
    case SchemeModel::Bc2: {
      double e = s.U.squaredNorm();
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          e += (s.B[static_cast<size_t>(r)] *
                s.B[static_cast<size_t>(c)].transpose())
                   .trace() *
               cov.matrix()(r, c);
      return Eigen::VectorXd::Constant(1, e);
    }
    case SchemeModel::Bc2FullCorr:
      return Eigen::VectorXd::Constant(
          1, s.U.squaredNorm() +
                 (s.B[0] * s.B[0].transpose()).trace() * cov.matrix()(0, 0));
    case SchemeModel::KUser: {
      const Eigen::VectorXd alpha = cov.rank_one_factor();
      Eigen::MatrixXd f = Eigen::MatrixXd::Zero(s.eta, s.eta);
      for (int k = 0; k < s.users; ++k)
        f += alpha(k) * s.B[static_cast<size_t>(k)];
      return Eigen::VectorXd::Constant(
          1, s.U.squaredNorm() + (f * f.transpose()).trace());
    }
    case SchemeModel::Ic: {
      const Eigen::VectorXd v = cov.rank_one_factor();
      const double c21 = v(1) / v(0);
      const double var1 = v(0) * v(0);
      const IcInputMaps m = ic_input_maps(s, c21);
      Eigen::VectorXd e(2);
      e(0) = m.x1_sig.squaredNorm() +
             (m.x1_z * m.x1_z.transpose()).trace() * var1;
      e(1) = m.x2_sig.squaredNorm() +
             (m.x2_z * m.x2_z.transpose()).trace() * var1;
      return e;
    }
  }
  throw std::logic_error("unknown scheme model");
}

RateReport p2p_finite_rate(double power, double sigma_sq, int eta) {
  require(power > 0.0 && sigma_sq > 0.0, "power and variance must be > 0");
  require(eta >= 1, "eta must be >= 1");
  return make_report({block_rate(1.0, power / sigma_sq, eta, eta)}, "p2p");
}

Bc2FiniteRates bc2_finite_rates(const BcSpec& spec,
                                const SchemeParams& params) {
  require_delta(params.delta);
  require(params.q > 0.0, "q must be positive");
  require(params.eta >= 1, "eta must be >= 1");
  const double d = params.delta, q = params.q;
  const int eta = params.eta;
  const double p = spec.power;
  const double s1 = spec.sigma1_sq, s2 = spec.sigma2_sq;
  const double cross = spec.rho_z * spec.sigma1() * spec.sigma2();
  const double q2 = q * q;

  const double r1_sq = d * d * (1.0 + d) * (1.0 + d) * q2;
  const double r2_sq = (1.0 + d) * (1.0 + d) * q2;
  const double pre1 = p / (2.0 + 2.0 * r1_sq) * (1.0 + d) * (1.0 + d);
  const double pre2 =
      p / (2.0 + 2.0 * r2_sq) * (1.0 + 1.0 / d) * (1.0 + 1.0 / d);

  // Surviving noise coefficients are (-dq, 1) on receiver 1's last two
  // samples plus -d^2 q on the other receiver's second-to-last sample,
  // and symmetrically for receiver 2.
  const double var1_unc = (d * d * q2 + 1.0) * s1 + ipow(d, 4) * q2 * s2;
  const double var1_exact = var1_unc + 2.0 * ipow(d, 3) * q2 * cross;
  const double var2_unc = (d * d * q2 + 1.0) * s2 + q2 * s1;
  const double var2_exact = var2_unc + 2.0 * d * q2 * cross;

  Bc2FiniteRates out;
  out.exact = make_report({block_rate(pre1 / var1_exact, r2_sq, eta - 1, eta),
                           block_rate(pre2 / var2_exact, r1_sq, eta - 1, eta)},
                          "bc2-finite-exact");
  out.uncorrelated =
      make_report({block_rate(pre1 / var1_unc, r2_sq, eta - 1, eta),
                   block_rate(pre2 / var2_unc, r1_sq, eta - 1, eta)},
                  "bc2-finite-uncorrelated");
  for (size_t k = 0; k < 2; ++k) {
    const double a = out.exact.per_user[k], b = out.uncorrelated.per_user[k];
    out.max_rel_difference = std::max(
        out.max_rel_difference, std::abs(a - b) / std::max(1e-300, std::abs(a)));
  }
  return out;
}

RateReport bc2_fullcorr_finite_rates(const BcSpec& spec, int eta) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(eta >= 1, "eta must be >= 1");
  const double p = spec.power;
  const double s1 = spec.sigma1(), s2 = spec.sigma2();
  const double f1 = 1.0 - spec.rho_z * s1 / s2;
  const double f2 = 1.0 - spec.rho_z * s2 / s1;
  const double pre1 =
      f1 * f1 * (p / spec.sigma1_sq) / (2.0 + 2.0 * p / spec.sigma2_sq);
  const double pre2 =
      f2 * f2 * (p / spec.sigma2_sq) / (2.0 + 2.0 * p / spec.sigma1_sq);
  return make_report({block_rate(pre1, p / spec.sigma1_sq, eta - 1, eta),
                      block_rate(pre2, p / spec.sigma2_sq, eta - 1, eta)},
                     "bc2-fullcorr-finite");
}

RateReport bc2_fullcorr_motivation_rates(const BcSpec& spec, int eta) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(eta >= 2, "eta must be >= 2");
  const double p = spec.power;
  const double gamma_sq =
      p / (2.0 + p / spec.sigma1_sq + p / spec.sigma2_sq);
  const double f1 = 1.0 - spec.rho_z * spec.sigma1() / spec.sigma2();
  const double f2 = 1.0 - spec.rho_z * spec.sigma2() / spec.sigma1();
  return make_report(
      {block_rate(gamma_sq / p * f1 * f1, p / spec.sigma1_sq, eta, eta),
       block_rate(gamma_sq / p * f2 * f2, p / spec.sigma2_sq, eta, eta)},
      "bc2-fullcorr-motivation");
}

RateReport kuser_finite_rates(const KUserSpec& spec, int eta) {
  const int k = spec.users();
  require(spec.all_distinct(), "alphas must be pairwise distinct");
  require(eta >= k, "eta must be at least the number of users");
  require(spec.power > static_cast<double>(k),
          "power must exceed the number of users");
  const KUserProjection proj = kuser_projection(spec.alphas);
  std::vector<double> rates(static_cast<size_t>(k));
  for (int u = 0; u < k; ++u) {
    const double alpha_sq = spec.alphas[static_cast<size_t>(u)] *
                            spec.alphas[static_cast<size_t>(u)];
    const double factor =
        proj.signal(u) * proj.signal(u) / ipow(alpha_sq, k);
    rates[static_cast<size_t>(u)] =
        block_rate(factor, spec.power / alpha_sq, eta - k, eta);
  }
  return make_report(std::move(rates), "kuser-finite");
}

RateReport ic_finite_rates(const IcSpec& spec, int eta) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(eta >= 2, "eta must be >= 2");
  const double p = spec.power;
  const double s1 = spec.sigma1(), s2 = spec.sigma2();
  const double f1 = 1.0 - spec.a21 * s1 / (spec.a11 * spec.rho_z * s2);
  const double f2 = spec.a22 - spec.a12 * spec.rho_z * s2 / s1;
  const double x_sq = spec.a11 * spec.a11 * p / spec.sigma1_sq;
  const double z_sq = spec.a21 * spec.a21 * p / spec.sigma2_sq;
  const double pre1 =
      (p / 2.0) *
      (spec.sigma2_sq / (spec.sigma2_sq + spec.a21 * spec.a21 * p)) *
      spec.a11 * spec.a11 * f1 * f1 / spec.sigma1_sq;
  const double pre2 = spec.sigma1_sq / (2.0 * spec.a12 * spec.a12) * f2 * f2 /
                      spec.sigma2_sq;
  return make_report({block_rate(pre1, x_sq, eta - 1, eta),
                      block_rate(pre2, z_sq, eta - 1, eta)},
                     "ic-finite");
}

RateReport bc2_limit_rates(const BcSpec& spec, const SchemeParams& params) {
  require_delta(params.delta);
  require(params.q > 0.0, "q must be positive");
  if (!bc2_params_feasible(spec, params))
    throw std::invalid_argument("parameters violate the power budget");
  const double d = params.delta, q2 = params.q * params.q;
  const double one_plus_sq = (1.0 + d) * (1.0 + d);
  return make_report({half_log2_pos(q2 * one_plus_sq),
                      half_log2_pos(q2 * d * d * one_plus_sq)},
                     "bc2-limit");
}

RateReport bc2_partial_corr_limit_rates(const BcSpec& spec, double eps) {
  const ParamChoice choice = bc2_partial_corr_params(spec, eps);
  if (!choice.feasible)
    throw std::invalid_argument("power below the feasibility threshold");
  RateReport r = bc2_limit_rates(spec, choice.params);
  r.scheme = "bc2-partial-corr-limit";
  return r;
}

RateReport bc2_fullcorr_limit_rates(const BcSpec& spec) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  require(!spec.physically_degraded(),
          "degraded at full correlation (equal variances)");
  return make_report({half_log2_pos(spec.power / spec.sigma1_sq),
                      half_log2_pos(spec.power / spec.sigma2_sq)},
                     "bc2-fullcorr-limit");
}

RateReport kuser_limit_rates(const KUserSpec& spec) {
  require(spec.all_distinct(), "alphas must be pairwise distinct");
  require(spec.power > static_cast<double>(spec.users()),
          "power must exceed the number of users");
  std::vector<double> rates;
  rates.reserve(spec.alphas.size());
  for (double alpha : spec.alphas)
    rates.push_back(half_log2_pos(spec.power / (alpha * alpha)));
  return make_report(std::move(rates), "kuser-limit");
}

RateReport ic_limit_rates(const IcSpec& spec) {
  require(std::abs(spec.rho_z) == 1.0, "requires |rho| = 1");
  const double c21 = spec.rho_z * spec.sigma2() / spec.sigma1();
  const double tol = 1e-9 * std::max(1.0, std::abs(c21));
  require(std::abs(spec.a21 / spec.a11 - c21) > tol &&
              std::abs(spec.a22 / spec.a12 - c21) > tol,
          "gain ratios must differ from rho sigma2/sigma1");
  return make_report(
      {half_log2_pos(spec.a11 * spec.a11 * spec.power / spec.sigma1_sq),
       half_log2_pos(spec.a21 * spec.a21 * spec.power / spec.sigma2_sq)},
      "ic-limit");
}

RateReport ic_limit_rates_swapped(const IcSpec& spec) {
  const IcSpec swapped(spec.a22, spec.a21, spec.a12, spec.a11,
                       spec.sigma2_sq, spec.sigma1_sq, spec.rho_z,
                       spec.power);
  RateReport r = ic_limit_rates(swapped);
  std::swap(r.per_user[0], r.per_user[1]);
  r.scheme = "ic-limit-swapped";
  return r;
}

namespace {

// Large-block sum rate with q at the power-budget boundary; -inf when
// the delta is unusable.
double boundary_sum_rate(const BcSpec& spec, double delta, double* q_out) {
  if (std::abs(delta) < 1e-9 || std::abs(1.0 + delta) < 1e-9)
    return -std::numeric_limits<double>::infinity();
  double q;
  try {
    q = bc2_max_q(spec, delta);
  } catch (const std::domain_error&) {
    return -std::numeric_limits<double>::infinity();
  }
  if (!(q > 0.0) || !std::isfinite(q))
    return -std::numeric_limits<double>::infinity();
  if (q_out) *q_out = q;
  const double q2 = q * q;
  const double one_plus_sq = (1.0 + delta) * (1.0 + delta);
  return half_log2_pos(q2 * one_plus_sq) +
         half_log2_pos(q2 * delta * delta * one_plus_sq);
}

}  // namespace

Bc2SumRateOpt optimize_bc2_sum_rate(const BcSpec& spec) {
  if (std::abs(spec.rho_z) == 1.0)
    require(!spec.physically_degraded(),
            "degraded at full correlation (equal variances)");

  // 200 log-spaced candidates per sign region plus the closed-form
  // anchors, then a multiplicative zoom.
  std::vector<double> candidates;
  for (int i = 0; i < 200; ++i) {
    const double mag =
        std::exp(std::log(1e-3) + i * (std::log(1e3) - std::log(1e-3)) / 199.0);
    candidates.push_back(mag);
    candidates.push_back(-mag);
  }
  if (std::abs(spec.rho_z) < 1.0 && !spec.physically_degraded()) {
    const double s1 = spec.sigma1(), s2 = spec.sigma2();
    candidates.push_back((s1 / s2) * (s1 - spec.rho_z * s2) /
                         (s2 - spec.rho_z * s1));
  }
  if (std::abs(spec.rho_z) == 1.0)
    candidates.push_back(-spec.rho_z * spec.sigma1() / spec.sigma2());

  double best_delta = 0.0, best_sum = -std::numeric_limits<double>::infinity();
  for (double d : candidates) {
    const double sum = boundary_sum_rate(spec, d, nullptr);
    if (sum > best_sum) {
      best_sum = sum;
      best_delta = d;
    }
  }

  double span = 1.0;  // zoom span in log2 units around |delta|
  for (int round = 0; round < 4 && std::isfinite(best_sum); ++round) {
    const double center = best_delta;
    for (int i = 0; i <= 32; ++i) {
      const double u = -span + 2.0 * span * i / 32.0;
      const double d = center * std::exp2(u);
      const double sum = boundary_sum_rate(spec, d, nullptr);
      if (sum > best_sum) {
        best_sum = sum;
        best_delta = d;
      }
    }
    span *= 0.12;
  }

  Bc2SumRateOpt out;
  const double fallback = no_feedback_sum_capacity(spec);
  if (!std::isfinite(best_sum) || best_sum < fallback) {
    out.sum = fallback;
    out.used_fallback = true;
    return out;
  }
  double q = 0.0;
  boundary_sum_rate(spec, best_delta, &q);
  out.params = SchemeParams{best_delta, q, 1};
  out.sum = best_sum;
  return out;
}

}  // namespace snc
