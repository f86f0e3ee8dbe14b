#include "snc/channel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "snc/rng.hpp"

namespace snc {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

BcSpec::BcSpec(double s1, double s2, double rho, double p)
    : sigma1_sq(s1), sigma2_sq(s2), rho_z(rho), power(p) {
  require(s1 > 0.0 && s2 > 0.0, "noise variances must be strictly positive");
  require(rho >= -1.0 && rho <= 1.0, "noise correlation must lie in [-1, 1]");
  require(p > 0.0, "power must be positive");
}

double BcSpec::sigma1() const { return std::sqrt(sigma1_sq); }
double BcSpec::sigma2() const { return std::sqrt(sigma2_sq); }

bool BcSpec::physically_degraded(double tol) const {
  const double r12 = sigma1() / sigma2();
  const double r21 = sigma2() / sigma1();
  return std::abs(rho_z - r12) <= tol || std::abs(rho_z - r21) <= tol;
}

FeedbackNoiseSpec::FeedbackNoiseSpec(double w1, double w2)
    : sigma_w1_sq(w1), sigma_w2_sq(w2) {
  require(w1 >= 0.0 && w2 >= 0.0, "feedback noise variances must be >= 0");
}

bool FeedbackNoiseSpec::noise_free() const {
  return sigma_w1_sq == 0.0 && sigma_w2_sq == 0.0;
}

KUserSpec::KUserSpec(std::vector<double> a, double p)
    : alphas(std::move(a)), power(p) {
  require(alphas.size() >= 2, "need at least two receivers");
  for (double alpha : alphas)
    require(alpha != 0.0, "every alpha must be nonzero");
  // Receiver 1 is the reference for the shared noise process, so its
  // alpha is a plain standard deviation.
  require(alphas[0] > 0.0, "alpha_1 must be positive");
  require(p > 0.0, "power must be positive");
}

int KUserSpec::users() const { return static_cast<int>(alphas.size()); }

int KUserSpec::distinct_alphas() const {
  std::set<double> values(alphas.begin(), alphas.end());
  return static_cast<int>(values.size());
}

bool KUserSpec::all_distinct() const { return distinct_alphas() == users(); }

IcSpec::IcSpec(double a11_, double a12_, double a21_, double a22_, double s1,
               double s2, double rho, double p)
    : a11(a11_),
      a12(a12_),
      a21(a21_),
      a22(a22_),
      sigma1_sq(s1),
      sigma2_sq(s2),
      rho_z(rho),
      power(p) {
  require(a11 != 0.0 && a12 != 0.0 && a21 != 0.0 && a22 != 0.0,
          "all four channel gains must be nonzero");
  require(s1 > 0.0 && s2 > 0.0, "noise variances must be strictly positive");
  require(rho >= -1.0 && rho <= 1.0, "noise correlation must lie in [-1, 1]");
  require(p > 0.0, "power must be positive");
}

double IcSpec::sigma1() const { return std::sqrt(sigma1_sq); }
double IcSpec::sigma2() const { return std::sqrt(sigma2_sq); }

NoiseCovariance::NoiseCovariance(Eigen::MatrixXd m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols() && m_.rows() >= 1,
          "covariance must be square");
  const double scale = std::max(1e-300, m_.cwiseAbs().maxCoeff());
  require((m_ - m_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "covariance must be symmetric");

  if (m_.cwiseAbs().maxCoeff() == 0.0) {
    kind_ = Kind::Zero;
    return;
  }

  // Rank-one test against the factor built from the first column. The
  // samplers below rely on this to realize singular covariances by exact
  // proportionality.
  if (m_(0, 0) > 0.0) {
    Eigen::VectorXd v = m_.col(0) / std::sqrt(m_(0, 0));
    if ((m_ - v * v.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      kind_ = Kind::RankOne;
      v_ = std::move(v);
      return;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_);
  const double lambda_max = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, lambda_max))
    throw std::invalid_argument("covariance has a negative eigenvalue");
  Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  kind_ = Kind::Factor;
  factor_ = es.eigenvectors() * clamped.asDiagonal();
}

const Eigen::VectorXd& NoiseCovariance::rank_one_factor() const {
  if (kind_ != Kind::RankOne)
    throw std::logic_error("covariance is not rank one");
  return v_;
}

Eigen::MatrixXd NoiseCovariance::sample(int n, std::uint64_t seed) const {
  require(n >= 1, "need at least one draw");
  const int k = dim();
  Eigen::MatrixXd out(n, k);
  if (kind_ == Kind::Zero) {
    out.setZero();
    return out;
  }
  for (int i = 0; i < n; ++i) {
    SplitMix64 eng = substream(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (kind_ == Kind::RankOne) {
      out.row(i) = v_.transpose() * gauss(eng);
    } else {
      Eigen::VectorXd g(k);
      for (int j = 0; j < k; ++j) g(j) = gauss(eng);
      out.row(i) = (factor_ * g).transpose();
    }
  }
  return out;
}

NoiseCovariance bc_noise_cov(const BcSpec& spec) {
  Eigen::MatrixXd m(2, 2);
  const double cross = spec.rho_z * spec.sigma1() * spec.sigma2();
  m << spec.sigma1_sq, cross, cross, spec.sigma2_sq;
  return NoiseCovariance(std::move(m));
}

NoiseCovariance kuser_noise_cov(const KUserSpec& spec) {
  const int k = spec.users();
  Eigen::VectorXd a(k);
  for (int i = 0; i < k; ++i) a(i) = spec.alphas[static_cast<size_t>(i)];
  Eigen::MatrixXd m = a * a.transpose();
  return NoiseCovariance(std::move(m));
}

NoiseCovariance ic_noise_cov(const IcSpec& spec) {
  Eigen::MatrixXd m(2, 2);
  const double cross = spec.rho_z * spec.sigma1() * spec.sigma2();
  m << spec.sigma1_sq, cross, cross, spec.sigma2_sq;
  return NoiseCovariance(std::move(m));
}

Eigen::MatrixXd sample_noise(const NoiseCovariance& cov, int n,
                             std::uint64_t seed) {
  return cov.sample(n, seed);
}

}  // namespace snc
