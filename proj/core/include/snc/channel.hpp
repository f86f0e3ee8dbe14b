#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace snc {

// Two-receiver Gaussian broadcast channel: a single transmitter subject
// to an average block-power budget, and an IID pair of centered noises
// with variances sigma1_sq, sigma2_sq and correlation rho_z.
struct BcSpec {
  double sigma1_sq;
  double sigma2_sq;
  double rho_z;
  double power;

  BcSpec(double sigma1_sq, double sigma2_sq, double rho_z, double power);

  double sigma1() const;
  double sigma2() const;

  // True when one receiver's output is a noisier version of the other's
  // (the correlation equals one of the standard-deviation ratios).
  // Feedback is useless in that case.
  bool physically_degraded(double tol = 1e-12) const;
};

// Independent additive noises on the two feedback links. Strictly
// positive variances are required by the noisy-feedback bounds; zero is
// accepted only as the noise-free tag.
struct FeedbackNoiseSpec {
  double sigma_w1_sq;
  double sigma_w2_sq;

  FeedbackNoiseSpec(double sigma_w1_sq, double sigma_w2_sq);

  bool noise_free() const;
};

// K-receiver broadcast channel whose noise covariance has rank one:
// receiver k sees X + alpha_k * Z for one shared standard normal
// process Z, alpha_k being the signed standard deviation at receiver k.
struct KUserSpec {
  std::vector<double> alphas;
  double power;

  KUserSpec(std::vector<double> alphas, double power);

  int users() const;
  int distinct_alphas() const;
  bool all_distinct() const;
};

// Two-transmitter, two-receiver Gaussian interference channel with
// one-sided feedback. Both transmitters have the same power budget.
struct IcSpec {
  double a11, a12, a21, a22;
  double sigma1_sq, sigma2_sq, rho_z;
  double power;

  IcSpec(double a11, double a12, double a21, double a22, double sigma1_sq,
         double sigma2_sq, double rho_z, double power);

  double sigma1() const;
  double sigma2() const;
};

// Symmetric positive-semidefinite per-time noise covariance. Rank-one
// instances are detected at construction so that sampling reproduces
// the exact linear dependence between coordinates instead of factoring
// a singular matrix.
class NoiseCovariance {
 public:
  explicit NoiseCovariance(Eigen::MatrixXd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  bool rank_one() const { return kind_ == Kind::RankOne; }
  bool zero() const { return kind_ == Kind::Zero; }

  // For rank-one covariances: the vector with m = v v^T and v[0] > 0.
  const Eigen::VectorXd& rank_one_factor() const;

  // n independent draws, one per row. Draw i is a pure function of
  // (seed, i).
  Eigen::MatrixXd sample(int n, std::uint64_t seed) const;

 private:
  enum class Kind { Zero, RankOne, Factor };

  Eigen::MatrixXd m_;
  Kind kind_;
  Eigen::VectorXd v_;       // rank-one factor
  Eigen::MatrixXd factor_;  // PSD square root for the general case
};

NoiseCovariance bc_noise_cov(const BcSpec& spec);
NoiseCovariance kuser_noise_cov(const KUserSpec& spec);
NoiseCovariance ic_noise_cov(const IcSpec& spec);

Eigen::MatrixXd sample_noise(const NoiseCovariance& cov, int n,
                             std::uint64_t seed);

}  // namespace snc
