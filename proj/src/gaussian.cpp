#include "aimm/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "aimm/errors.hpp"

namespace aimm {

namespace {

constexpr double kSymmetryTol = 1e-10;

bool try_cholesky(const Eigen::MatrixXd& cov, Eigen::MatrixXd& lower) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return false;
  lower = llt.matrixL();
  // LLT can succeed numerically on matrices with ~0 pivots; reject those.
  for (int i = 0; i < lower.rows(); ++i) {
    if (!(lower(i, i) > 0.0) || !std::isfinite(lower(i, i))) return false;
  }
  return true;
}

}  // namespace

GaussianComponent make_gaussian(const Eigen::VectorXd& mean,
                                const Eigen::MatrixXd& covariance,
                                double jitter) {
  const int d = static_cast<int>(mean.size());
  if (covariance.rows() != d || covariance.cols() != d) {
    std::ostringstream msg;
    msg << "make_gaussian: mean has length " << d << " but covariance is "
        << covariance.rows() << "x" << covariance.cols();
    throw DimensionMismatch(msg.str());
  }
  const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "make_gaussian: covariance asymmetry " << asym << " exceeds "
        << kSymmetryTol;
    throw SymmetryViolation(msg.str());
  }

  GaussianComponent g;
  g.mean = mean;
  g.covariance = covariance;

  const double diag_scale = covariance.trace() / d;
  Eigen::MatrixXd cov = covariance;
  double eps = jitter;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    if (try_cholesky(cov, g.chol_lower)) {
      g.covariance = cov;
      g.log_norm_const = -0.5 * d * std::log(2.0 * std::numbers::pi);
      for (int i = 0; i < d; ++i) g.log_norm_const -= std::log(g.chol_lower(i, i));
      return g;
    }
    if (attempt == 3) break;
    const double bump = eps * (diag_scale > 0.0 ? diag_scale : 1.0);
    cov = covariance + bump * Eigen::MatrixXd::Identity(d, d);
    eps *= 10.0;
  }
  throw NonPositiveDefinite(
      "make_gaussian: covariance is not positive definite after jitter retries");
}

double log_density(const GaussianComponent& g, const Eigen::VectorXd& x) {
  if (x.size() != g.mean.size()) {
    throw DimensionMismatch("log_density: point dimension does not match component");
  }
  const Eigen::VectorXd z =
      g.chol_lower.triangularView<Eigen::Lower>().solve(x - g.mean);
  return g.log_norm_const - 0.5 * z.squaredNorm();
}

Eigen::VectorXd sample(const GaussianComponent& g, Rng& rng) {
  return g.mean + g.chol_lower * standard_normal_vector(g.dim(), rng);
}

double mahalanobis(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const GaussianComponent& metric) {
  if (x.size() != y.size() || x.size() != metric.mean.size()) {
    throw DimensionMismatch("mahalanobis: dimension mismatch");
  }
  const Eigen::VectorXd z =
      metric.chol_lower.triangularView<Eigen::Lower>().solve(x - y);
  return z.norm();
}

Eigen::MatrixXd empirical_covariance(const std::vector<Eigen::VectorXd>& points) {
  if (points.size() < 2) {
    throw TooFewPoints("empirical_covariance: need at least 2 points");
  }
  const int d = static_cast<int>(points.front().size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionMismatch("empirical_covariance: ragged input");
    mean += p;
  }
  mean /= static_cast<double>(points.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : points) {
    const Eigen::VectorXd r = p - mean;
    cov.noalias() += r * r.transpose();
  }
  cov /= static_cast<double>(points.size() - 1);
  return cov;
}

}  // namespace aimm
