#ifndef AIMM_GAUSSIAN_HPP
#define AIMM_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <vector>

#include "aimm/rng.hpp"

namespace aimm {

/// Dense multivariate Gaussian with a cached Cholesky factor.
/// Immutable after construction; safe for concurrent reads.
struct GaussianComponent {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd chol_lower;   // covariance = chol_lower * chol_lower^T
  double log_norm_const = 0.0;  // -(d/2) log 2pi - sum log diag(chol_lower)

  int dim() const { return static_cast<int>(mean.size()); }
};

/// Builds a component, jitter-regularizing near-singular covariances.
/// On factorization failure, jitter*trace(cov)/d is added to the diagonal
/// and the attempt is repeated up to 3 times with jitter scaled by 10.
GaussianComponent make_gaussian(const Eigen::VectorXd& mean,
                                const Eigen::MatrixXd& covariance,
                                double jitter = 1e-8);

double log_density(const GaussianComponent& g, const Eigen::VectorXd& x);

Eigen::VectorXd sample(const GaussianComponent& g, Rng& rng);

/// sqrt((x-y)^T Sigma0^{-1} (x-y)) using the metric's triangular factor.
double mahalanobis(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const GaussianComponent& metric);

/// Unbiased sample covariance (divisor count-1). Requires >= 2 points.
Eigen::MatrixXd empirical_covariance(const std::vector<Eigen::VectorXd>& points);

}  // namespace aimm

#endif
