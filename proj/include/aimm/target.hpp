#ifndef AIMM_TARGET_HPP
#define AIMM_TARGET_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "aimm/rng.hpp"

namespace aimm {

/// An evaluable (possibly unnormalized) log-density on R^d, with an exact
/// sampler where one exists. Immutable; safe for concurrent evaluation.
struct TargetDensity {
  int dim = 0;
  bool normalized = false;
  std::string name;
  std::function<double(const Eigen::VectorXd&)> log_density;
  std::optional<std::function<Eigen::VectorXd(Rng&)>> exact_sampler;
};

struct BananaParams {
  double b = 0.1;
  int d = 2;
  // Gaussian parameters of the untwisted distribution: mean 0, diag(100,1,..,1).
};

enum class ArConvention {
  abs_diff,   // rho^|i-j|
  max_index,  // rho^(max(i,j)-1), as printed; not PD for rho=-0.95
};

struct BimodalParams {
  int d = 4;
  double lambda = 0.5;
  double rho1 = -0.95;
  double rho2 = 0.95;
  double box_lower = -3.0;
  double box_upper = 12.0;
  // mu1 = 0_d, mu2 = 9_d
};

/// pi_1 = 1/4 N(-10,1) + 1/2 N(0,.1) + 1/4 N(10,1), variance parameterization.
TargetDensity make_trimodal_1d();

/// Banana twist: coordinate 2 becomes x2 + b*x1^2 - 100b, others unchanged.
Eigen::VectorXd banana_map(const Eigen::VectorXd& x, double b);

TargetDensity make_banana(const BananaParams& p);

/// g(x) = (prod x_i, x2*x4, x1/x5, x3*x6); requires x5 != 0.
Eigen::VectorXd ridge_map(const Eigen::VectorXd& x);

TargetDensity make_ridge(const Eigen::VectorXd& mu_prior,
                         const Eigen::MatrixXd& cov_prior,
                         const Eigen::VectorXd& mu_obs,
                         const Eigen::MatrixXd& cov_obs);

/// Default ridge parameters: mu_i = 1_6, Gamma_i = 0.5 I, mu_o = g(mu_i),
/// Gamma_o = 0.01 I. Mass concentrates on a thin curved manifold.
TargetDensity make_ridge_default();

Eigen::MatrixXd ar_matrix(double rho, int d, ArConvention convention);

TargetDensity make_bimodal(const BimodalParams& p,
                           ArConvention convention = ArConvention::abs_diff);

}  // namespace aimm

#endif
