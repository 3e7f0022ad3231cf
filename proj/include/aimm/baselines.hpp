#ifndef AIMM_BASELINES_HPP
#define AIMM_BASELINES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "aimm/sampler.hpp"

namespace aimm {

// The four comparison samplers, all emitting the same Trace schema as AIMM.
// For the random-walk samplers, log_weights_at_proposals records the log
// target density at the proposed point.

struct RwmhConfig {
  Eigen::MatrixXd scale;  // proposal covariance; default (2.38^2/d) sigma0
  long iterations = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd initial_state;  // optional; zero vector when empty

  static RwmhConfig defaults(const Eigen::MatrixXd& sigma0, long iterations,
                             std::uint64_t seed);
  void validate(int dim) const;
};

struct AmhConfig {
  Eigen::MatrixXd sigma0;
  long n0 = 1000;
  double p_fixed = 0.05;
  double s_d = 0.0;  // 0 means 2.4^2/d
  long iterations = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd initial_state;

  void validate(int dim) const;
};

struct AgmConfig {
  int n_components = 10;  // M, fixed for the whole run
  Eigen::MatrixXd init_cov;
  // Learning rate lambda_n; default 1/(n+1).
  std::function<double(long)> learning_rate;
  long iterations = 0;
  std::uint64_t seed = 0;

  void validate(int dim) const;
};

Trace run_rwmh(const TargetDensity& target, const RwmhConfig& cfg);

/// Fixed-proposal independence MH: AIMM with adaptation disabled.
Trace run_im(const TargetDensity& target, const DefensiveKernel& q0,
             long iterations, std::uint64_t seed);

Trace run_amh(const TargetDensity& target, const AmhConfig& cfg);

/// Independence MH with an M-component Gaussian mixture proposal updated by
/// an online-EM style rule after every transition. The exact update of the
/// cited AGM variant is not reproduced; this stands in as a documented
/// approximation behind the same interface.
Trace run_agm(const TargetDensity& target, const DefensiveKernel& init_centers,
              const AgmConfig& cfg);

}  // namespace aimm

#endif
