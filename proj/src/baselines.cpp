#include "aimm/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "aimm/errors.hpp"
#include "aimm/running_covariance.hpp"

namespace aimm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Trace make_empty_trace(long iterations, int d, const Eigen::VectorXd& x0) {
  Trace t;
  t.states.resize(iterations + 1, d);
  t.states.row(0) = x0;
  t.proposal_points.resize(iterations, d);
  t.accept_flags.reserve(iterations);
  t.log_weights_at_proposals.reserve(iterations);
  t.component_count_series.reserve(iterations);
  return t;
}

bool metropolis_accept(double log_ratio, Rng& rng) {
  const double u = uniform01(rng);
  return log_ratio >= 0.0 || std::log(u) < log_ratio;
}

}  // namespace

RwmhConfig RwmhConfig::defaults(const Eigen::MatrixXd& sigma0, long iterations,
                                std::uint64_t seed) {
  RwmhConfig cfg;
  const double d = static_cast<double>(sigma0.rows());
  cfg.scale = (2.38 * 2.38 / d) * sigma0;
  cfg.iterations = iterations;
  cfg.seed = seed;
  return cfg;
}

void RwmhConfig::validate(int dim) const {
  if (scale.rows() != dim || scale.cols() != dim) {
    throw ValidationError("RwmhConfig: scale dimension mismatch");
  }
  if (!(scale.diagonal().minCoeff() > 0.0)) {
    throw ValidationError("RwmhConfig: proposal scale must be positive definite");
  }
  if (iterations < 0) throw ValidationError("RwmhConfig: iterations must be >= 0");
}

Trace run_rwmh(const TargetDensity& target, const RwmhConfig& cfg) {
  const int d = target.dim;
  cfg.validate(d);
  Rng rng(cfg.seed);
  const auto step_kernel =
      make_gaussian(Eigen::VectorXd::Zero(d), cfg.scale);

  Eigen::VectorXd x = cfg.initial_state.size() == d ? cfg.initial_state
                                                    : Eigen::VectorXd::Zero(d);
  double log_pi = target.log_density(x);
  Trace trace = make_empty_trace(cfg.iterations, d, x);

  const auto t0 = std::chrono::steady_clock::now();
  for (long n = 0; n < cfg.iterations; ++n) {
    const Eigen::VectorXd y = x + sample(step_kernel, rng);
    const double log_pi_y = target.log_density(y);
    // Symmetric proposal: acceptance depends only on the target ratio.
    const double log_ratio = log_pi == kNegInf ? 0.0 : log_pi_y - log_pi;
    const bool accept = log_pi_y != kNegInf && metropolis_accept(log_ratio, rng);
    trace.proposal_points.row(n) = y;
    trace.accept_flags.push_back(accept ? 1 : 0);
    trace.log_weights_at_proposals.push_back(log_pi_y);
    trace.component_count_series.push_back(0);
    if (accept) {
      x = y;
      log_pi = log_pi_y;
    }
    trace.states.row(n + 1) = x;
  }
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return trace;
}

Trace run_im(const TargetDensity& target, const DefensiveKernel& q0,
             long iterations, std::uint64_t seed) {
  AimmConfig cfg = AimmConfig::defaults(target.dim);
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.n0 = kNeverAdapt;
  return run_aimm(target, q0, cfg).trace;
}

void AmhConfig::validate(int dim) const {
  if (sigma0.rows() != dim || sigma0.cols() != dim) {
    throw ValidationError("AmhConfig: sigma0 dimension mismatch");
  }
  if (!(p_fixed > 0.0 && p_fixed < 1.0)) {
    throw ValidationError("AmhConfig: p_fixed must lie in (0,1)");
  }
  if (s_d < 0.0) throw ValidationError("AmhConfig: s_d must be >= 0");
  if (iterations < 0) throw ValidationError("AmhConfig: iterations must be >= 0");
  if (n0 < 0) throw ValidationError("AmhConfig: n0 must be >= 0");
}

Trace run_amh(const TargetDensity& target, const AmhConfig& cfg) {
  const int d = target.dim;
  cfg.validate(d);
  Rng rng(cfg.seed);
  const double s_d = cfg.s_d > 0.0 ? cfg.s_d : 2.4 * 2.4 / d;
  const auto fixed_kernel = make_gaussian(Eigen::VectorXd::Zero(d), cfg.sigma0);

  Eigen::VectorXd x = cfg.initial_state.size() == d ? cfg.initial_state
                                                    : Eigen::VectorXd::Zero(d);
  double log_pi = target.log_density(x);
  Trace trace = make_empty_trace(cfg.iterations, d, x);

  RunningCovariance running;
  running.add(x);

  const auto t0 = std::chrono::steady_clock::now();
  for (long n = 0; n < cfg.iterations; ++n) {
    Eigen::VectorXd step;
    if (n < cfg.n0 || running.count() < 2 || uniform01(rng) < cfg.p_fixed) {
      step = sample(fixed_kernel, rng);
    } else {
      step = sample(make_gaussian(Eigen::VectorXd::Zero(d),
                                  s_d * running.covariance()),
                    rng);
    }
    const Eigen::VectorXd y = x + step;
    const double log_pi_y = target.log_density(y);
    const double log_ratio = log_pi == kNegInf ? 0.0 : log_pi_y - log_pi;
    const bool accept = log_pi_y != kNegInf && metropolis_accept(log_ratio, rng);
    trace.proposal_points.row(n) = y;
    trace.accept_flags.push_back(accept ? 1 : 0);
    trace.log_weights_at_proposals.push_back(log_pi_y);
    trace.component_count_series.push_back(0);
    if (accept) {
      x = y;
      log_pi = log_pi_y;
    }
    trace.states.row(n + 1) = x;
    running.add(x);
  }
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return trace;
}

void AgmConfig::validate(int dim) const {
  if (n_components <= 0) {
    throw ValidationError("AgmConfig: n_components must be > 0");
  }
  if (init_cov.rows() != dim || init_cov.cols() != dim) {
    throw ValidationError("AgmConfig: init_cov dimension mismatch");
  }
  if (iterations < 0) throw ValidationError("AgmConfig: iterations must be >= 0");
}

Trace run_agm(const TargetDensity& target, const DefensiveKernel& init_centers,
              const AgmConfig& cfg) {
  const int d = target.dim;
  cfg.validate(d);
  Rng rng(cfg.seed);
  const int m = cfg.n_components;
  const auto learning_rate =
      cfg.learning_rate ? cfg.learning_rate
                        : [](long n) { return 1.0 / static_cast<double>(n + 1); };

  std::vector<GaussianComponent> comps;
  std::vector<double> weights(m, 1.0 / m);
  comps.reserve(m);
  for (int l = 0; l < m; ++l) {
    comps.push_back(make_gaussian(init_centers.sample(rng), cfg.init_cov));
  }

  auto mixture_log_density = [&](const Eigen::VectorXd& p) {
    double best = kNegInf;
    std::vector<double> terms(m);
    for (int l = 0; l < m; ++l) {
      terms[l] = std::log(weights[l]) + log_density(comps[l], p);
      best = std::max(best, terms[l]);
    }
    if (best == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - best);
    return best + std::log(s);
  };
  auto mixture_sample = [&](Rng& r) {
    double u = uniform01(r);
    int pick = m - 1;
    for (int l = 0; l < m; ++l) {
      u -= weights[l];
      if (u <= 0.0) {
        pick = l;
        break;
      }
    }
    return sample(comps[pick], r);
  };

  Eigen::VectorXd x = mixture_sample(rng);
  double log_pi = target.log_density(x);
  double log_q = mixture_log_density(x);
  Trace trace = make_empty_trace(cfg.iterations, d, x);

  const auto t0 = std::chrono::steady_clock::now();
  for (long n = 0; n < cfg.iterations; ++n) {
    const Eigen::VectorXd y = mixture_sample(rng);
    const double log_pi_y = target.log_density(y);
    const double log_q_y = mixture_log_density(y);
    const double log_w_y = log_pi_y - log_q_y;
    const double log_w_x = log_pi - log_q;
    const bool accept = metropolis_accept(
        acceptance_log_prob(log_w_y, log_w_x), rng);
    trace.proposal_points.row(n) = y;
    trace.accept_flags.push_back(accept ? 1 : 0);
    trace.log_weights_at_proposals.push_back(log_w_y);
    trace.component_count_series.push_back(m);
    if (accept) {
      x = y;
      log_pi = log_pi_y;
    }
    trace.states.row(n + 1) = x;

    // Deterministic parameter update from the realized state.
    std::vector<double> resp(m);
    double best = kNegInf;
    for (int l = 0; l < m; ++l) {
      resp[l] = std::log(weights[l]) + log_density(comps[l], x);
      best = std::max(best, resp[l]);
    }
    if (best != kNegInf) {
      double total = 0.0;
      for (double& r : resp) {
        r = std::exp(r - best);
        total += r;
      }
      const double lambda = learning_rate(n);
      for (int l = 0; l < m; ++l) {
        const double r = resp[l] / total;
        weights[l] += lambda * (r - weights[l]);
        if (lambda * r < 1e-12) continue;  // negligible; skip the refactorization
        const Eigen::VectorXd residual = x - comps[l].mean;
        const Eigen::VectorXd new_mean = comps[l].mean + lambda * r * residual;
        Eigen::MatrixXd new_cov =
            comps[l].covariance +
            lambda * r * (residual * residual.transpose() - comps[l].covariance);
        comps[l] = make_gaussian(new_mean, new_cov, 1e-8);
      }
    }
    log_q = mixture_log_density(x);
  }
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return trace;
}

}  // namespace aimm
