#include "aimm/target.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "aimm/errors.hpp"
#include "aimm/gaussian.hpp"

namespace aimm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_normal_1d(double x, double mean, double variance) {
  const double r = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) -
         0.5 * r * r / variance;
}

double log_sum_exp2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

TargetDensity make_trimodal_1d() {
  TargetDensity t;
  t.dim = 1;
  t.normalized = true;
  t.name = "trimodal1d";
  t.log_density = [](const Eigen::VectorXd& x) {
    if (x.size() != 1) throw DimensionMismatch("trimodal1d: expected d=1");
    const double v = x[0];
    const double a = std::log(0.25) + log_normal_1d(v, -10.0, 1.0);
    const double b = std::log(0.50) + log_normal_1d(v, 0.0, 0.1);
    const double c = std::log(0.25) + log_normal_1d(v, 10.0, 1.0);
    return log_sum_exp2(log_sum_exp2(a, b), c);
  };
  t.exact_sampler = [](Rng& rng) {
    const double u = uniform01(rng);
    double mean, sd;
    if (u < 0.25) {
      mean = -10.0;
      sd = 1.0;
    } else if (u < 0.75) {
      mean = 0.0;
      sd = std::sqrt(0.1);
    } else {
      mean = 10.0;
      sd = 1.0;
    }
    Eigen::VectorXd x(1);
    x[0] = mean + sd * standard_normal(rng);
    return x;
  };
  return t;
}

Eigen::VectorXd banana_map(const Eigen::VectorXd& x, double b) {
  if (x.size() < 2) throw DimensionMismatch("banana_map: need d >= 2");
  Eigen::VectorXd y = x;
  y[1] = x[1] + b * x[0] * x[0] - 100.0 * b;
  return y;
}

TargetDensity make_banana(const BananaParams& p) {
  if (p.d < 2) throw DimensionMismatch("make_banana: need d >= 2");
  Eigen::VectorXd m = Eigen::VectorXd::Zero(p.d);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(p.d, p.d);
  s(0, 0) = 100.0;
  auto base = make_gaussian(m, s);
  const double b = p.b;

  TargetDensity t;
  t.dim = p.d;
  t.normalized = true;
  t.name = "banana";
  t.log_density = [base, b](const Eigen::VectorXd& x) {
    return log_density(base, banana_map(x, b));
  };
  t.exact_sampler = [base, b](Rng& rng) {
    Eigen::VectorXd z = sample(base, rng);
    z[1] = z[1] - b * z[0] * z[0] + 100.0 * b;
    return z;
  };
  return t;
}

Eigen::VectorXd ridge_map(const Eigen::VectorXd& x) {
  if (x.size() != 6) throw DimensionMismatch("ridge_map: need d = 6");
  if (x[4] == 0.0) throw SingularInput("ridge_map: fifth coordinate is zero");
  Eigen::VectorXd y(4);
  y[0] = x.prod();
  y[1] = x[1] * x[3];
  y[2] = x[0] / x[4];
  y[3] = x[2] * x[5];
  return y;
}

TargetDensity make_ridge(const Eigen::VectorXd& mu_prior,
                         const Eigen::MatrixXd& cov_prior,
                         const Eigen::VectorXd& mu_obs,
                         const Eigen::MatrixXd& cov_obs) {
  if (mu_prior.size() != 6 || mu_obs.size() != 4) {
    throw DimensionMismatch("make_ridge: prior is on R^6, observation on R^4");
  }
  auto prior = make_gaussian(mu_prior, cov_prior);
  auto lik = make_gaussian(mu_obs, cov_obs);

  TargetDensity t;
  t.dim = 6;
  t.normalized = false;
  t.name = "ridge";
  t.log_density = [prior, lik](const Eigen::VectorXd& x) {
    if (x.size() != 6) throw DimensionMismatch("ridge: expected d=6");
    if (x[4] == 0.0) return kNegInf;
    return log_density(prior, x) + log_density(lik, ridge_map(x));
  };
  return t;
}

TargetDensity make_ridge_default() {
  Eigen::VectorXd mu_prior = Eigen::VectorXd::Ones(6);
  Eigen::MatrixXd cov_prior = 0.5 * Eigen::MatrixXd::Identity(6, 6);
  Eigen::VectorXd mu_obs = ridge_map(mu_prior);
  Eigen::MatrixXd cov_obs = 0.01 * Eigen::MatrixXd::Identity(4, 4);
  return make_ridge(mu_prior, cov_prior, mu_obs, cov_obs);
}

Eigen::MatrixXd ar_matrix(double rho, int d, ArConvention convention) {
  if (!(std::abs(rho) < 1.0)) throw ValidationError("ar_matrix: need |rho| < 1");
  if (d < 1) throw ValidationError("ar_matrix: need d >= 1");
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int e = convention == ArConvention::abs_diff ? std::abs(i - j)
                                                         : std::max(i, j);
      m(i, j) = std::pow(rho, e);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NonPositiveDefinite("ar_matrix: matrix is not positive definite");
  }
  return m;
}

TargetDensity make_bimodal(const BimodalParams& p, ArConvention convention) {
  auto g1 = make_gaussian(Eigen::VectorXd::Zero(p.d),
                          ar_matrix(p.rho1, p.d, convention));
  auto g2 = make_gaussian(Eigen::VectorXd::Constant(p.d, 9.0),
                          ar_matrix(p.rho2, p.d, convention));
  const double log_l1 = std::log(p.lambda);
  const double log_l2 = std::log(1.0 - p.lambda);
  const double lo = p.box_lower;
  const double hi = p.box_upper;

  TargetDensity t;
  t.dim = p.d;
  t.normalized = false;  // box truncation
  t.name = "bimodal";
  t.log_density = [g1, g2, log_l1, log_l2, lo, hi](const Eigen::VectorXd& x) {
    if (x.size() != g1.mean.size()) {
      throw DimensionMismatch("bimodal: dimension mismatch");
    }
    if ((x.array() < lo).any() || (x.array() > hi).any()) return kNegInf;
    return log_sum_exp2(log_l1 + log_density(g1, x), log_l2 + log_density(g2, x));
  };
  const double lambda = p.lambda;
  t.exact_sampler = [g1, g2, lambda, lo, hi](Rng& rng) {
    for (;;) {
      const auto& g = uniform01(rng) < lambda ? g1 : g2;
      Eigen::VectorXd x = sample(g, rng);
      if ((x.array() >= lo).all() && (x.array() <= hi).all()) return x;
    }
  };
  return t;
}

}  // namespace aimm
