#include <doctest.h>

#include <cmath>

#include "aimm/errors.hpp"
#include "aimm/target.hpp"

using namespace aimm;

namespace {

double quadrature_1d(const TargetDensity& t, double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(1);
    x[0] = lo + i * h;
    const double f = std::exp(t.log_density(x));
    total += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  return total * h;
}

}  // namespace

TEST_CASE("trimodal target integrates to one") {
  const auto t = make_trimodal_1d();
  CHECK(quadrature_1d(t, -20.0, 20.0, 8001) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("trimodal exact sampler reproduces the right-tail mass") {
  const auto t = make_trimodal_1d();
  Rng rng(3);
  const int n = 200000;
  int above = 0;
  for (int i = 0; i < n; ++i) {
    if ((*t.exact_sampler)(rng)[0] > 5.0) ++above;
  }
  // P(X > 5) = 0.25 P(N(10,1) > 5) + negligible terms = 0.25 to 4 decimals.
  CHECK(static_cast<double>(above) / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("trimodal mode heights reflect the component variances") {
  const auto t = make_trimodal_1d();
  Eigen::VectorXd center(1), outer(1);
  center << 0.0;
  outer << 10.0;
  // Central component: weight .5, variance .1, so its peak is the tallest.
  CHECK(t.log_density(center) > t.log_density(outer));
}

TEST_CASE("banana map twists only the second coordinate") {
  Eigen::VectorXd x(3);
  x << 2.0, 1.0, -4.0;
  const Eigen::VectorXd y = banana_map(x, 0.1);
  CHECK(y[0] == 2.0);
  CHECK(y[1] == doctest::Approx(1.0 + 0.1 * 4.0 - 10.0));
  CHECK(y[2] == -4.0);
  CHECK_THROWS_AS(banana_map(Eigen::VectorXd::Zero(1), 0.1), DimensionMismatch);
}

TEST_CASE("banana exact sampler agrees with the analytic pushforward") {
  BananaParams p;
  const auto t = make_banana(p);
  Rng rng(5);
  const int n = 200000;
  double sum_x1 = 0.0, sum_x1_sq = 0.0, sum_twisted = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = (*t.exact_sampler)(rng);
    sum_x1 += x[0];
    sum_x1_sq += x[0] * x[0];
    sum_twisted += x[1] + p.b * x[0] * x[0] - 100.0 * p.b;
  }
  CHECK(sum_x1 / n == doctest::Approx(0.0).epsilon(1).scale(0.2));
  CHECK(sum_x1_sq / n == doctest::Approx(100.0).epsilon(0.03));
  // The untwisted second coordinate is standard normal.
  CHECK(sum_twisted / n == doctest::Approx(0.0).epsilon(1).scale(0.05));
}

TEST_CASE("banana density is the base density at the mapped point") {
  BananaParams p;
  const auto t = make_banana(p);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = (*t.exact_sampler)(rng);
    const Eigen::VectorXd y = banana_map(x, p.b);
    const double expected = -0.5 * std::log(2.0 * 3.14159265358979323846 * 100.0) -
                            0.5 * y[0] * y[0] / 100.0 -
                            0.5 * std::log(2.0 * 3.14159265358979323846) -
                            0.5 * y[1] * y[1];
    CHECK(t.log_density(x) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("ridge map values and singular input") {
  Eigen::VectorXd x(6);
  x << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  const Eigen::VectorXd y = ridge_map(x);
  CHECK(y[0] == doctest::Approx(720.0));
  CHECK(y[1] == doctest::Approx(8.0));
  CHECK(y[2] == doctest::Approx(0.2));
  CHECK(y[3] == doctest::Approx(18.0));

  Eigen::VectorXd bad = x;
  bad[4] = 0.0;
  CHECK_THROWS_AS(ridge_map(bad), SingularInput);
  CHECK_THROWS_AS(ridge_map(Eigen::VectorXd::Zero(4)), DimensionMismatch);
}

TEST_CASE("ridge default target peaks near the prior mean") {
  const auto t = make_ridge_default();
  const Eigen::VectorXd mu = Eigen::VectorXd::Ones(6);
  Eigen::VectorXd off = mu;
  off[0] += 1.0;
  CHECK(t.log_density(mu) > t.log_density(off));
  Eigen::VectorXd singular = mu;
  singular[4] = 0.0;
  CHECK(t.log_density(singular) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("ar_matrix entries and positive definiteness") {
  const Eigen::MatrixXd m = ar_matrix(0.5, 3, ArConvention::abs_diff);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == doctest::Approx(0.5));
  CHECK(m(0, 2) == doctest::Approx(0.25));
  CHECK(m(2, 0) == doctest::Approx(0.25));

  const Eigen::MatrixXd neg = ar_matrix(-0.95, 4, ArConvention::abs_diff);
  CHECK(neg(0, 1) == doctest::Approx(-0.95));

  // The printed rho^{max(i,j)-1} form is not PD at strongly negative rho.
  CHECK_THROWS_AS(ar_matrix(-0.95, 4, ArConvention::max_index),
                  NonPositiveDefinite);
  CHECK_THROWS_AS(ar_matrix(1.0, 3, ArConvention::abs_diff), ValidationError);
}

TEST_CASE("bimodal target vanishes outside the box") {
  BimodalParams p;
  const auto t = make_bimodal(p);
  Eigen::VectorXd inside = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd outside = Eigen::VectorXd::Constant(4, 13.0);
  CHECK(std::isfinite(t.log_density(inside)));
  CHECK(t.log_density(outside) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("bimodal exact sampler splits evenly between the modes") {
  BimodalParams p;
  const auto t = make_bimodal(p);
  Rng rng(21);
  const int n = 100000;
  const Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(4);
  const Eigen::VectorXd mu2 = Eigen::VectorXd::Constant(4, 9.0);
  int near_first = 0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = (*t.exact_sampler)(rng);
    CHECK((x.array() >= p.box_lower).all());
    CHECK((x.array() <= p.box_upper).all());
    if ((x - mu1).squaredNorm() <= (x - mu2).squaredNorm()) ++near_first;
  }
  CHECK(static_cast<double>(near_first) / n == doctest::Approx(0.5).epsilon(0.02));
}
