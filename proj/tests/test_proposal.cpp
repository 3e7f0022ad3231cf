#include <doctest.h>

#include <cmath>

#include "aimm/errors.hpp"
#include "aimm/proposal.hpp"

using namespace aimm;

namespace {

DefensiveKernel standard_q0(int d) {
  return DefensiveKernel::gaussian(
      make_gaussian(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d)));
}

double quadrature_1d(const IncrementalProposal& p, double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(1);
    x[0] = lo + i * h;
    const double f = std::exp(p.log_density(x));
    total += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  return total * h;
}

}  // namespace

TEST_CASE("omega follows 1/(1 + kappa M)") {
  IncrementalProposal p(standard_q0(1), 0.1);
  CHECK(p.omega() == 1.0);
  for (int m = 1; m <= 5; ++m) {
    p.add_component(Eigen::VectorXd::Constant(1, double(m)),
                    Eigen::MatrixXd::Identity(1, 1), 1.0);
    CHECK(p.omega() == doctest::Approx(1.0 / (1.0 + 0.1 * m)));
  }
  CHECK(p.component_count() == 5);
}

TEST_CASE("proposal density stays normalized as components accumulate") {
  Rng rng(31);
  IncrementalProposal p(standard_q0(1), 0.1);
  CHECK(quadrature_1d(p, -40.0, 40.0, 8001) == doctest::Approx(1.0).epsilon(0.01));
  for (int m = 0; m < 6; ++m) {
    Eigen::VectorXd mean(1);
    mean << 10.0 * uniform01(rng) - 5.0;
    p.add_component(mean, (0.2 + uniform01(rng)) * Eigen::MatrixXd::Identity(1, 1),
                    0.1 + uniform01(rng));
    CHECK(quadrature_1d(p, -40.0, 40.0, 8001) ==
          doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("defensive kernel keeps a floor under the mixture density") {
  IncrementalProposal p(standard_q0(1), 0.1);
  p.add_component(Eigen::VectorXd::Constant(1, 30.0),
                  0.1 * Eigen::MatrixXd::Identity(1, 1), 5.0);
  Eigen::VectorXd x(1);
  for (double v : {-8.0, -1.0, 0.0, 3.0, 15.0}) {
    x[0] = v;
    const double floor = std::log(p.omega()) + standard_q0(1).log_density(x);
    CHECK(p.log_density(x) >= floor - 1e-12);
  }
}

TEST_CASE("uniform box kernel density and support") {
  Eigen::VectorXd lo(2), hi(2);
  lo << -1.0, 0.0;
  hi << 1.0, 4.0;
  const auto box = DefensiveKernel::uniform_box(lo, hi);
  Eigen::VectorXd in(2), out(2);
  in << 0.0, 2.0;
  out << 0.0, 5.0;
  CHECK(box.log_density(in) == doctest::Approx(-std::log(8.0)));
  CHECK(box.log_density(out) == -std::numeric_limits<double>::infinity());

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::VectorXd x = box.sample(rng);
    CHECK((x.array() >= lo.array()).all());
    CHECK((x.array() <= hi.array()).all());
  }
  CHECK_THROWS_AS(DefensiveKernel::uniform_box(hi, lo), ValidationError);
}

TEST_CASE("normalized weights sum to one and respect ratios") {
  IncrementalProposal p(standard_q0(1), 0.1);
  p.add_component(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1), 1.0);
  p.add_component(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1), 3.0);
  const auto w = p.normalized_weights();
  REQUIRE(w.size() == 2);
  CHECK(w[0] + w[1] == doctest::Approx(1.0));
  CHECK(w[1] / w[0] == doctest::Approx(3.0));
}

TEST_CASE("propose draws from the defensive kernel with probability omega") {
  // Defensive at 0, single incremental component far away at 100: the
  // component split is read off from which side the draw lands on.
  IncrementalProposal p(standard_q0(1), 0.25);
  p.add_component(Eigen::VectorXd::Constant(1, 100.0),
                  Eigen::MatrixXd::Identity(1, 1), 2.0);
  Rng rng(41);
  const int n = 100000;
  int defensive = 0;
  for (int i = 0; i < n; ++i) {
    if (p.propose(rng)[0] < 50.0) ++defensive;
  }
  CHECK(static_cast<double>(defensive) / n ==
        doctest::Approx(p.omega()).epsilon(0.02));
}

TEST_CASE("log_importance_weight is log pi minus log q") {
  IncrementalProposal p(standard_q0(2), 0.1);
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  CHECK(p.log_importance_weight(x, -1.5) ==
        doctest::Approx(-1.5 - p.log_density(x)));
}

TEST_CASE("component weight and dimension validation") {
  IncrementalProposal p(standard_q0(2), 0.1);
  CHECK_THROWS_AS(p.add_component(Eigen::VectorXd::Zero(2),
                                  Eigen::MatrixXd::Identity(2, 2), 0.0),
                  InvalidWeight);
  CHECK_THROWS_AS(p.add_component(Eigen::VectorXd::Zero(2),
                                  Eigen::MatrixXd::Identity(2, 2), -1.0),
                  InvalidWeight);
  CHECK_THROWS_AS(p.add_component_log_weight(
                      make_gaussian(Eigen::VectorXd::Zero(3),
                                    Eigen::MatrixXd::Identity(3, 3)),
                      0.0),
                  DimensionMismatch);
  CHECK_THROWS_AS(p.log_incremental_density(Eigen::VectorXd::Zero(2)),
                  EmptyMixture);
  CHECK_THROWS_AS(IncrementalProposal(standard_q0(1), 0.0), ValidationError);
  CHECK_THROWS_AS(IncrementalProposal(standard_q0(1), 1.0), ValidationError);
}

TEST_CASE("truncate_window keeps the most recent components") {
  IncrementalProposal p(standard_q0(1), 0.1);
  for (int m = 0; m < 6; ++m) {
    p.add_component(Eigen::VectorXd::Constant(1, double(m)),
                    Eigen::MatrixXd::Identity(1, 1), 1.0 + m);
  }
  const auto gen_before = p.generation();
  p.truncate_window(3);
  CHECK(p.component_count() == 3);
  CHECK(p.generation() == gen_before + 1);
  CHECK(p.components()[0].mean[0] == 3.0);
  CHECK(p.components()[2].mean[0] == 5.0);
  CHECK(p.omega() == doctest::Approx(1.0 / 1.3));

  // No-op below the cap; the generation is untouched.
  const auto gen_after = p.generation();
  p.truncate_window(5);
  CHECK(p.component_count() == 3);
  CHECK(p.generation() == gen_after);
  CHECK_THROWS_AS(p.truncate_window(0), ValidationError);
}

TEST_CASE("incremental density is itself normalized") {
  IncrementalProposal p(standard_q0(1), 0.1);
  p.add_component(Eigen::VectorXd::Constant(1, -2.0),
                  0.5 * Eigen::MatrixXd::Identity(1, 1), 0.7);
  p.add_component(Eigen::VectorXd::Constant(1, 3.0),
                  2.0 * Eigen::MatrixXd::Identity(1, 1), 1.9);
  const int n = 8001;
  const double lo = -40.0, hi = 40.0;
  const double h = (hi - lo) / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(1);
    x[0] = lo + i * h;
    const double f = std::exp(p.log_incremental_density(x));
    total += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  CHECK(total * h == doctest::Approx(1.0).epsilon(0.001));
}
