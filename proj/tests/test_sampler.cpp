#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aimm/errors.hpp"
#include "aimm/sampler.hpp"
#include "aimm/target.hpp"

using namespace aimm;

namespace {

DefensiveKernel trimodal_q0() {
  return DefensiveKernel::gaussian(make_gaussian(
      Eigen::VectorXd::Zero(1), 10.0 * Eigen::MatrixXd::Identity(1, 1)));
}

TargetDensity standard_normal_target() {
  TargetDensity t;
  t.dim = 1;
  t.normalized = true;
  t.name = "gauss1d";
  t.log_density = [](const Eigen::VectorXd& x) {
    return -0.5 * std::log(2.0 * 3.14159265358979323846) - 0.5 * x[0] * x[0];
  };
  t.exact_sampler = [](Rng& rng) {
    Eigen::VectorXd x(1);
    x[0] = standard_normal(rng);
    return x;
  };
  return t;
}

}  // namespace

TEST_CASE("acceptance_log_prob edge cases") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(acceptance_log_prob(-1.0, -3.0) == 0.0);
  CHECK(acceptance_log_prob(-3.0, -1.0) == doctest::Approx(-2.0));
  CHECK(acceptance_log_prob(-inf, -inf) == 0.0);   // both weights vanish
  CHECK(acceptance_log_prob(-2.0, -inf) == 0.0);   // escape a null state
  CHECK(acceptance_log_prob(-inf, -2.0) == -inf);  // never move onto nulls
  CHECK(acceptance_log_prob(1.5, 1.5) == 0.0);
}

TEST_CASE("build_neighborhood matches an exhaustive-scan oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(uniform01(rng) * 3);
    const int n = 10 + static_cast<int>(uniform01(rng) * 60);
    std::vector<Eigen::VectorXd> states;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x[j] = 4.0 * standard_normal(rng);
      states.push_back(x);
    }
    Eigen::VectorXd x_tilde(d);
    for (int j = 0; j < d; ++j) x_tilde[j] = 4.0 * standard_normal(rng);
    const double pi_val = 0.5 + 4.0 * uniform01(rng);
    const double tau = 0.5;
    const double rho = uniform01(rng);
    const auto metric =
        make_gaussian(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d));

    const auto got =
        build_neighborhood(states, x_tilde, pi_val, tau, rho, metric);

    // Oracle: full scan with the same bound, then the same k-nearest fallback.
    const double bound = tau * rho * pi_val;
    std::vector<Eigen::VectorXd> expected;
    for (const auto& s : states) {
      if ((s - x_tilde).norm() <= bound) expected.push_back(s);
    }
    const size_t k = std::min<size_t>(n, d + 2);
    if (expected.size() < k) {
      std::vector<std::pair<double, size_t>> ranked;
      for (size_t i = 0; i < states.size(); ++i) {
        ranked.push_back({(states[i] - x_tilde).norm(), i});
      }
      std::sort(ranked.begin(), ranked.end());
      expected.clear();
      for (size_t i = 0; i < k; ++i) expected.push_back(states[ranked[i].second]);
    }

    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK((got[i] - expected[i]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("build_neighborhood falls back to the d+2 nearest states") {
  std::vector<Eigen::VectorXd> states;
  for (int i = 0; i < 10; ++i) {
    states.push_back(Eigen::VectorXd::Constant(1, double(i)));
  }
  const auto metric =
      make_gaussian(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1));
  // Tiny bound: nothing qualifies, so the 3 nearest to 4.2 are taken.
  const auto got = build_neighborhood(states, Eigen::VectorXd::Constant(1, 4.2),
                                      1e-9, 0.5, 0.5, metric);
  REQUIRE(got.size() == 3);
  std::vector<double> vals = {got[0][0], got[1][0], got[2][0]};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == 3.0);
  CHECK(vals[1] == 4.0);
  CHECK(vals[2] == 5.0);

  CHECK_THROWS_AS(build_neighborhood({}, Eigen::VectorXd::Zero(1), 1.0, 0.5,
                                     0.5, metric),
                  EmptyHistory);
}

TEST_CASE("make_increment centers at the trigger with neighborhood covariance") {
  std::vector<Eigen::VectorXd> nbhd;
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    Eigen::VectorXd x(2);
    x << standard_normal(rng), 2.0 * standard_normal(rng);
    nbhd.push_back(x);
  }
  Eigen::VectorXd x_tilde(2);
  x_tilde << 5.0, -1.0;
  const double log_pi = -2.3;
  const auto [component, log_w] = make_increment(nbhd, x_tilde, log_pi, 0.5);
  CHECK((component.mean - x_tilde).cwiseAbs().maxCoeff() == 0.0);
  CHECK((component.covariance - empirical_covariance(nbhd)).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(log_w == doctest::Approx(0.5 * log_pi));
}

TEST_CASE("config validation rejects out-of-range parameters") {
  AimmConfig cfg = AimmConfig::defaults(2);
  cfg.iterations = 10;
  CHECK_NOTHROW(cfg.validate(2));
  auto bad = cfg;
  bad.gamma = 1.5;
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
  bad = cfg;
  bad.tau = 0.0;
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
  bad = cfg;
  bad.kappa = 1.0;
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
  bad = cfg;
  bad.w_star = 0.0;
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
  bad = cfg;
  bad.m_max = 0;
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
  bad = cfg;
  bad.sigma0 = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(bad.validate(2), ValidationError);
}

TEST_CASE("defaults scale with dimension") {
  const auto cfg = AimmConfig::defaults(4);
  CHECK(cfg.w_star == 4.0);
  CHECK(cfg.n0 == 2000);
  CHECK(cfg.sigma0.rows() == 4);
}

TEST_CASE("runs are deterministic in the seed") {
  const auto target = make_trimodal_1d();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 3000;
  cfg.n0 = 500;
  cfg.w_star = 1.0;
  cfg.seed = 99;
  const auto a = run_aimm(target, trimodal_q0(), cfg);
  const auto b = run_aimm(target, trimodal_q0(), cfg);
  CHECK((a.trace.states - b.trace.states).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.trace.increment_iterations == b.trace.increment_iterations);

  cfg.seed = 100;
  const auto c = run_aimm(target, trimodal_q0(), cfg);
  CHECK((a.trace.states - c.trace.states).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("no adaptation before n0 and none when frozen") {
  const auto target = make_trimodal_1d();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 4000;
  cfg.n0 = kNeverAdapt;
  cfg.seed = 3;
  const auto frozen = run_aimm(target, trimodal_q0(), cfg);
  CHECK(frozen.final_proposal.component_count() == 0);
  CHECK(frozen.trace.increment_iterations.empty());

  cfg.n0 = 1000;
  cfg.w_star = 1.0;
  const auto adapting = run_aimm(target, trimodal_q0(), cfg);
  for (long it : adapting.trace.increment_iterations) CHECK(it > 1000);
}

TEST_CASE("trace bookkeeping is internally consistent") {
  const auto target = make_trimodal_1d();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 5000;
  cfg.n0 = 800;
  cfg.w_star = 1.0;
  cfg.seed = 17;
  const auto run = run_aimm(target, trimodal_q0(), cfg);
  const auto& t = run.trace;
  CHECK(t.iterations() == 5000);
  CHECK(t.states.rows() == 5001);
  CHECK(t.proposal_points.rows() == 5000);
  CHECK(t.component_count_series.size() == 5000);
  CHECK(t.component_count_series.back() == run.final_proposal.component_count());
  CHECK(static_cast<long>(t.increment_iterations.size()) ==
        run.final_proposal.component_count());
  // Rejected transitions keep the state in place.
  for (long n = 0; n < 100; ++n) {
    if (!t.accept_flags[n]) {
      CHECK(t.states(n + 1, 0) == t.states(n, 0));
    } else {
      CHECK(t.states(n + 1, 0) == t.proposal_points(n, 0));
    }
  }
}

TEST_CASE("the moving window caps the retained component count") {
  const auto target = make_trimodal_1d();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 20000;
  cfg.n0 = 500;
  cfg.w_star = 1.0;
  cfg.m_max = 4;
  cfg.seed = 23;
  const auto run = run_aimm(target, trimodal_q0(), cfg);
  for (int m : run.trace.component_count_series) CHECK(m <= 4);
  CHECK(run.trace.increment_iterations.size() >
        static_cast<size_t>(run.final_proposal.component_count()));
}

TEST_CASE("threshold adaptation calibrates then latches") {
  const auto target = standard_normal_target();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 100;
  cfg.w_star = 1.5;
  cfg.adapt_threshold = true;
  cfg.seed = 5;
  AimmSampler sampler(
      target,
      DefensiveKernel::gaussian(make_gaussian(
          Eigen::VectorXd::Zero(1), 1.5 * Eigen::MatrixXd::Identity(1, 1))),
      cfg);
  CHECK(sampler.current_w_star() == 1.5);
  sampler.adapt_threshold();
  // Near-perfect Q0: the weight quantile sits near 1, well under W* and
  // within the +-1 latch band.
  CHECK(sampler.current_w_star() <= 1.5);
  CHECK(sampler.threshold_latched());
}

TEST_CASE("frozen chain on a matched proposal accepts everything") {
  // Q0 = pi makes every importance weight 1, so all moves are accepted.
  const auto target = standard_normal_target();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 2000;
  cfg.n0 = kNeverAdapt;
  cfg.seed = 8;
  const auto run = run_aimm(
      target,
      DefensiveKernel::gaussian(make_gaussian(Eigen::VectorXd::Zero(1),
                                              Eigen::MatrixXd::Identity(1, 1))),
      cfg);
  CHECK(run.trace.acceptance_rate() == 1.0);
}

TEST_CASE("proposal snapshots are recorded per increment") {
  const auto target = make_trimodal_1d();
  AimmConfig cfg = AimmConfig::defaults(1);
  cfg.iterations = 15000;
  cfg.n0 = 500;
  cfg.w_star = 1.0;
  cfg.seed = 29;
  cfg.record_proposal_snapshots = true;
  const auto run = run_aimm(target, trimodal_q0(), cfg);
  REQUIRE(run.proposal_snapshots.size() == run.trace.increment_iterations.size());
  for (size_t i = 0; i < run.proposal_snapshots.size(); ++i) {
    CHECK(run.proposal_snapshots[i].component_count() == static_cast<int>(i) + 1);
  }
}
