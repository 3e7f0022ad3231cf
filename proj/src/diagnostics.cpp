#include "aimm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "aimm/errors.hpp"

namespace aimm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxLag = 1000;
constexpr double kAcfCutoff = 0.01;

void parallel_for(long n, const std::function<void(long, long)>& body) {
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (workers == 1 || n < 256) {
    body(0, n);
    return;
  }
  std::vector<std::thread> threads;
  const long chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const long lo = w * chunk;
    const long hi = std::min<long>(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

double ess(const Eigen::VectorXd& series) {
  const long n = series.size();
  if (n < 10) throw TooFewPoints("ess: need at least 10 points");
  const Eigen::VectorXd centered = series.array() - series.mean();
  const double c0 = centered.squaredNorm() / n;
  if (!(c0 > 0.0)) throw DegenerateSeries("ess: series has zero variance");

  const int max_lag = static_cast<int>(std::min<long>(kMaxLag, n - 1));
  Eigen::VectorXd rho(max_lag + 1);
  rho[0] = 1.0;
  for (int t = 1; t <= max_lag; ++t) {
    rho[t] = centered.head(n - t).dot(centered.tail(n - t)) / (n * c0);
  }

  // First lag dropping below the cutoff. Scanning for the last above-cutoff
  // lag instead would absorb hundreds of noise lags (sd of an empirical
  // autocorrelation is ~1/sqrt(n), comparable to the cutoff) and make the
  // estimate noise-dominated.
  int t0 = max_lag;
  for (int t = 1; t <= max_lag; ++t) {
    if (rho[t] < kAcfCutoff) {
      t0 = t;
      break;
    }
  }
  const int T = std::min(kMaxLag, t0);
  double acc = 0.0;
  for (int t = 1; t <= T; ++t) acc += rho[t];
  const double denom = 1.0 + 2.0 * acc;
  if (denom <= 0.0) return 1.0;
  return std::min(1.0, 1.0 / denom);
}

double ess_min_marginal(const Eigen::MatrixXd& states) {
  double best = kInf;
  for (int j = 0; j < states.cols(); ++j) best = std::min(best, ess(states.col(j)));
  return best;
}

double jumping_distance(const Eigen::MatrixXd& states) {
  const long n = states.rows();
  if (n < 2) throw TooFewPoints("jumping_distance: need at least 2 states");
  double total = 0.0;
  for (long k = 0; k + 1 < n; ++k) {
    total += (states.row(k + 1) - states.row(k)).squaredNorm();
  }
  return total / static_cast<double>(n - 1);
}

KernelDensity::KernelDensity(const Eigen::MatrixXd& samples) : samples_(samples) {
  const long n = samples.rows();
  if (n < 30) throw TooFewPoints("KernelDensity: need at least 30 samples");
  const int d = static_cast<int>(samples.cols());
  bandwidth_.resize(d);
  const double scale = 1.06 * std::pow(static_cast<double>(n), -0.2);
  for (int j = 0; j < d; ++j) {
    const Eigen::VectorXd col = samples.col(j);
    const double sd = std::sqrt((col.array() - col.mean()).square().sum() /
                                static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw DegenerateSeries("KernelDensity: zero-variance dimension");
    }
    bandwidth_[j] = scale * sd;
  }
}

double KernelDensity::log_density(const Eigen::VectorXd& query) const {
  if (query.size() != samples_.cols()) {
    throw DimensionMismatch("KernelDensity: query dimension mismatch");
  }
  const long n = samples_.rows();
  const int d = static_cast<int>(samples_.cols());
  double log_const = -std::log(static_cast<double>(n)) -
                     0.5 * d * std::log(2.0 * std::numbers::pi);
  for (int j = 0; j < d; ++j) log_const -= std::log(bandwidth_[j]);

  double best = -kInf;
  Eigen::VectorXd quad(n);
  for (long i = 0; i < n; ++i) {
    double q = 0.0;
    for (int j = 0; j < d; ++j) {
      const double z = (query[j] - samples_(i, j)) / bandwidth_[j];
      q += z * z;
    }
    quad[i] = -0.5 * q;
    best = std::max(best, quad[i]);
  }
  double s = 0.0;
  for (long i = 0; i < n; ++i) s += std::exp(quad[i] - best);
  return log_const + best + std::log(s);
}

double kde_log_density(const Eigen::MatrixXd& samples,
                       const Eigen::VectorXd& query) {
  return KernelDensity(samples).log_density(query);
}

double kl_target_vs_chain(const TargetDensity& target,
                          const Eigen::MatrixXd& chain_states, long l,
                          Rng& rng) {
  if (!target.normalized || !target.exact_sampler) {
    throw UnnormalizedTarget(
        "kl_target_vs_chain: target must be normalized with an exact sampler");
  }
  if (l <= 0) throw ValidationError("kl_target_vs_chain: l must be > 0");
  KernelDensity kde(chain_states);
  std::vector<Eigen::VectorXd> draws(l);
  for (long i = 0; i < l; ++i) draws[i] = (*target.exact_sampler)(rng);
  std::vector<double> terms(l);
  parallel_for(l, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      terms[i] = target.log_density(draws[i]) - kde.log_density(draws[i]);
    }
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return total / static_cast<double>(l);
}

double kl_pi_vs_proposal(const TargetDensity& target,
                         const IncrementalProposal& proposal, long l, Rng& rng,
                         bool incremental_only) {
  if (!target.normalized || !target.exact_sampler) {
    throw UnnormalizedTarget(
        "kl_pi_vs_proposal: target must be normalized with an exact sampler");
  }
  double total = 0.0;
  for (long i = 0; i < l; ++i) {
    const Eigen::VectorXd z = (*target.exact_sampler)(rng);
    const double log_q = incremental_only
                             ? proposal.log_incremental_density(z)
                             : proposal.log_density(z);
    total += target.log_density(z) - log_q;
  }
  return total / static_cast<double>(l);
}

double kl_between_proposals(const IncrementalProposal& q_a,
                            const IncrementalProposal& q_b, long l, Rng& rng) {
  double total = 0.0;
  for (long i = 0; i < l; ++i) {
    const Eigen::VectorXd y = q_a.propose(rng);
    total += q_a.log_density(y) - q_b.log_density(y);
  }
  return total / static_cast<double>(l);
}

TailStat tail_statistics(const Eigen::MatrixXd& states, const TailEvent& event) {
  const long n = states.rows();
  if (n < 2) throw TooFewPoints("tail_statistics: need at least 2 states");
  if (event.coord < 0 || event.coord >= states.cols()) {
    throw ValidationError("tail_statistics: coordinate out of range");
  }
  auto inside = [&](long t) {
    const double v = states(t, event.coord);
    return event.less_than ? v < event.threshold : v > event.threshold;
  };

  long hits = 0;
  double gap_total = 0.0;
  long gap_count = 0;
  long last_in = -1;
  bool prev_in = false;
  for (long t = 0; t < n; ++t) {
    const bool in = inside(t);
    if (in) {
      ++hits;
      if (!prev_in && last_in >= 0) {
        gap_total += static_cast<double>(t - last_in);
        ++gap_count;
      }
      last_in = t;
    }
    prev_in = in;
  }

  TailStat stat;
  stat.label = event.label;
  stat.frequency = static_cast<double>(hits) / static_cast<double>(n);
  if (hits == 0) {
    stat.mean_return_time = kInf;
  } else if (gap_count == 0) {
    // Entered once and never left (or never re-entered): degenerate. A chain
    // that is always inside returns immediately; otherwise unmeasurable.
    stat.mean_return_time = hits == n ? 1.0 : kInf;
  } else {
    stat.mean_return_time = gap_total / static_cast<double>(gap_count);
  }
  return stat;
}

double mode_fraction(const Eigen::MatrixXd& states, const Eigen::VectorXd& mu1,
                     const Eigen::VectorXd& mu2) {
  const long n = states.rows();
  if (n < 1) throw TooFewPoints("mode_fraction: need at least 1 state");
  if (mu1.size() != states.cols() || mu2.size() != states.cols()) {
    throw DimensionMismatch("mode_fraction: center dimension mismatch");
  }
  long count = 0;
  for (long t = 0; t < n; ++t) {
    const double d1 = (states.row(t).transpose() - mu1).squaredNorm();
    const double d2 = (states.row(t).transpose() - mu2).squaredNorm();
    if (d1 <= d2) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

DiagnosticsReport compute_report(const Trace& trace, const TargetDensity& target,
                                 const DiagnosticsOptions& opts) {
  DiagnosticsReport report;
  const Eigen::MatrixXd states = trace.post_initial_states();
  report.ess = ess_min_marginal(states);
  report.acc = trace.acceptance_rate();
  report.jmp = jumping_distance(trace.states);
  report.cpu_seconds = trace.wall_time_seconds;
  report.eff = report.cpu_seconds > 0.0 ? report.ess / report.cpu_seconds : 0.0;
  report.m_n = trace.component_count_series.empty()
                   ? 0
                   : trace.component_count_series.back();
  if (opts.kl_chain) {
    Rng rng(opts.kl_seed);
    report.kl_chain = kl_target_vs_chain(target, states, opts.kl_samples, rng);
  }
  for (const auto& event : opts.tail_events) {
    report.tail_stats.push_back(tail_statistics(states, event));
  }
  if (opts.mode_centers) {
    report.mode_fraction =
        mode_fraction(states, opts.mode_centers->first, opts.mode_centers->second);
  }
  return report;
}

}  // namespace aimm
