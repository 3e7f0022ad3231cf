#include "aimm/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "aimm/errors.hpp"

namespace aimm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

AimmConfig AimmConfig::defaults(int dim) {
  AimmConfig cfg;
  cfg.w_star = static_cast<double>(dim);
  cfg.n0 = static_cast<long>(std::lround(1000.0 * std::sqrt(dim)));
  cfg.sigma0 = Eigen::MatrixXd::Identity(dim, dim);
  return cfg;
}

void AimmConfig::validate(int dim) const {
  if (!(w_star > 0.0)) throw ValidationError("AimmConfig: w_star must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ValidationError("AimmConfig: gamma must lie in (0,1)");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ValidationError("AimmConfig: tau must lie in (0,1)");
  }
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw ValidationError("AimmConfig: kappa must lie in (0,1)");
  }
  if (n0 < 0) throw ValidationError("AimmConfig: n0 must be >= 0");
  if (iterations < 0) throw ValidationError("AimmConfig: iterations must be >= 0");
  if (m_max && *m_max <= 0) throw ValidationError("AimmConfig: m_max must be > 0");
  if (threshold_batch <= 0) {
    throw ValidationError("AimmConfig: threshold_batch must be > 0");
  }
  if (!(neighborhood_scale > 0.0)) {
    throw ValidationError("AimmConfig: neighborhood_scale must be > 0");
  }
  if (radius_cap < 0.0) {
    throw ValidationError("AimmConfig: radius_cap must be >= 0");
  }
  if (sigma0.size() != 0 && (sigma0.rows() != dim || sigma0.cols() != dim)) {
    throw ValidationError("AimmConfig: sigma0 dimension does not match target");
  }
}

long Trace::accepted_count() const {
  return std::count(accept_flags.begin(), accept_flags.end(), char(1));
}

double Trace::acceptance_rate() const {
  return accept_flags.empty()
             ? 0.0
             : static_cast<double>(accepted_count()) / accept_flags.size();
}

Eigen::MatrixXd Trace::post_initial_states() const {
  return states.bottomRows(states.rows() - 1);
}

double acceptance_log_prob(double log_w_proposal, double log_w_current) {
  if (log_w_proposal == log_w_current) return 0.0;  // covers the -inf/-inf case
  if (log_w_current == kNegInf) return 0.0;
  return std::min(0.0, log_w_proposal - log_w_current);
}

namespace {

bool contains_state(const std::vector<const Eigen::VectorXd*>& seen,
                    const Eigen::VectorXd& x) {
  for (const auto* s : seen) {
    if (*s == x) return true;
  }
  return false;
}

}  // namespace

std::vector<Eigen::VectorXd> build_neighborhood(
    const std::vector<Eigen::VectorXd>& trace_states,
    const Eigen::VectorXd& x_tilde, double pi_at_x_tilde, double tau,
    double rho_n, const GaussianComponent& sigma0_metric, double radius_cap) {
  const size_t n = trace_states.size();
  if (n == 0) throw EmptyHistory("build_neighborhood: empty chain history");
  const int d = static_cast<int>(x_tilde.size());
  const double bound = std::min(tau * rho_n * pi_at_x_tilde, radius_cap);
  const size_t min_distinct = static_cast<size_t>(d) + 2;

  std::vector<double> dist(n);
  for (size_t i = 0; i < n; ++i) {
    dist[i] = mahalanobis(trace_states[i], x_tilde, sigma0_metric);
  }

  // Keep duplicates from rejections; they weight the covariance toward
  // states the chain dwelled on. The set is usable only if it holds enough
  // distinct states to span a nondegenerate covariance.
  std::vector<Eigen::VectorXd> selected;
  std::vector<const Eigen::VectorXd*> distinct;
  for (size_t i = 0; i < n; ++i) {
    if (dist[i] > bound) continue;
    selected.push_back(trace_states[i]);
    if (distinct.size() < min_distinct &&
        !contains_state(distinct, trace_states[i])) {
      distinct.push_back(&trace_states[i]);
    }
  }
  if (distinct.size() >= min_distinct) return selected;

  // Too few distinct states in range; walk outward by distance and take the
  // d+2 nearest distinct states instead. Repeated copies of one sticky state
  // would otherwise yield a near-zero covariance and a degenerate component.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return dist[a] < dist[b]; });
  selected.clear();
  distinct.clear();
  for (size_t i : order) {
    if (contains_state(distinct, trace_states[i])) continue;
    distinct.push_back(&trace_states[i]);
    selected.push_back(trace_states[i]);
    if (selected.size() == min_distinct) break;
  }
  // Pathological history with fewer than two distinct states: pad with the
  // nearest entries so downstream covariance estimation still has two points.
  for (size_t i = 0; selected.size() < std::min<size_t>(n, min_distinct) &&
                     selected.size() < 2;
       ++i) {
    selected.push_back(trace_states[order[i]]);
  }
  return selected;
}

std::pair<GaussianComponent, double> make_increment(
    const std::vector<Eigen::VectorXd>& neighborhood,
    const Eigen::VectorXd& x_tilde, double log_pi_at_x_tilde, double gamma,
    double jitter) {
  const Eigen::MatrixXd cov = empirical_covariance(neighborhood);
  return {make_gaussian(x_tilde, cov, jitter), gamma * log_pi_at_x_tilde};
}

AimmSampler::AimmSampler(const TargetDensity& target, DefensiveKernel q0,
                         AimmConfig cfg)
    : target_(&target),
      cfg_(std::move(cfg)),
      proposal_(std::move(q0), cfg_.kappa),
      rng_(cfg_.seed),
      w_star_current_(cfg_.w_star) {
  const int d = target.dim;
  if (proposal_.dim() != d) {
    throw DimensionMismatch("AimmSampler: Q0 dimension does not match target");
  }
  cfg_.validate(d);
  Eigen::MatrixXd sigma0 = cfg_.sigma0.size() == 0
                               ? Eigen::MatrixXd::Identity(d, d)
                               : cfg_.sigma0;
  sigma0_metric_ = make_gaussian(Eigen::VectorXd::Zero(d), sigma0, cfg_.jitter);

  state_.x = proposal_.propose(rng_);
  state_.log_pi = target_->log_density(state_.x);
  state_.log_q = proposal_.log_density(state_.x);
  state_.generation = proposal_.generation();
  history_.push_back(state_.x);

  trace_.states.resize(cfg_.iterations + 1, d);
  trace_.states.row(0) = state_.x;
  trace_.proposal_points.resize(cfg_.iterations, d);
  trace_.accept_flags.reserve(cfg_.iterations);
  trace_.log_weights_at_proposals.reserve(cfg_.iterations);
  trace_.component_count_series.reserve(cfg_.iterations);
}

AimmSampler::Candidate AimmSampler::next_candidate() {
  if (!recycled_.empty() && recycled_generation_ == proposal_.generation()) {
    Candidate c = std::move(recycled_.front());
    recycled_.pop_front();
    return c;
  }
  recycled_.clear();
  Candidate c;
  c.x = proposal_.propose(rng_);
  c.log_pi = target_->log_density(c.x);
  return c;
}

void AimmSampler::step() {
  if (it_ >= cfg_.iterations) throw Error("AimmSampler::step: run is complete");
  const Candidate cand = next_candidate();
  const double log_q_t = proposal_.log_density(cand.x);
  const double log_w_t = cand.log_pi - log_q_t;
  const double log_w_cur = state_.log_pi - state_.log_q;

  const double a = acceptance_log_prob(log_w_t, log_w_cur);
  const double u = uniform01(rng_);
  const bool accept = a >= 0.0 || std::log(u) < a;

  trace_.proposal_points.row(it_) = cand.x;
  trace_.accept_flags.push_back(accept ? 1 : 0);
  trace_.log_weights_at_proposals.push_back(log_w_t);

  if (accept) {
    state_.x = cand.x;
    state_.log_pi = cand.log_pi;
    state_.log_q = log_q_t;
    ++state_.accepted_count;
  }
  state_.iteration = it_ + 1;

  // Increment fires on the proposed state whether or not it was accepted,
  // using the history X_1..X_n (the new state is appended afterwards).
  if (it_ > cfg_.n0 && std::isfinite(log_w_t) &&
      log_w_t > std::log(w_star_current_)) {
    increment(cand, log_w_t);
  }

  history_.push_back(state_.x);
  trace_.states.row(it_ + 1) = state_.x;
  trace_.component_count_series.push_back(proposal_.component_count());
  ++it_;
}

void AimmSampler::increment(const Candidate& cand, double /*log_w*/) {
  const double rho = cfg_.rho_mode == NeighborhoodRho::rate
                         ? static_cast<double>(state_.accepted_count) /
                               std::max<long>(1, state_.iteration)
                         : static_cast<double>(state_.accepted_count);
  const double pi_val = std::exp(cand.log_pi) * cfg_.neighborhood_scale;
  const double cap = cfg_.radius_cap > 0.0
                         ? cfg_.radius_cap
                         : 2.0 * std::sqrt(double(target_->dim));
  auto neighborhood = build_neighborhood(
      history_, cand.x, pi_val, cfg_.tau, rho, sigma0_metric_, cap);

  // One refinement pass: re-select the points within 2 Mahalanobis units of
  // the trigger under the neighborhood's own covariance. A first-pass window
  // that straddles a mode and its shoulders would otherwise produce a
  // component too flat to cover the mode it is centered on.
  if (neighborhood.size() >= 2) {
    const auto first_pass =
        make_gaussian(cand.x, empirical_covariance(neighborhood), cfg_.jitter);
    std::vector<Eigen::VectorXd> refined;
    size_t refined_distinct = 0;
    for (const auto& p : neighborhood) {
      if (mahalanobis(p, cand.x, first_pass) > 2.0) continue;
      if (refined.empty() || !(p == refined.back())) ++refined_distinct;
      refined.push_back(p);
    }
    if (refined_distinct >= static_cast<size_t>(target_->dim) + 2) {
      neighborhood = std::move(refined);
    }
  }

  auto [component, log_weight] =
      make_increment(neighborhood, cand.x, cand.log_pi, cfg_.gamma, cfg_.jitter);
  proposal_.add_component_log_weight(std::move(component), log_weight);
  if (cfg_.m_max) proposal_.truncate_window(*cfg_.m_max);

  // The current state's weight must reflect the new proposal.
  state_.log_q = proposal_.log_density(state_.x);
  state_.generation = proposal_.generation();
  recycled_.clear();

  trace_.increment_iterations.push_back(it_);
  if (cfg_.record_proposal_snapshots) snapshots_.push_back(proposal_);
}

void AimmSampler::adapt_threshold() {
  if (!cfg_.adapt_threshold || threshold_latched_) return;
  const long batch = cfg_.threshold_batch;
  std::vector<Candidate> draws;
  draws.reserve(batch);
  std::vector<double> log_w(batch);
  for (long i = 0; i < batch; ++i) {
    Candidate c;
    c.x = proposal_.propose(rng_);
    c.log_pi = target_->log_density(c.x);
    log_w[i] = c.log_pi - proposal_.log_density(c.x);
    draws.push_back(std::move(c));
  }
  std::vector<double> sorted = log_w;
  std::sort(sorted.begin(), sorted.end());
  const long idx = static_cast<long>(std::ceil(0.999 * batch)) - 1;  // 1-based
  const double quantile = std::exp(sorted[idx]);
  w_star_current_ = std::min(quantile, cfg_.w_star);
  if (std::abs(w_star_current_ - cfg_.w_star) < 1.0) threshold_latched_ = true;

  // Recycle the calibration draws as proposal candidates; they are flushed
  // as soon as the proposal increments.
  recycled_.assign(std::make_move_iterator(draws.begin()),
                   std::make_move_iterator(draws.end()));
  recycled_generation_ = proposal_.generation();
}

void AimmSampler::run_all() {
  const auto t0 = std::chrono::steady_clock::now();
  for (long i = 0; i < cfg_.iterations; ++i) {
    if (cfg_.adapt_threshold && !threshold_latched_ &&
        i % cfg_.threshold_batch == 0) {
      adapt_threshold();
    }
    step();
  }
  trace_.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
}

AimmRun AimmSampler::finish() {
  return AimmRun{std::move(trace_), std::move(proposal_), std::move(snapshots_)};
}

AimmRun run_aimm(const TargetDensity& target, const DefensiveKernel& q0,
                 const AimmConfig& cfg) {
  AimmSampler sampler(target, q0, cfg);
  sampler.run_all();
  return sampler.finish();
}

}  // namespace aimm
