#ifndef AIMM_SAMPLER_HPP
#define AIMM_SAMPLER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "aimm/proposal.hpp"
#include "aimm/target.hpp"

namespace aimm {

/// How rho_n enters the neighborhood bound tau * rho_n * pi(x~):
/// `count` is the accepted-proposal count, `rate` the acceptance fraction
/// rho_n / n. With `count` the bound widens as exploration progresses, so
/// early increments stay local while late ones borrow covariance from the
/// whole explored region; `neighborhood_scale` calibrates the bound against
/// the magnitude of the (possibly unnormalized) target density. Default is
/// count.
enum class NeighborhoodRho { rate, count };

struct AimmConfig {
  double w_star = 1.0;  // natural scale; trigger is W_n(x~) > w_star
  double gamma = 0.5;
  double tau = 0.5;
  double kappa = 0.1;
  long n0 = 1000;  // no adaptation during the first n0 iterations
  std::optional<int> m_max;
  bool adapt_threshold = false;  // f-AIMM threshold calibration
  long iterations = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd sigma0;  // Mahalanobis metric for neighborhoods
  double neighborhood_scale = 1.0;
  // Upper limit on the neighborhood radius in sigma0-metric units; 0 means
  // auto (2 sqrt(d)). Keeps early components local when the accepted count
  // is already large once adaptation starts.
  double radius_cap = 0.0;
  NeighborhoodRho rho_mode = NeighborhoodRho::count;
  long threshold_batch = 1000;
  double jitter = 1e-8;
  bool record_proposal_snapshots = false;

  /// W* = d, N0 = 1000 sqrt(d), sigma0 = I; remaining fields at their
  /// member defaults.
  static AimmConfig defaults(int dim);

  void validate(int dim) const;
};

struct ChainState {
  Eigen::VectorXd x;
  double log_pi = 0.0;
  double log_q = 0.0;                // under proposal `generation`
  std::uint64_t generation = 0;
  long accepted_count = 0;           // rho_n
  long iteration = 0;
};

/// Full per-iteration history of one chain. Row 0 of `states` is the initial
/// state; all other series have one entry per transition.
struct Trace {
  Eigen::MatrixXd states;           // (iterations+1) x d
  Eigen::MatrixXd proposal_points;  // iterations x d
  std::vector<char> accept_flags;
  std::vector<double> log_weights_at_proposals;
  std::vector<long> increment_iterations;  // 0-based transition indices
  std::vector<int> component_count_series;
  double wall_time_seconds = 0.0;
  bool valid = true;

  long iterations() const { return static_cast<long>(accept_flags.size()); }
  long accepted_count() const;
  double acceptance_rate() const;
  /// States X_1..X_n (initial state excluded) as an n x d matrix.
  Eigen::MatrixXd post_initial_states() const;
};

struct AimmRun {
  Trace trace;
  IncrementalProposal final_proposal;
  std::vector<IncrementalProposal> proposal_snapshots;  // one per increment
};

double acceptance_log_prob(double log_w_proposal, double log_w_current);

/// Past states within Mahalanobis distance tau * rho_n * pi(x~) of x~ under
/// the sigma0 metric; duplicates from rejections are kept. When fewer than
/// d+2 distinct states qualify, falls back to the d+2 nearest distinct
/// states so the neighborhood always spans a usable covariance.
std::vector<Eigen::VectorXd> build_neighborhood(
    const std::vector<Eigen::VectorXd>& trace_states,
    const Eigen::VectorXd& x_tilde, double pi_at_x_tilde, double tau,
    double rho_n, const GaussianComponent& sigma0_metric,
    double radius_cap = std::numeric_limits<double>::infinity());

/// New component centered at x~ with the neighborhood's empirical covariance
/// (jitter-regularized), log-weight gamma * log pi(x~).
std::pair<GaussianComponent, double> make_increment(
    const std::vector<Eigen::VectorXd>& neighborhood,
    const Eigen::VectorXd& x_tilde, double log_pi_at_x_tilde, double gamma,
    double jitter = 1e-8);

/// One AIMM chain. Exposed as a class so tests can drive single steps;
/// run_aimm is the end-to-end driver.
class AimmSampler {
 public:
  AimmSampler(const TargetDensity& target, DefensiveKernel q0, AimmConfig cfg);

  void step();
  void run_all();  // cfg.iterations steps with threshold adaptation interleaved

  const ChainState& state() const { return state_; }
  const IncrementalProposal& proposal() const { return proposal_; }
  const Trace& trace() const { return trace_; }
  double current_w_star() const { return w_star_current_; }
  bool threshold_latched() const { return threshold_latched_; }

  /// f-AIMM threshold calibration: draws `batch` points from Q_n, sets the
  /// working threshold to the empirical (1 - 1e-3) quantile of their
  /// importance weights (never above the prescribed W*), and queues the
  /// batch for recycling as proposal candidates. Latches permanently once
  /// |W*_n - W*| < 1.
  void adapt_threshold();

  AimmRun finish();

 private:
  struct Candidate {
    Eigen::VectorXd x;
    double log_pi;
  };

  Candidate next_candidate();
  void increment(const Candidate& cand, double log_w);

  const TargetDensity* target_;
  AimmConfig cfg_;
  IncrementalProposal proposal_;
  GaussianComponent sigma0_metric_;
  ChainState state_;
  std::vector<Eigen::VectorXd> history_;
  Trace trace_;
  Rng rng_;
  double w_star_current_;
  bool threshold_latched_ = false;
  std::deque<Candidate> recycled_;
  std::uint64_t recycled_generation_ = 0;
  std::vector<IncrementalProposal> snapshots_;
  long it_ = 0;
};

AimmRun run_aimm(const TargetDensity& target, const DefensiveKernel& q0,
                 const AimmConfig& cfg);

inline constexpr long kNeverAdapt = std::numeric_limits<long>::max();

}  // namespace aimm

#endif
