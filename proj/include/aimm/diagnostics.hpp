#ifndef AIMM_DIAGNOSTICS_HPP
#define AIMM_DIAGNOSTICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "aimm/proposal.hpp"
#include "aimm/sampler.hpp"
#include "aimm/target.hpp"

namespace aimm {

/// Effective sample size in (0,1]: 1/(1 + 2 sum_{t=1}^T rho_t) with
/// T = min(1000, t0), t0 the smallest lag from which every computed
/// autocorrelation stays below .01 (scan window 1000 lags).
double ess(const Eigen::VectorXd& series);

/// Minimum marginal ESS across the d columns.
double ess_min_marginal(const Eigen::MatrixXd& states);

/// Mean squared Euclidean displacement per transition.
double jumping_distance(const Eigen::MatrixXd& states);

/// Gaussian product-kernel KDE with per-dimension Silverman bandwidth
/// 1.06 sigma_j n^{-1/5}.
class KernelDensity {
 public:
  explicit KernelDensity(const Eigen::MatrixXd& samples);
  double log_density(const Eigen::VectorXd& query) const;
  const Eigen::VectorXd& bandwidths() const { return bandwidth_; }

 private:
  Eigen::MatrixXd samples_;
  Eigen::VectorXd bandwidth_;
};

double kde_log_density(const Eigen::MatrixXd& samples,
                       const Eigen::VectorXd& query);

/// Monte Carlo KL(pi, chain-KDE): (1/L) sum log pi(Z) - log KDE(Z), Z ~ pi.
/// Requires a normalized target with an exact sampler.
double kl_target_vs_chain(const TargetDensity& target,
                          const Eigen::MatrixXd& chain_states, long l,
                          Rng& rng);

/// Monte Carlo KL(pi, Q_n); with incremental_only the defensive kernel is
/// dropped and the divergence is against the incremental part alone.
double kl_pi_vs_proposal(const TargetDensity& target,
                         const IncrementalProposal& proposal, long l, Rng& rng,
                         bool incremental_only = false);

/// Monte Carlo KL(q_a, q_b) with draws from q_a.
double kl_between_proposals(const IncrementalProposal& q_a,
                            const IncrementalProposal& q_b, long l, Rng& rng);

struct TailEvent {
  int coord = 0;
  double threshold = 0.0;
  bool less_than = true;  // event is X_coord < threshold (or > when false)
  std::string label;
};

struct TailStat {
  std::string label;
  double frequency = 0.0;
  double mean_return_time = 0.0;  // +inf when the event is never hit
};

/// frequency = fraction of states in the event set; mean_return_time =
/// average number of iterations from leaving the event set to re-entering
/// it (the expected returning time of the benchmark tables). A chain that
/// never leaves the set returns 1; a chain that never hits it returns +inf.
TailStat tail_statistics(const Eigen::MatrixXd& states, const TailEvent& event);

/// Fraction of states strictly closer (Euclidean) to mu1 than mu2;
/// equidistant states count toward mu1.
double mode_fraction(const Eigen::MatrixXd& states, const Eigen::VectorXd& mu1,
                     const Eigen::VectorXd& mu2);

struct DiagnosticsReport {
  double ess = 0.0;
  double acc = 0.0;
  double jmp = 0.0;
  double eff = 0.0;
  double cpu_seconds = 0.0;
  int m_n = 0;
  std::optional<double> kl_chain;
  std::vector<TailStat> tail_stats;
  std::optional<double> mode_fraction;
};

struct DiagnosticsOptions {
  bool kl_chain = false;
  long kl_samples = 5000;
  std::uint64_t kl_seed = 0;
  std::vector<TailEvent> tail_events;
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> mode_centers;
};

DiagnosticsReport compute_report(const Trace& trace, const TargetDensity& target,
                                 const DiagnosticsOptions& opts);

}  // namespace aimm

#endif
