#ifndef AIMM_PROPOSAL_HPP
#define AIMM_PROPOSAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "aimm/gaussian.hpp"
#include "aimm/rng.hpp"

namespace aimm {

struct UniformBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// The fixed kernel Q0 the mixture keeps with weight omega.
struct DefensiveKernel {
  std::variant<GaussianComponent, UniformBox> kind;

  static DefensiveKernel gaussian(GaussianComponent g);
  static DefensiveKernel uniform_box(Eigen::VectorXd lower, Eigen::VectorXd upper);

  int dim() const;
  double log_density(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample(Rng& rng) const;
};

/// Defensive kernel plus an incrementally grown weighted Gaussian mixture:
///   Q = omega Q0 + (1-omega) sum_l beta_l phi_l / sum_l beta_l,
/// omega = 1/(1 + kappa M). Component weights are kept unnormalized in log
/// space; normalization happens inside log-sum-exp.
///
/// Value type: add/truncate bump the generation counter, so snapshots taken
/// by copy stay internally consistent.
class IncrementalProposal {
 public:
  IncrementalProposal(DefensiveKernel defensive, double kappa);

  int dim() const { return defensive_.dim(); }
  int component_count() const { return static_cast<int>(components_.size()); }
  double kappa() const { return kappa_; }
  std::uint64_t generation() const { return generation_; }
  double omega() const;

  const DefensiveKernel& defensive() const { return defensive_; }
  const std::vector<GaussianComponent>& components() const { return components_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

  /// Normalized component weights beta_l / sum beta (empty when M = 0).
  std::vector<double> normalized_weights() const;

  Eigen::VectorXd propose(Rng& rng) const;
  double log_density(const Eigen::VectorXd& x) const;

  /// Density of the incremental part alone (sum beta_l phi_l / sum beta).
  /// Requires at least one component.
  double log_incremental_density(const Eigen::VectorXd& x) const;

  /// log pi(x) - log Q(x); the caller supplies log pi(x).
  double log_importance_weight(const Eigen::VectorXd& x, double log_pi_x) const;

  void add_component(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                     double weight);
  void add_component_log_weight(GaussianComponent component, double log_weight);

  /// Keeps the most recently added min(M, m_max) components, moving-window
  /// style; omega is recomputed from the retained count. No-op if M <= m_max.
  void truncate_window(int m_max);

 private:
  DefensiveKernel defensive_;
  std::vector<GaussianComponent> components_;
  std::vector<double> log_weights_;
  double kappa_;
  std::uint64_t generation_ = 0;
};

}  // namespace aimm

#endif
