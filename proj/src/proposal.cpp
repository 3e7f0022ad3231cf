#include "aimm/proposal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aimm/errors.hpp"

namespace aimm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}
}  // namespace

DefensiveKernel DefensiveKernel::gaussian(GaussianComponent g) {
  DefensiveKernel k;
  k.kind = std::move(g);
  return k;
}

DefensiveKernel DefensiveKernel::uniform_box(Eigen::VectorXd lower,
                                             Eigen::VectorXd upper) {
  if (lower.size() != upper.size()) {
    throw DimensionMismatch("uniform_box: bound lengths differ");
  }
  if (((upper - lower).array() <= 0.0).any()) {
    throw ValidationError("uniform_box: upper must exceed lower in every axis");
  }
  DefensiveKernel k;
  k.kind = UniformBox{std::move(lower), std::move(upper)};
  return k;
}

int DefensiveKernel::dim() const {
  if (const auto* g = std::get_if<GaussianComponent>(&kind)) return g->dim();
  return static_cast<int>(std::get<UniformBox>(kind).lower.size());
}

double DefensiveKernel::log_density(const Eigen::VectorXd& x) const {
  if (const auto* g = std::get_if<GaussianComponent>(&kind)) {
    return aimm::log_density(*g, x);
  }
  const auto& box = std::get<UniformBox>(kind);
  if (x.size() != box.lower.size()) {
    throw DimensionMismatch("uniform_box log_density: dimension mismatch");
  }
  if ((x.array() < box.lower.array()).any() ||
      (x.array() > box.upper.array()).any()) {
    return kNegInf;
  }
  return -(box.upper - box.lower).array().log().sum();
}

Eigen::VectorXd DefensiveKernel::sample(Rng& rng) const {
  if (const auto* g = std::get_if<GaussianComponent>(&kind)) {
    return aimm::sample(*g, rng);
  }
  const auto& box = std::get<UniformBox>(kind);
  Eigen::VectorXd x(box.lower.size());
  for (int i = 0; i < x.size(); ++i) {
    x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * uniform01(rng);
  }
  return x;
}

IncrementalProposal::IncrementalProposal(DefensiveKernel defensive, double kappa)
    : defensive_(std::move(defensive)), kappa_(kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw ValidationError("IncrementalProposal: kappa must lie in (0,1)");
  }
}

double IncrementalProposal::omega() const {
  return 1.0 / (1.0 + kappa_ * component_count());
}

std::vector<double> IncrementalProposal::normalized_weights() const {
  std::vector<double> w(log_weights_.size());
  if (w.empty()) return w;
  const double m = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(log_weights_[i] - m);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

Eigen::VectorXd IncrementalProposal::propose(Rng& rng) const {
  if (components_.empty() || uniform01(rng) < omega()) {
    return defensive_.sample(rng);
  }
  // Cumulative-sum inversion on the unnormalized (max-shifted) weights.
  const double m = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (double lw : log_weights_) total += std::exp(lw - m);
  double u = uniform01(rng) * total;
  size_t pick = components_.size() - 1;
  for (size_t i = 0; i < log_weights_.size(); ++i) {
    u -= std::exp(log_weights_[i] - m);
    if (u <= 0.0) {
      pick = i;
      break;
    }
  }
  return sample(components_[pick], rng);
}

double IncrementalProposal::log_density(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) {
    throw DimensionMismatch("IncrementalProposal::log_density: dimension mismatch");
  }
  const double w = omega();
  if (components_.empty()) return defensive_.log_density(x);
  std::vector<double> terms;
  terms.reserve(2);
  terms.push_back(std::log(w) + defensive_.log_density(x));
  terms.push_back(std::log1p(-w) + log_incremental_density(x));
  return log_sum_exp(terms);
}

double IncrementalProposal::log_incremental_density(const Eigen::VectorXd& x) const {
  if (components_.empty()) {
    throw EmptyMixture("log_incremental_density: no components");
  }
  std::vector<double> terms(components_.size());
  for (size_t i = 0; i < components_.size(); ++i) {
    terms[i] = log_weights_[i] + aimm::log_density(components_[i], x);
  }
  return log_sum_exp(terms) - log_sum_exp(log_weights_);
}

double IncrementalProposal::log_importance_weight(const Eigen::VectorXd& x,
                                                  double log_pi_x) const {
  return log_pi_x - log_density(x);
}

void IncrementalProposal::add_component(const Eigen::VectorXd& mean,
                                        const Eigen::MatrixXd& cov,
                                        double weight) {
  if (!(weight > 0.0)) {
    throw InvalidWeight("add_component: weight must be strictly positive");
  }
  add_component_log_weight(make_gaussian(mean, cov), std::log(weight));
}

void IncrementalProposal::add_component_log_weight(GaussianComponent component,
                                                   double log_weight) {
  if (component.dim() != dim()) {
    throw DimensionMismatch("add_component: component dimension mismatch");
  }
  if (!std::isfinite(log_weight)) {
    throw InvalidWeight("add_component: log weight must be finite");
  }
  components_.push_back(std::move(component));
  log_weights_.push_back(log_weight);
  ++generation_;
}

void IncrementalProposal::truncate_window(int m_max) {
  if (m_max <= 0) throw ValidationError("truncate_window: m_max must be positive");
  if (component_count() <= m_max) return;
  const size_t drop = components_.size() - static_cast<size_t>(m_max);
  components_.erase(components_.begin(), components_.begin() + drop);
  log_weights_.erase(log_weights_.begin(), log_weights_.begin() + drop);
  ++generation_;
}

}  // namespace aimm
