#ifndef AIMM_RUNNING_COVARIANCE_HPP
#define AIMM_RUNNING_COVARIANCE_HPP

#include <Eigen/Dense>

#include "aimm/errors.hpp"

namespace aimm {

/// Welford-style online mean and covariance (divisor count-1).
class RunningCovariance {
 public:
  void add(const Eigen::VectorXd& x) {
    if (n_ == 0) {
      mean_ = x;
      m2_ = Eigen::MatrixXd::Zero(x.size(), x.size());
    } else {
      const Eigen::VectorXd delta = x - mean_;
      mean_ += delta / static_cast<double>(n_ + 1);
      m2_.noalias() += delta * (x - mean_).transpose();
    }
    ++n_;
  }

  long count() const { return n_; }

  const Eigen::VectorXd& mean() const {
    if (n_ == 0) throw TooFewPoints("RunningCovariance: no points");
    return mean_;
  }

  Eigen::MatrixXd covariance() const {
    if (n_ < 2) throw TooFewPoints("RunningCovariance: need at least 2 points");
    // Symmetrize: the rank-1 updates accumulate tiny asymmetry.
    return (m2_ + m2_.transpose()) / (2.0 * static_cast<double>(n_ - 1));
  }

 private:
  long n_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd m2_;
};

}  // namespace aimm

#endif
