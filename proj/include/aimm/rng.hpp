#ifndef AIMM_RNG_HPP
#define AIMM_RNG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace aimm {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline Eigen::VectorXd standard_normal_vector(int d, Rng& rng) {
  Eigen::VectorXd z(d);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int i = 0; i < d; ++i) z[i] = n01(rng);
  return z;
}

}  // namespace aimm

#endif
