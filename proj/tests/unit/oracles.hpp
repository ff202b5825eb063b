#pragma once

// Independent oracles shared by the unit tests and the acceptance checks.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/SVD>

#include "qmaxent/linalg.hpp"
#include "qmaxent/random.hpp"

namespace qmaxent::test {

// Entropy maximizer over probability vectors p >= 0 with sum p = 1 and
// sum p_k diag_i(k) = alpha_i, by grid search (step `h`) over the null space
// of the constraint matrix. Works for null spaces of dimension 1 or 2.
inline RVector brute_force_simplex(const std::vector<RVector>& diags, const RVector& feasible, double h) {
  const Eigen::Index d = feasible.size();
  RMatrix c(static_cast<Eigen::Index>(diags.size()) + 1, d);
  c.row(0).setOnes();
  for (std::size_t i = 0; i < diags.size(); ++i) c.row(static_cast<Eigen::Index>(i) + 1) = diags[i].transpose();
  Eigen::JacobiSVD<RMatrix> svd(c, Eigen::ComputeFullV);
  const Eigen::Index rank = svd.rank();
  const RMatrix n = svd.matrixV().rightCols(d - rank);
  auto entropy = [](const RVector& p) {
    double s = 0;
    for (Eigen::Index k = 0; k < p.size(); ++k) s -= p(k) > 0 ? p(k) * std::log(p(k)) : 0.0;
    return s;
  };
  RVector best = feasible;
  double best_s = entropy(feasible);
  const int steps = static_cast<int>(std::ceil(2.0 / h));
  const int inner = n.cols() > 1 ? steps : 0;
  for (int a = -steps; a <= steps; ++a) {
    for (int b = -inner; b <= inner; ++b) {
      RVector p = feasible + a * h * n.col(0);
      if (n.cols() > 1) p += b * h * n.col(1);
      if (p.minCoeff() < 0) continue;
      const double s = entropy(p);
      if (s > best_s) {
        best_s = s;
        best = p;
      }
    }
  }
  return best;
}

inline RVector random_probability(Eigen::Index d, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  RVector p(d);
  for (Eigen::Index k = 0; k < d; ++k) p(k) = ex(rng);
  return p / p.sum();
}

}  // namespace qmaxent::test
