// Independent reference implementations used to validate the production
// solvers. Deliberately simple and slow.
#ifndef SPOTCAST_TESTS_ORACLES_HPP_
#define SPOTCAST_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace oracles {

// Cyclic coordinate descent for
//   min_theta ||y - X theta||^2 + lambda * ||theta||_1
// iterated to a tight duality-style tolerance. Returns the coefficient
// vector.
inline Eigen::VectorXd lasso_coordinate_descent(const Eigen::MatrixXd& X,
                                                const Eigen::VectorXd& y, double lambda,
                                                int max_sweeps = 200000, double tol = 1e-13) {
  const Eigen::Index p = X.cols();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd norms(p);
  for (Eigen::Index j = 0; j < p; ++j) norms(j) = X.col(j).squaredNorm();
  Eigen::VectorXd r = y;  // residual y - X theta
  const double half_lambda = lambda / 2.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (norms(j) <= 0.0) continue;
      const double rho = X.col(j).dot(r) + norms(j) * theta(j);
      double t;
      if (rho > half_lambda)
        t = (rho - half_lambda) / norms(j);
      else if (rho < -half_lambda)
        t = (rho + half_lambda) / norms(j);
      else
        t = 0.0;
      const double change = t - theta(j);
      if (change != 0.0) {
        r -= change * X.col(j);
        theta(j) = t;
        max_change = std::max(max_change, std::abs(change));
      }
    }
    if (max_change < tol) break;
  }
  return theta;
}

// Lasso objective value.
inline double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const Eigen::VectorXd& theta, double lambda) {
  return (y - X * theta).squaredNorm() + lambda * theta.lpNorm<1>();
}

// Exhaustive nonnegative least squares: solve the unconstrained problem on
// every support; supports whose solution is nonnegative are feasible
// candidates, and the best of them is the optimum. Exponential in p.
inline double nnls_best_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const int p = static_cast<int>(X.cols());
  double best = y.squaredNorm();  // empty support
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    std::vector<int> sup;
    for (int j = 0; j < p; ++j)
      if (mask & (1u << j)) sup.push_back(j);
    Eigen::MatrixXd Xs(X.rows(), static_cast<Eigen::Index>(sup.size()));
    for (std::size_t a = 0; a < sup.size(); ++a) Xs.col(static_cast<Eigen::Index>(a)) = X.col(sup[a]);
    Eigen::VectorXd beta = (Xs.transpose() * Xs)
                               .ldlt()
                               .solve(Xs.transpose() * y);
    if (!beta.allFinite()) continue;
    if ((beta.array() < -1e-12).any()) continue;
    const double obj = (y - Xs * beta.cwiseMax(0.0)).squaredNorm();
    best = std::min(best, obj);
  }
  return best;
}

}  // namespace oracles

#endif  // SPOTCAST_TESTS_ORACLES_HPP_
