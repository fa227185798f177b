#include "spotcast/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotcast/cholesky_update.hpp"
#include "spotcast/errors.hpp"

namespace spotcast {

NnlsSolution nnls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (!X.allFinite() || !y.allFinite()) throw NonFiniteInput("nnls: non-finite input");
  const Eigen::Index p = X.cols();

  const Eigen::MatrixXd G = X.transpose() * X;
  const Eigen::VectorXd b = X.transpose() * y;

  NnlsSolution sol;
  sol.beta = Eigen::VectorXd::Zero(p);

  std::vector<int> passive;
  std::vector<double> beta_p;   // coefficients on the passive set
  std::vector<std::uint8_t> in_passive(static_cast<std::size_t>(p), 0);
  std::vector<std::uint8_t> excluded(static_cast<std::size_t>(p), 0);
  UpdatableCholesky chol(static_cast<int>(p));

  const double tol = 1e-8 * std::max(b.cwiseAbs().maxCoeff(), 1.0);
  const int max_iter = 10 * static_cast<int>(p) + 50;

  Eigen::VectorXd dual = b;  // X'(y - X beta) with beta = 0
  sol.converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Pick the most violated dual among free columns.
    int jbest = -1;
    double wbest = tol;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (in_passive[static_cast<std::size_t>(j)] || excluded[static_cast<std::size_t>(j)]) continue;
      if (dual(j) > wbest) {
        wbest = dual(j);
        jbest = static_cast<int>(j);
      }
    }
    if (jbest < 0) {
      sol.converged = true;
      break;
    }

    Eigen::VectorXd gcol(static_cast<Eigen::Index>(passive.size()));
    for (std::size_t a = 0; a < passive.size(); ++a) gcol(static_cast<Eigen::Index>(a)) = G(passive[a], jbest);
    if (!chol.push(gcol, G(jbest, jbest))) {
      excluded[static_cast<std::size_t>(jbest)] = 1;  // linearly dependent on the passive set
      continue;
    }
    passive.push_back(jbest);
    beta_p.push_back(0.0);
    in_passive[static_cast<std::size_t>(jbest)] = 1;

    // Inner loop: unconstrained solve on the passive set, clip back to feasibility.
    for (;;) {
      Eigen::VectorXd bp(static_cast<Eigen::Index>(passive.size()));
      for (std::size_t a = 0; a < passive.size(); ++a) bp(static_cast<Eigen::Index>(a)) = b(passive[a]);
      const Eigen::VectorXd z = chol.solve(bp);

      double alpha = 1.0;
      for (std::size_t a = 0; a < passive.size(); ++a) {
        const double za = z(static_cast<Eigen::Index>(a));
        if (za <= 0.0) {
          const double step = beta_p[a] / (beta_p[a] - za);
          alpha = std::min(alpha, step);
        }
      }
      if (alpha >= 1.0) {
        for (std::size_t a = 0; a < passive.size(); ++a) beta_p[a] = z(static_cast<Eigen::Index>(a));
        break;
      }
      for (std::size_t a = 0; a < passive.size(); ++a)
        beta_p[a] += alpha * (z(static_cast<Eigen::Index>(a)) - beta_p[a]);
      // Remove everything pinned at (or clipped just past) zero.
      for (std::size_t a = passive.size(); a-- > 0;) {
        if (beta_p[a] <= 1e-12) {
          in_passive[static_cast<std::size_t>(passive[a])] = 0;
          chol.remove(static_cast<int>(a));
          passive.erase(passive.begin() + static_cast<std::ptrdiff_t>(a));
          beta_p.erase(beta_p.begin() + static_cast<std::ptrdiff_t>(a));
        }
      }
      if (passive.empty()) break;
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (std::size_t a = 0; a < passive.size(); ++a) beta(passive[a]) = beta_p[a];
    dual = b - G * beta;
  }

  for (std::size_t a = 0; a < passive.size(); ++a) sol.beta(passive[a]) = beta_p[a];
  sol.active = passive;
  std::sort(sol.active.begin(), sol.active.end());
  sol.residual = y - X * sol.beta;
  sol.dual = b - G * sol.beta;
  return sol;
}

}  // namespace spotcast
