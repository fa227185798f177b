#ifndef SPOTCAST_LARS_HPP_
#define SPOTCAST_LARS_HPP_

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace spotcast {

// Piecewise-linear lasso path for
//   min_theta sum_t w_t (y_t - x_t' theta)^2 + lambda * sum_j |theta_j|.
// Between breakpoints the coefficients are linear in lambda.
struct LassoPath {
  struct Breakpoint {
    double lambda = 0.0;
    std::vector<std::pair<int, double>> theta;  // active coefficients
    double rss = 0.0;
    int df = 0;  // active-set size
  };
  std::vector<Breakpoint> breakpoints;
  Eigen::Index n = 0;
  Eigen::Index p = 0;

  Eigen::VectorXd dense_theta(std::size_t k) const;
  // Path solution at an arbitrary penalty (linear interpolation; zero above
  // the first breakpoint, last breakpoint below the path end).
  Eigen::VectorXd theta_at(double lambda) const;
};

struct LarsOptions {
  int max_steps = 0;          // 0: 8 * min(n, p) + 32
  double lambda_floor = 0.0;  // stop once lambda falls below this
  int max_active = 0;         // 0: min(n - 1, p)
};

// LARS with the lasso modification (sign-violating coefficients are dropped
// and may re-enter). Weights fold into the rows as sqrt(w); passing an
// empty weights vector means unweighted. Columns should be centered and on
// comparable scales for the penalty to be meaningful; the function does not
// standardize.
LassoPath lars_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& weights = Eigen::VectorXd(),
                     const LarsOptions& opts = {});

// Breakpoint index minimizing n*log(RSS/n) + 2*df; ties take the smaller df.
std::size_t select_aic(const LassoPath& path);
double aic_of(const LassoPath::Breakpoint& bp, Eigen::Index n);

}  // namespace spotcast

#endif  // SPOTCAST_LARS_HPP_
