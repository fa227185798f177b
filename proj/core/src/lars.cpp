#include "spotcast/lars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotcast/cholesky_update.hpp"
#include "spotcast/errors.hpp"

namespace spotcast {

Eigen::VectorXd LassoPath::dense_theta(std::size_t k) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
  for (const auto& [j, v] : breakpoints[k].theta) out(j) = v;
  return out;
}

Eigen::VectorXd LassoPath::theta_at(double lambda) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
  if (breakpoints.empty() || lambda >= breakpoints.front().lambda) return out;
  std::size_t k = 0;
  while (k + 1 < breakpoints.size() && breakpoints[k + 1].lambda > lambda) ++k;
  if (k + 1 == breakpoints.size()) return dense_theta(k);
  const double l0 = breakpoints[k].lambda;
  const double l1 = breakpoints[k + 1].lambda;
  const double f = (l0 - lambda) / (l0 - l1);
  out = dense_theta(k) * (1.0 - f) + dense_theta(k + 1) * f;
  return out;
}

LassoPath lars_lasso(const Eigen::MatrixXd& X_in, const Eigen::VectorXd& y_in,
                     const Eigen::VectorXd& weights, const LarsOptions& opts) {
  if (!X_in.allFinite() || !y_in.allFinite()) throw NonFiniteInput("lars: non-finite input");

  Eigen::MatrixXd X = X_in;
  Eigen::VectorXd y = y_in;
  if (weights.size() > 0) {
    if (weights.size() != y.size() || (weights.array() <= 0.0).any())
      throw NonFiniteInput("lars: weights must be positive and match the row count");
    const Eigen::ArrayXd sw = weights.array().sqrt();
    X.array().colwise() *= sw;
    y.array() *= sw;
  }

  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  const int max_active =
      opts.max_active > 0 ? opts.max_active : static_cast<int>(std::min<Eigen::Index>(n - 1, p));
  const int max_steps = opts.max_steps > 0
                            ? opts.max_steps
                            : 8 * static_cast<int>(std::min<Eigen::Index>(n, p)) + 32;

  const Eigen::MatrixXd G = X.transpose() * X;
  Eigen::VectorXd c = X.transpose() * y;
  double rss = y.squaredNorm();

  LassoPath path;
  path.n = n;
  path.p = p;

  std::vector<int> active;
  std::vector<double> sign;
  std::vector<double> theta_a;
  std::vector<std::uint8_t> in_active(static_cast<std::size_t>(p), 0);
  std::vector<std::uint8_t> excluded(static_cast<std::size_t>(p), 0);
  UpdatableCholesky chol(std::min<int>(max_active + 1, static_cast<int>(p)));

  const double c0 = c.cwiseAbs().maxCoeff();
  const double tiny = std::max(c0, 1.0) * 1e-12;

  auto record = [&](double lambda) {
    LassoPath::Breakpoint bp;
    bp.lambda = lambda;
    bp.rss = std::max(rss, 0.0);
    bp.df = static_cast<int>(active.size());
    bp.theta.reserve(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) bp.theta.emplace_back(active[a], theta_a[a]);
    std::sort(bp.theta.begin(), bp.theta.end());
    if (!path.breakpoints.empty() && path.breakpoints.back().lambda - lambda < tiny * 1e-3) {
      path.breakpoints.back() = std::move(bp);  // coalesce zero-length segments
    } else {
      path.breakpoints.push_back(std::move(bp));
    }
  };

  auto gram_col_active = [&](int j) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) g(static_cast<Eigen::Index>(a)) = G(active[a], j);
    return g;
  };

  auto try_enter = [&](int j) {
    if (chol.push(gram_col_active(j), G(j, j))) {
      active.push_back(j);
      sign.push_back(c(j) >= 0.0 ? 1.0 : -1.0);
      theta_a.push_back(0.0);
      in_active[static_cast<std::size_t>(j)] = 1;
      return true;
    }
    excluded[static_cast<std::size_t>(j)] = 1;  // rank collapse: skip this column
    return false;
  };

  // Path start: all coefficients zero at lambda_max = 2*max|X'y|.
  double C = c0;
  record(2.0 * C);
  if (C < tiny) return path;

  bool just_dropped = false;
  for (int step = 0; step < max_steps; ++step) {
    if (!just_dropped) {
      // Bring in the most correlated eligible column.
      int jbest = -1;
      double cbest = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (in_active[static_cast<std::size_t>(j)] || excluded[static_cast<std::size_t>(j)])
          continue;
        const double a = std::abs(c(j));
        if (a > cbest) {
          cbest = a;
          jbest = static_cast<int>(j);
        }
      }
      if (active.empty()) {
        if (jbest < 0 || cbest < tiny) break;
        C = cbest;
        if (!try_enter(jbest)) continue;
      } else if (jbest >= 0 && cbest >= C - tiny) {
        if (!try_enter(jbest)) continue;
      }
    }
    just_dropped = false;
    if (active.empty()) break;
    if (C < tiny || 2.0 * C <= opts.lambda_floor) break;

    // Equiangular direction in coefficient space.
    Eigen::VectorXd s(static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) s(static_cast<Eigen::Index>(a)) = sign[a];
    const Eigen::VectorXd w = chol.solve(s);
    const double q = s.dot(w);
    if (!(q > 0.0)) throw RankCollapse("lars: active Gram lost positive definiteness");

    // Correlation drift of every column along the direction.
    Eigen::VectorXd a_all = Eigen::VectorXd::Zero(p);
    for (std::size_t a = 0; a < active.size(); ++a) a_all += w(static_cast<Eigen::Index>(a)) * G.col(active[a]);

    double gamma = C;  // full least squares on the active set
    int enter_j = -1;
    int drop_idx = -1;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (in_active[static_cast<std::size_t>(j)] || excluded[static_cast<std::size_t>(j)]) continue;
      const double aj = a_all(j);
      const double cj = c(j);
      const double d1 = 1.0 - aj;
      const double d2 = 1.0 + aj;
      if (d1 > tiny / std::max(C, tiny)) {
        const double g = (C - cj) / d1;
        if (g > tiny * 1e-3 && g < gamma - tiny * 1e-3) {
          gamma = g;
          enter_j = static_cast<int>(j);
        }
      }
      if (d2 > tiny / std::max(C, tiny)) {
        const double g = (C + cj) / d2;
        if (g > tiny * 1e-3 && g < gamma - tiny * 1e-3) {
          gamma = g;
          enter_j = static_cast<int>(j);
        }
      }
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double wa = w(static_cast<Eigen::Index>(a));
      if (wa == 0.0) continue;
      const double g = -theta_a[a] / wa;
      if (g > tiny * 1e-3 && g < gamma - tiny * 1e-3) {
        gamma = g;
        drop_idx = static_cast<int>(a);
        enter_j = -1;
      }
    }

    // Advance to the next knot.
    for (std::size_t a = 0; a < active.size(); ++a) theta_a[a] += gamma * w(static_cast<Eigen::Index>(a));
    c -= gamma * a_all;
    rss -= gamma * q * (2.0 * C - gamma);
    C -= gamma;

    if (drop_idx >= 0) {
      theta_a[static_cast<std::size_t>(drop_idx)] = 0.0;
      record(2.0 * C);
      const int j = active[static_cast<std::size_t>(drop_idx)];
      in_active[static_cast<std::size_t>(j)] = 0;
      chol.remove(drop_idx);
      active.erase(active.begin() + drop_idx);
      sign.erase(sign.begin() + drop_idx);
      theta_a.erase(theta_a.begin() + drop_idx);
      just_dropped = true;
      continue;
    }
    record(2.0 * C);
    if (enter_j < 0) {
      if (static_cast<int>(active.size()) >= max_active) break;
      if (C < tiny) break;
    }
    if (static_cast<int>(active.size()) >= max_active) break;
  }
  return path;
}

double aic_of(const LassoPath::Breakpoint& bp, Eigen::Index n) {
  const double rss = std::max(bp.rss, 1e-300);
  return static_cast<double>(n) * std::log(rss / static_cast<double>(n)) + 2.0 * bp.df;
}

std::size_t select_aic(const LassoPath& path) {
  std::size_t best = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < path.breakpoints.size(); ++k) {
    const double aic = aic_of(path.breakpoints[k], path.n);
    const bool better = aic < best_aic - 1e-12 ||
                        (std::abs(aic - best_aic) <= 1e-12 &&
                         path.breakpoints[k].df < path.breakpoints[best].df);
    if (better) {
      best_aic = aic;
      best = k;
    }
  }
  return best;
}

}  // namespace spotcast
