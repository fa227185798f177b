#ifndef SPOTCAST_CHOLESKY_UPDATE_HPP_
#define SPOTCAST_CHOLESKY_UPDATE_HPP_

#include <Eigen/Dense>
#include <cmath>

namespace spotcast {

// Maintains the upper-triangular Cholesky factor R (R'R = G_AA) of a
// growing/shrinking principal submatrix of a Gram matrix, with O(k^2)
// column insertion and removal. Used by the LARS and NNLS active sets.
class UpdatableCholesky {
 public:
  explicit UpdatableCholesky(int capacity = 0) { reserve(capacity); }

  void reserve(int capacity) {
    if (capacity > r_.rows()) {
      Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(capacity, capacity);
      grown.topLeftCorner(size_, size_) = r_.topLeftCorner(size_, size_);
      r_ = std::move(grown);
    }
  }

  int size() const { return size_; }

  // Appends a column: gram_col holds G[A, j] for the current active set A
  // (size entries) and diag = G[j, j]. Returns false when the new pivot is
  // numerically zero (the column is linearly dependent on A).
  bool push(const Eigen::VectorXd& gram_col, double diag, double rel_tol = 1e-12) {
    reserve(size_ + 1);
    Eigen::VectorXd w(size_);
    if (size_ > 0) {
      w = r_.topLeftCorner(size_, size_)
              .transpose()
              .triangularView<Eigen::Lower>()
              .solve(gram_col.head(size_));
    }
    const double rest = diag - w.squaredNorm();
    if (!(rest > rel_tol * (diag > 0 ? diag : 1.0))) return false;
    r_.col(size_).head(size_) = w;
    r_(size_, size_) = std::sqrt(rest);
    ++size_;
    return true;
  }

  // Removes position idx from the active set, restoring triangularity with
  // Givens rotations.
  void remove(int idx) {
    for (int j = idx; j + 1 < size_; ++j) {
      r_.col(j).head(size_) = r_.col(j + 1).head(size_);
    }
    --size_;
    for (int j = idx; j < size_; ++j) {
      // Zero the subdiagonal entry r_(j+1, j) against r_(j, j).
      const double a = r_(j, j);
      const double b = r_(j + 1, j);
      const double rho = std::hypot(a, b);
      if (rho == 0.0) continue;
      const double c = a / rho;
      const double s = b / rho;
      for (int k = j; k < size_; ++k) {
        const double t1 = r_(j, k);
        const double t2 = r_(j + 1, k);
        r_(j, k) = c * t1 + s * t2;
        r_(j + 1, k) = -s * t1 + c * t2;
      }
    }
  }

  // Solves G_AA x = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = r_.topLeftCorner(size_, size_)
                            .transpose()
                            .triangularView<Eigen::Lower>()
                            .solve(b);
    return r_.topLeftCorner(size_, size_).triangularView<Eigen::Upper>().solve(x);
  }

 private:
  Eigen::MatrixXd r_;
  int size_ = 0;
};

}  // namespace spotcast

#endif  // SPOTCAST_CHOLESKY_UPDATE_HPP_
