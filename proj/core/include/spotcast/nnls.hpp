#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spotcast {

// Solution of min ||X beta - y||^2 subject to beta >= 0.
struct NnlsSolution {
  Eigen::VectorXd beta;      // length p, zeros off the passive set
  std::vector<int> active;   // passive-set column indices, sorted
  Eigen::VectorXd residual;  // y - X beta
  Eigen::VectorXd dual;      // X'(y - X beta); <= 0 off the passive set at a KKT point
  bool converged = true;
};

// Lawson-Hanson active-set method run on the Gram system.
NnlsSolution nnls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

}  // namespace spotcast
