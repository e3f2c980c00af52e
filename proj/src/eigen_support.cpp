#include "eqp/eigen_support.hpp"

#include "eqp/errors.hpp"

#include <Eigen/Dense>

namespace eqp {

std::pair<std::vector<double>, Matrix<double>> sym_eigen(const Matrix<double>& a) {
  if (!a.square()) throw std::invalid_argument("eigendecomposition needs a square matrix");
  const int n = a.rows();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw numerical_error("eigendecomposition failed");
  std::vector<double> w(n);
  Matrix<double> v(n, n);
  for (int i = 0; i < n; ++i) {
    w[i] = solver.eigenvalues()(i);
    for (int j = 0; j < n; ++j) v(i, j) = solver.eigenvectors()(i, j);
  }
  return {std::move(w), std::move(v)};
}

}  // namespace eqp
