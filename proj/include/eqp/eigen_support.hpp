#pragma once

#include "eqp/matrix.hpp"

#include <utility>
#include <vector>

namespace eqp {

// Full symmetric eigendecomposition A = V diag(w) V^T (ascending eigenvalues).
std::pair<std::vector<double>, Matrix<double>> sym_eigen(const Matrix<double>& a);

}  // namespace eqp
