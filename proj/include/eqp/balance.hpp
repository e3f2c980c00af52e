#pragma once

#include "eqp/defaults.hpp"
#include "eqp/errors.hpp"
#include "eqp/matrix.hpp"

#include <optional>
#include <vector>

namespace eqp {

// Positive diagonal scalings D (left) and E (right).
struct ScalingPair {
  std::vector<double> d, e;
  int iterations = 0;
  double residual = 0;
};

// Connected components of the bipartite support graph Z_M with adjacency
// [[0,M],[M^T,0]]; `complete` flags components whose cross pairs are all
// nonzeros of M.
struct BipartiteComponent {
  std::vector<int> rows, cols;
  bool complete = false;
};
std::vector<BipartiteComponent> block_structure(const Matrix<double>& m,
                                                double support_eps = defaults::support_eps);

// Every nonzero entry lies on a positive permutation diagonal.
bool has_total_support(const Matrix<double>& m, double support_eps = 0.0);

bool is_doubly_stochastic(const Matrix<double>& m, double tol = defaults::ds_tol);

// Classical alternating row/column normalization; DME doubly stochastic.
ScalingPair sinkhorn(const Matrix<double>& m, double tol = defaults::sinkhorn_tol,
                     int max_iter = defaults::sinkhorn_max_iter,
                     const std::optional<std::vector<double>>& init_e = std::nullopt);

// Symmetric variant: one diagonal D with DMD doubly stochastic, via the
// geometric row-sum correction d <- sqrt(d / (Md)).
ScalingPair symmetric_sinkhorn(const Matrix<double>& m, double tol = defaults::sinkhorn_tol,
                               int max_iter = defaults::sinkhorn_max_iter);

// Two-sided scheme for rectangular M whose Z_M components are complete
// bipartite: alternates full symmetric scalings of M E^2 M^T and M^T D^2 M
// until N = DME has both Gram products doubly stochastic.
ScalingPair alternating_balance(const Matrix<double>& m, double tol = defaults::sinkhorn_tol,
                                int max_iter = defaults::sinkhorn_max_iter,
                                const std::optional<std::vector<double>>& init_e = std::nullopt);

// diag(d) * M * diag(e)
Matrix<double> scale(const Matrix<double>& m, const std::vector<double>& d,
                     const std::vector<double>& e);

}  // namespace eqp
