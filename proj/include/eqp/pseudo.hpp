#pragma once

#include "eqp/balance.hpp"
#include "eqp/quotient.hpp"

#include <optional>

namespace eqp {

// Positive vertex weights normalized to unit Euclidean norm on each cell.
struct WeightedPartition {
  Partition pi;
  std::vector<double> w;
};

// Vertex weights w making pi equitable after conjugation: returns B with
// A (D_w P) = (D_w P) B when the column space of D_w P is A-invariant.
// Uses w as given; B rescales when w is rescaled per cell.
std::optional<QuotientGraph<double>> is_pseudo_equitable(const Graph<double>& g,
                                                         const std::vector<double>& w,
                                                         const Partition& pi,
                                                         double tol = defaults::tol);

// Symmetric quotient P_(w,pi)^T A P_(w,pi) after per-cell normalization of w.
QuotientGraph<double> pseudo_symmetrized_quotient(const Graph<double>& g,
                                                  const std::vector<double>& w,
                                                  const Partition& pi,
                                                  double tol = defaults::tol);

std::vector<double> normalize_per_cell(const std::vector<double>& w, const Partition& pi);

// Unit-norm positive eigenvector and spectral radius of a connected
// nonnegative graph, by shifted power iteration.
std::pair<std::vector<double>, double> perron_vector(const Graph<double>& g,
                                                     double tol = defaults::perron_tol,
                                                     int max_iter = defaults::perron_max_iter);

// Symmetric idempotent nonnegative matrix together with its special positive
// eigenvector (per-block Perron vectors summed).
struct Projector {
  Matrix<double> s;
  std::vector<double> special_vector;
};

// S = D_w P P^T D_w for per-cell normalized weights.
Projector projector_from_partition(const std::vector<double>& w, const Partition& pi,
                                   double tol = defaults::tol);

// Inverse direction: cells are the irreducible blocks of S's support, the
// weights its special positive eigenvector.
WeightedPartition partition_from_projector(const Matrix<double>& s, double tol = defaults::tol,
                                           double support_eps = defaults::support_eps);

// Orthogonal projector onto rng S1 ∩ rng S2 via the iterated product
// (S1 S2 S1)^n, with an eigenbasis fallback when the iteration is slow.
Projector projector_meet(const Matrix<double>& s1, const Matrix<double>& s2,
                         double tol = defaults::meet_tol, int max_iter = defaults::meet_max_iter);

struct CommonPseudoQuotient {
  WeightedPartition left, right;
  std::vector<int> matching;
  QuotientGraph<double> quotient;  // shared pseudo symmetrized quotient
  Matrix<double> balanced;         // N = DME
  ScalingPair scaling;
};

// From a nonnegative intertwiner M whose Z_M components are complete
// bipartite: balance M, read the cells off the components and the weights off
// the scaling diagonals, and return the shared pseudo symmetrized quotient.
CommonPseudoQuotient common_pseudo_quotient_from_witness(const Graph<double>& g,
                                                         const Graph<double>& h,
                                                         const Matrix<double>& m,
                                                         double tol = defaults::ds_tol);

}  // namespace eqp
