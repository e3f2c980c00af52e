#pragma once

#include "eqp/pseudo.hpp"
#include "eqp/quotient.hpp"

#include <complex>
#include <vector>

namespace eqp {

// U(t) = exp(i t A); unitary and symmetric since A is symmetric.
struct WalkMatrix {
  double t = 0;
  CMatrix u;
};

WalkMatrix walk_matrix(const Graph<double>& g, double t);

struct PstResult {
  bool transfer = false;
  double fidelity = 0;  // |U(t)_{uv}|^2
};

PstResult pst_check(const Graph<double>& g, int u, int v, double t,
                    double tol = defaults::pst_tol);

// Fidelity sampled on a uniform grid over [0, t_max]; every grid local
// maximum is sharpened by golden-section search, and candidates reaching
// 1 - tol are returned as (time, fidelity) pairs.
std::vector<std::pair<double, double>> pst_scan(const Graph<double>& g, int u, int v,
                                                double t_max, int steps,
                                                double tol = defaults::pst_tol);

// max-norm of U_G(t) P~ - P~ U_B(t) for the symmetrized quotient B.
double quotient_walk_residual(const Graph<double>& g, const Partition& pi, double t,
                              double tol = defaults::tol);
// pseudo variant with the weighted characteristic matrix
double quotient_walk_residual(const Graph<double>& g, const std::vector<double>& w,
                              const Partition& pi, double t, double tol = defaults::tol);

}  // namespace eqp
