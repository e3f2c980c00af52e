#pragma once

#include "eqp/quotient.hpp"

#include <optional>

namespace eqp {

template <class T>
struct FracisoResult {
  bool isomorphic = false;
  // Present on success: coarsest equitable partitions with cells aligned so
  // that cell i of pi matches cell i of sigma, and the shared quotient.
  std::optional<Partition> pi, sigma;
  std::optional<QuotientGraph<T>> quotient;
};

// Decision by color refinement run jointly over both graphs: the canonical
// stable colors are comparable across graphs, and the class-size multisets
// agree exactly when the coarsest equitable partitions match.
template <class T>
FracisoResult<T> fractionally_isomorphic(const Graph<T>& g, const Graph<T>& h,
                                         double tol = defaults::tol) {
  if (g.n != h.n) return {};
  auto joint = detail::refine_joint<T>({&g, &h}, {std::vector<int>(g.n, 0),
                                                  std::vector<int>(h.n, 0)}, tol);
  std::vector<int> count_g(joint.color_count, 0), count_h(joint.color_count, 0);
  for (int v = 0; v < g.n; ++v) ++count_g[joint.colors[0][v]];
  for (int v = 0; v < h.n; ++v) ++count_h[joint.colors[1][v]];
  if (count_g != count_h) return {};

  std::vector<std::vector<int>> cells_g(joint.color_count), cells_h(joint.color_count);
  for (int v = 0; v < g.n; ++v) cells_g[joint.colors[0][v]].push_back(v);
  for (int v = 0; v < h.n; ++v) cells_h[joint.colors[1][v]].push_back(v);
  Partition pi(std::move(cells_g), g.n), sigma(std::move(cells_h), h.n);

  auto qg = quotient(g, pi, tol), qh = quotient(h, sigma, tol);
  if (!qg.mat.approx_equal(qh.mat, tol) || qg.cell_sizes != qh.cell_sizes) return {};

  FracisoResult<T> out;
  out.isomorphic = true;
  out.pi = std::move(pi);
  out.sigma = std::move(sigma);
  out.quotient = std::move(qg);
  return out;
}

// Doubly stochastic witness M = P (P^T P)^{-1} Q^T built from the matched
// coarsest partitions; exact over rationals.
template <class T>
std::optional<Matrix<T>> fraciso_witness(const Graph<T>& g, const Graph<T>& h,
                                         double tol = defaults::tol) {
  auto dec = fractionally_isomorphic(g, h, tol);
  if (!dec.isomorphic) return std::nullopt;
  Matrix<T> m(g.n, h.n);
  for (int c = 0; c < dec.pi->cell_count(); ++c) {
    T inv = T(1) / T(static_cast<int>(dec.pi->cell(c).size()));
    for (int v : dec.pi->cell(c))
      for (int u : dec.sigma->cell(c)) m(v, u) = inv;
  }
  return m;
}

template <class T>
bool verify_fraciso_witness(const Graph<T>& g, const Graph<T>& h, const Matrix<T>& m,
                            double tol = defaults::tol) {
  if (m.rows() != g.n || m.cols() != h.n)
    throw std::invalid_argument("witness dimensions do not match the graphs");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == T(0)) && m(i, j) < T(0) &&
          !scalar_traits<T>::eq(m(i, j), T(0), tol))
        return false;
  for (int i = 0; i < m.rows(); ++i)
    if (!scalar_traits<T>::eq(m.row_sum(i), T(1), tol)) return false;
  for (int j = 0; j < m.cols(); ++j)
    if (!scalar_traits<T>::eq(m.col_sum(j), T(1), tol)) return false;
  return (g.adj * m).approx_equal(m * h.adj, tol);
}

}  // namespace eqp
