#include "eqp/pseudo.hpp"

#include "eqp/eigen_support.hpp"

#include <algorithm>
#include <cmath>

namespace eqp {

namespace {

void require_positive(const std::vector<double>& w) {
  for (double x : w)
    if (!(x > 0) || !std::isfinite(x))
      throw std::invalid_argument("weight vector must be strictly positive");
}

// Top eigenvector of a nonnegative symmetric block by shifted power iteration.
std::pair<std::vector<double>, double> block_perron(const Matrix<double>& s,
                                                    const std::vector<int>& verts, double tol,
                                                    int max_iter) {
  const int k = static_cast<int>(verts.size());
  std::vector<double> x(k, 1.0 / std::sqrt(static_cast<double>(k)));
  double shift = 1.0, lambda = 0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> y(k, 0.0);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) y[a] += s(verts[a], verts[b]) * x[b];
      y[a] += shift * x[a];
    }
    double norm = 0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
    lambda = 0;
    for (int a = 0; a < k; ++a) {
      double ax = 0;
      for (int b = 0; b < k; ++b) ax += s(verts[a], verts[b]) * y[b];
      lambda += y[a] * ax;
    }
    double resid = 0;
    for (int a = 0; a < k; ++a) {
      double ax = 0;
      for (int b = 0; b < k; ++b) ax += s(verts[a], verts[b]) * y[b];
      resid = std::max(resid, std::abs(ax - lambda * y[a]));
    }
    x = std::move(y);
    if (resid < tol) return {x, lambda};
  }
  throw numerical_error("power iteration did not converge");
}

}  // namespace

std::vector<double> normalize_per_cell(const std::vector<double>& w, const Partition& pi) {
  std::vector<double> out = w;
  for (const auto& cell : pi.cells()) {
    double norm = 0;
    for (int v : cell) norm += w[v] * w[v];
    norm = std::sqrt(norm);
    for (int v : cell) out[v] = w[v] / norm;
  }
  return out;
}

std::optional<QuotientGraph<double>> is_pseudo_equitable(const Graph<double>& g,
                                                         const std::vector<double>& w,
                                                         const Partition& pi, double tol) {
  if (static_cast<int>(w.size()) != g.n || pi.n() != g.n)
    throw std::invalid_argument("weights/partition do not match the graph");
  require_positive(w);
  const int k = pi.cell_count();
  Matrix<double> b(k, k);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) {
      bool first = true;
      for (int v : pi.cell(r)) {
        double sum = 0;
        for (int x : pi.cell(s)) sum += g.adj(v, x) * w[x];
        double q = sum / w[v];
        if (first) {
          b(r, s) = q;
          first = false;
        } else if (std::abs(q - b(r, s)) > tol) {
          return std::nullopt;
        }
      }
    }
  return QuotientGraph<double>{QuotientKind::combinatorial, std::move(b), pi.cell_sizes()};
}

QuotientGraph<double> pseudo_symmetrized_quotient(const Graph<double>& g,
                                                  const std::vector<double>& w,
                                                  const Partition& pi, double tol) {
  if (!is_pseudo_equitable(g, w, pi, tol))
    throw std::invalid_argument("partition is not pseudo-equitable for these weights");
  auto u = normalize_per_cell(w, pi);
  const int k = pi.cell_count();
  Matrix<double> b(k, k);
  for (int r = 0; r < k; ++r)
    for (int s = r; s < k; ++s) {
      double sum = 0;
      for (int v : pi.cell(r))
        for (int x : pi.cell(s)) sum += u[v] * g.adj(v, x) * u[x];
      b(r, s) = b(s, r) = sum;
    }
  return {QuotientKind::symmetrized, std::move(b), pi.cell_sizes()};
}

std::pair<std::vector<double>, double> perron_vector(const Graph<double>& g, double tol,
                                                     int max_iter) {
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (g.adj(i, j) < 0) throw std::invalid_argument("perron_vector needs nonnegative weights");
  if (connected_components(g).size() != 1)
    throw std::invalid_argument("graph is disconnected; handle components separately");
  std::vector<int> all(g.n);
  for (int v = 0; v < g.n; ++v) all[v] = v;
  auto [x, lambda] = block_perron(g.adj, all, tol, max_iter);
  for (double& v : x) v = std::abs(v);
  return {x, lambda};
}

Projector projector_from_partition(const std::vector<double>& w, const Partition& pi,
                                   double tol) {
  if (static_cast<int>(w.size()) != pi.n())
    throw std::invalid_argument("weights do not match the partition");
  require_positive(w);
  for (const auto& cell : pi.cells()) {
    double norm = 0;
    for (int v : cell) norm += w[v] * w[v];
    if (std::abs(norm - 1.0) > std::max(tol, 1e-8))
      throw std::invalid_argument("weights must have unit norm on every cell");
  }
  const int n = pi.n();
  Matrix<double> s(n, n);
  for (const auto& cell : pi.cells())
    for (int a : cell)
      for (int b : cell) s(a, b) = w[a] * w[b];
  return {std::move(s), w};
}

WeightedPartition partition_from_projector(const Matrix<double>& s, double tol,
                                           double support_eps) {
  if (!s.square()) throw std::invalid_argument("projector must be square");
  if (!s.is_symmetric(tol)) throw std::invalid_argument("projector must be symmetric");
  if ((s * s).max_abs_diff(s) > std::max(tol, 1e-9))
    throw std::invalid_argument("matrix is not idempotent");
  const int n = s.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s(i, j) < -std::max(tol, defaults::nonneg_eps))
        throw std::invalid_argument("projector has negative entries");

  // irreducible blocks on the support
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    int id = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::vector<int> stack{v};
    comp[v] = id;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      blocks[id].push_back(a);
      for (int b = 0; b < n; ++b)
        if (comp[b] < 0 && std::abs(s(a, b)) > support_eps) {
          comp[b] = id;
          stack.push_back(b);
        }
    }
    std::sort(blocks[id].begin(), blocks[id].end());
  }

  std::vector<double> w(n, 0.0);
  for (const auto& blk : blocks) {
    auto [x, lambda] = block_perron(s, blk, 1e-13, defaults::perron_max_iter);
    (void)lambda;
    double sign = 0;
    for (double v : x) sign += v;
    for (size_t i = 0; i < blk.size(); ++i) {
      double v = (sign < 0 ? -x[i] : x[i]);
      if (!(v > support_eps))
        throw std::invalid_argument("projector block has no positive eigenvector; no positive "
                                    "vector lies in the range");
      w[blk[i]] = v;
    }
  }
  Partition pi = Partition(std::move(blocks), n).canonicalized();
  auto round_trip = projector_from_partition(w, pi, std::max(tol, 1e-8));
  if (round_trip.s.max_abs_diff(s) > std::max(tol, 1e-8))
    throw std::invalid_argument("matrix is not the projector of any weighted partition");
  return {std::move(pi), std::move(w)};
}

Projector projector_meet(const Matrix<double>& s1, const Matrix<double>& s2, double tol,
                         int max_iter) {
  if (s1.rows() != s2.rows() || !s1.square() || !s2.square())
    throw std::invalid_argument("projectors must be square and of equal size");
  Matrix<double> x = s1 * s2 * s1;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    Matrix<double> y = x * x;
    double delta = y.max_abs_diff(x);
    x = std::move(y);
    if (delta < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // eigenvalues of S1+S2 equal to 2 span the intersection of the ranges
    auto [w, v] = sym_eigen(s1 + s2);
    const int n = s1.rows();
    Matrix<double> p(n, n);
    for (int k = 0; k < n; ++k) {
      if (std::abs(w[k] - 2.0) > 1e-7) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) += v(i, k) * v(j, k);
    }
    x = std::move(p);
  }
  auto wp = partition_from_projector(x, std::max(tol, 1e-8));
  return {std::move(x), std::move(wp.w)};
}

CommonPseudoQuotient common_pseudo_quotient_from_witness(const Graph<double>& g,
                                                         const Graph<double>& h,
                                                         const Matrix<double>& m, double tol) {
  if (m.rows() != g.n || m.cols() != h.n)
    throw std::invalid_argument("witness dimensions do not match the graphs");
  if (m.max_abs() <= 0) throw std::invalid_argument("witness must be nonzero");
  Matrix<double> mc = m;
  for (int i = 0; i < mc.rows(); ++i)
    for (int j = 0; j < mc.cols(); ++j) {
      if (mc(i, j) < -defaults::nonneg_eps)
        throw std::invalid_argument("witness must be nonnegative");
      if (mc(i, j) < 0) mc(i, j) = 0;
    }
  if ((g.adj * mc).max_abs_diff(mc * h.adj) > tol)
    throw std::invalid_argument("witness does not intertwine the adjacency matrices");

  auto scaling = alternating_balance(mc, defaults::sinkhorn_tol, defaults::sinkhorn_max_iter);
  auto n = scale(mc, scaling.d, scaling.e);

  // N intertwines the conjugated adjacencies D A D^-1 and E^-1 B E, and both
  // of its Gram products are doubly stochastic.
  std::vector<double> d_inv(scaling.d.size()), e_inv(scaling.e.size());
  for (size_t i = 0; i < d_inv.size(); ++i) d_inv[i] = 1.0 / scaling.d[i];
  for (size_t j = 0; j < e_inv.size(); ++j) e_inv[j] = 1.0 / scaling.e[j];
  Matrix<double> a_conj = g.adj.scaled_rows(scaling.d).scaled_cols(d_inv);
  Matrix<double> b_conj = h.adj.scaled_rows(e_inv).scaled_cols(scaling.e);
  const double vtol = std::max(tol, 10 * scaling.residual);
  if (!is_doubly_stochastic(n * n.transposed(), vtol) ||
      !is_doubly_stochastic(n.transposed() * n, vtol) ||
      (a_conj * n).max_abs_diff(n * b_conj) > std::max(vtol, tol * a_conj.max_abs()))
    throw numerical_error("balanced witness failed verification against the conjugated "
                          "adjacencies");

  auto comps = block_structure(mc, defaults::support_eps);
  std::vector<std::vector<int>> cells_g, cells_h;
  for (const auto& c : comps) {
    cells_g.push_back(c.rows);
    cells_h.push_back(c.cols);
  }
  Partition pi = Partition(std::move(cells_g), g.n).canonicalized();
  Partition sigma = Partition(std::move(cells_h), h.n).canonicalized();
  std::vector<int> matching(pi.cell_count());
  for (int i = 0; i < pi.cell_count(); ++i) {
    int v = pi.cell(i).front();
    for (const auto& c : comps)
      if (std::binary_search(c.rows.begin(), c.rows.end(), v)) {
        matching[i] = sigma.cell_of(c.cols.front());
        break;
      }
  }

  auto u = normalize_per_cell(d_inv, pi);
  auto w = normalize_per_cell(e_inv, sigma);
  auto qg = pseudo_symmetrized_quotient(g, u, pi, std::max(tol, 1e-7));
  auto qh = pseudo_symmetrized_quotient(h, w, sigma, std::max(tol, 1e-7));
  for (int i = 0; i < qg.k(); ++i)
    for (int j = 0; j < qg.k(); ++j)
      if (std::abs(qg.mat(i, j) - qh.mat(matching[i], matching[j])) > std::max(tol, 1e-7))
        throw numerical_error("pseudo symmetrized quotients disagree under the matching");

  return {{std::move(pi), std::move(u)}, {std::move(sigma), std::move(w)},
          std::move(matching), std::move(qg), std::move(n), std::move(scaling)};
}

}  // namespace eqp
