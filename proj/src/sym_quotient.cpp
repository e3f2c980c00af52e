#include "eqp/sym_quotient.hpp"

#include <algorithm>
#include <map>

namespace eqp {

SymWitness construct_witness(const Graph<double>& g, const Partition& pi,
                             const Graph<double>& h, const Partition& sigma,
                             const std::vector<int>& matching, double tol) {
  if (static_cast<int>(matching.size()) != pi.cell_count() ||
      pi.cell_count() != sigma.cell_count())
    throw std::invalid_argument("matching must pair up the cells of both partitions");
  auto bg = symmetrized_quotient(g, pi, tol);
  auto bh = symmetrized_quotient(h, sigma, tol);
  for (int i = 0; i < bg.k(); ++i)
    for (int j = 0; j < bg.k(); ++j)
      if (std::abs(bg.mat(i, j) - bh.mat(matching[i], matching[j])) > tol)
        throw std::invalid_argument("symmetrized quotients are not equal under the matching");

  Matrix<double> m(g.n, h.n);
  for (int c = 0; c < pi.cell_count(); ++c) {
    const auto& cg = pi.cell(c);
    const auto& ch = sigma.cell(matching[c]);
    double v = 1.0 / std::sqrt(static_cast<double>(cg.size()) * ch.size());
    for (int a : cg)
      for (int b : ch) m(a, b) = v;
  }
  return {m, block_structure(m), matching};
}

bool verify_witness(const Graph<double>& g, const Graph<double>& h, const Matrix<double>& m,
                    double tol) {
  if (m.rows() != g.n || m.cols() != h.n)
    throw std::invalid_argument("witness dimensions do not match the graphs");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < -defaults::nonneg_eps) return false;
  if (!is_doubly_stochastic(m * m.transposed(), tol)) return false;
  if (!is_doubly_stochastic(m.transposed() * m, tol)) return false;
  return (g.adj * m).max_abs_diff(m * h.adj) <= tol;
}

ExtractedPartitions extract_partitions(const Graph<double>& g, const Graph<double>& h,
                                       const Matrix<double>& m, double tol, double support_eps) {
  if (!verify_witness(g, h, m, tol))
    throw std::invalid_argument("witness verification failed");
  auto comps = block_structure(m, support_eps);
  for (const auto& c : comps)
    if (c.rows.empty() || c.cols.empty())
      throw std::invalid_argument("a support component misses one side; the witness has a "
                                  "null row or column");
  std::vector<std::vector<int>> cells_g, cells_h;
  for (const auto& c : comps) {
    cells_g.push_back(c.rows);
    cells_h.push_back(c.cols);
  }
  Partition pi = Partition(std::move(cells_g), g.n).canonicalized();
  Partition sigma_raw(std::move(cells_h), h.n);
  Partition sigma = sigma_raw.canonicalized();
  // eta: component containing pi's cell i, located on sigma's side
  std::vector<int> eta(pi.cell_count());
  for (int i = 0; i < pi.cell_count(); ++i) {
    int v = pi.cell(i).front();
    for (size_t c = 0; c < comps.size(); ++c)
      if (std::binary_search(comps[c].rows.begin(), comps[c].rows.end(), v)) {
        eta[i] = sigma.cell_of(comps[c].cols.front());
        break;
      }
  }

  if (!is_equitable(g, pi, tol) || !is_equitable(h, sigma, tol))
    throw numerical_error("extracted partitions failed the equitability check");
  auto bg = symmetrized_quotient(g, pi, tol);
  auto bh = symmetrized_quotient(h, sigma, tol);
  for (int i = 0; i < bg.k(); ++i)
    for (int j = 0; j < bg.k(); ++j)
      if (std::abs(bg.mat(i, j) - bh.mat(eta[i], eta[j])) > tol)
        throw numerical_error("extracted quotients are not equal under the matching");
  return {std::move(pi), std::move(sigma), std::move(eta)};
}

std::optional<CommonSymmetrizedQuotient> common_symmetrized_quotient(const Graph<double>& g,
                                                                     const Graph<double>& h,
                                                                     int max_n, double tol) {
  auto parts_g = enumerate_equitable(g, max_n, tol);
  auto parts_h = enumerate_equitable(h, max_n, tol);
  std::vector<QuotientGraph<double>> quots_g, quots_h;
  quots_g.reserve(parts_g.size());
  quots_h.reserve(parts_h.size());
  for (const auto& p : parts_g) quots_g.push_back(symmetrized_quotient(g, p, tol));
  for (const auto& p : parts_h) quots_h.push_back(symmetrized_quotient(h, p, tol));

  // enumerate_equitable sorts by cell count, so pairs come coarsest first
  for (size_t a = 0; a < parts_g.size(); ++a)
    for (size_t b = 0; b < parts_h.size(); ++b) {
      if (quots_g[a].k() != quots_h[b].k()) continue;
      if (auto p = weighted_graph_isomorphic(quots_g[a], quots_h[b], tol))
        return CommonSymmetrizedQuotient{parts_g[a], parts_h[b], *p, quots_g[a]};
    }
  return std::nullopt;
}

std::optional<Rational> cell_ratio(const Partition& pi, const Partition& sigma,
                                   const std::vector<int>& matching) {
  if (static_cast<int>(matching.size()) != pi.cell_count() ||
      pi.cell_count() != sigma.cell_count())
    throw std::invalid_argument("matching must be a bijection of cells");
  Rational lambda(static_cast<int>(pi.cell(0).size()),
                  static_cast<int>(sigma.cell(matching[0]).size()));
  for (int i = 1; i < pi.cell_count(); ++i) {
    Rational r(static_cast<int>(pi.cell(i).size()),
               static_cast<int>(sigma.cell(matching[i]).size()));
    if (r != lambda) return std::nullopt;
  }
  return lambda;
}

SameQuotientResult same_combinatorial_quotient(const Graph<Rational>& g,
                                               const Graph<Rational>& h, double tol) {
  SameQuotientResult out;
  auto pg = coarsest_equitable(g).partition.canonicalized();
  auto ph = coarsest_equitable(h).partition.canonicalized();
  auto qg = quotient(g, pg);
  auto qh = quotient(h, ph);
  if (qg.k() != qh.k()) return out;

  std::optional<std::vector<int>> hit;
  std::optional<Rational> lambda;
  for_each_isomorphism<Rational>(qg.mat, qh.mat, tol, nullptr, [&](const std::vector<int>& p) {
    if (auto l = cell_ratio(pg, ph, p)) {
      hit = p;
      lambda = l;
      return false;
    }
    return true;
  });
  if (!hit) return out;

  Matrix<double> m(g.n, h.n);
  for (int c = 0; c < pg.cell_count(); ++c) {
    const auto& cg = pg.cell(c);
    const auto& ch = ph.cell((*hit)[c]);
    double v = 1.0 / std::sqrt(static_cast<double>(cg.size()) * ch.size());
    for (int a : cg)
      for (int b : ch) m(a, b) = v;
  }
  out.same = true;
  out.pi = std::move(pg);
  out.sigma = std::move(ph);
  out.matching = *hit;
  out.lambda = lambda;
  out.row_sum = m.row_sum(0);
  out.col_sum = m.col_sum(0);
  out.witness = std::move(m);
  return out;
}

}  // namespace eqp
