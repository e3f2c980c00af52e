#include "eqp/balance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eqp {

namespace {

void require_nonnegative(const Matrix<double>& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) throw std::invalid_argument("matrix must be nonnegative");
}

// Kuhn's augmenting-path matching on the support graph, with one row/column
// pair removed (pass -1/-1 for the full graph).
int max_matching_excluding(const Matrix<double>& m, double eps, int skip_row, int skip_col) {
  const int n = m.rows();
  std::vector<int> match_col(n, -1);
  std::vector<char> used(n, 0);
  auto try_augment = [&](auto&& self, int r) -> bool {
    for (int c = 0; c < n; ++c) {
      if (c == skip_col || used[c] || !(std::abs(m(r, c)) > eps)) continue;
      used[c] = 1;
      if (match_col[c] < 0 || self(self, match_col[c])) {
        match_col[c] = r;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int r = 0; r < n; ++r) {
    if (r == skip_row) continue;
    std::fill(used.begin(), used.end(), 0);
    if (try_augment(try_augment, r)) ++matched;
  }
  return matched;
}

double max_dev_from_one(const std::vector<double>& v) {
  double r = 0;
  for (double x : v) r = std::max(r, std::abs(x - 1.0));
  return r;
}

std::vector<double> matvec(const Matrix<double>& m, const std::vector<double>& x) {
  return m.apply(x);
}

// Core symmetric scaling; callers guarantee feasibility.
ScalingPair symmetric_scaling_core(const Matrix<double>& m, double tol, int max_iter) {
  const int n = m.rows();
  std::vector<double> d(n, 1.0);
  double residual = 0;
  int it = 0;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> md = matvec(m, d);
    std::vector<double> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = d[i] * md[i];
    residual = max_dev_from_one(rows);
    if (residual < tol) break;
    if (residual < best * (1 - 1e-14)) {
      best = residual;
      since_best = 0;
    } else if (++since_best > 100) {
      throw numerical_error("symmetric scaling stalled at residual " + std::to_string(residual) +
                            "; matrix is at the boundary of total support");
    }
    for (int i = 0; i < n; ++i) d[i] = std::sqrt(d[i] / md[i]);
  }
  if (residual >= tol)
    throw numerical_error("symmetric scaling did not converge in " + std::to_string(max_iter) +
                          " iterations; residual " + std::to_string(residual));
  return {d, d, it, residual};
}

}  // namespace

std::vector<BipartiteComponent> block_structure(const Matrix<double>& m, double support_eps) {
  require_nonnegative(m);
  const int r = m.rows(), c = m.cols();
  std::vector<int> comp(r + c, -1);
  std::vector<BipartiteComponent> out;
  for (int s = 0; s < r + c; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x < r) {
        out[id].rows.push_back(x);
        for (int j = 0; j < c; ++j)
          if (m(x, j) > support_eps && comp[r + j] < 0) {
            comp[r + j] = id;
            stack.push_back(r + j);
          }
      } else {
        out[id].cols.push_back(x - r);
        for (int i = 0; i < r; ++i)
          if (m(i, x - r) > support_eps && comp[i] < 0) {
            comp[i] = id;
            stack.push_back(i);
          }
      }
    }
    std::sort(out[id].rows.begin(), out[id].rows.end());
    std::sort(out[id].cols.begin(), out[id].cols.end());
  }
  for (auto& b : out) {
    b.complete = !b.rows.empty() && !b.cols.empty();
    for (int i : b.rows)
      for (int j : b.cols)
        if (!(m(i, j) > support_eps)) b.complete = false;
  }
  return out;
}

bool has_total_support(const Matrix<double>& m, double support_eps) {
  if (!m.square()) throw std::invalid_argument("total support is defined for square matrices");
  require_nonnegative(m);
  const int n = m.rows();
  if (max_matching_excluding(m, support_eps, -1, -1) < n) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m(a, b) > support_eps &&
          max_matching_excluding(m, support_eps, a, b) < n - 1)
        return false;
  return true;
}

bool is_doubly_stochastic(const Matrix<double>& m, double tol) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < -tol) return false;
  for (int i = 0; i < m.rows(); ++i)
    if (std::abs(m.row_sum(i) - 1.0) > tol) return false;
  for (int j = 0; j < m.cols(); ++j)
    if (std::abs(m.col_sum(j) - 1.0) > tol) return false;
  return true;
}

Matrix<double> scale(const Matrix<double>& m, const std::vector<double>& d,
                     const std::vector<double>& e) {
  return m.scaled_rows(d).scaled_cols(e);
}

ScalingPair sinkhorn(const Matrix<double>& m, double tol, int max_iter,
                     const std::optional<std::vector<double>>& init_e) {
  if (!m.square()) throw std::invalid_argument("sinkhorn needs a square matrix");
  require_nonnegative(m);
  if (!has_total_support(m))
    throw std::invalid_argument("matrix does not have total support; no doubly stochastic "
                                "scaling DME exists");
  const int n = m.rows();
  std::vector<double> e = init_e.value_or(std::vector<double>(n, 1.0));
  if (static_cast<int>(e.size()) != n) throw std::invalid_argument("initial scaling size mismatch");
  for (double x : e)
    if (!(x > 0)) throw std::invalid_argument("initial scaling must be positive");
  std::vector<double> d(n, 1.0);
  auto mt = m.transposed();
  double residual = 0;
  int it = 0;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> me = matvec(m, e);
    for (int i = 0; i < n; ++i) d[i] = 1.0 / me[i];
    std::vector<double> mtd = matvec(mt, d);
    for (int j = 0; j < n; ++j) e[j] = 1.0 / mtd[j];
    auto dme = scale(m, d, e);
    residual = std::max(max_dev_from_one(dme.row_sums()), max_dev_from_one(dme.col_sums()));
    if (residual < tol) break;
    if (residual < best * (1 - 1e-14)) {
      best = residual;
      since_best = 0;
    } else if (++since_best > 100) {
      throw numerical_error("sinkhorn stalled at residual " + std::to_string(residual));
    }
  }
  if (residual >= tol)
    throw numerical_error("sinkhorn did not converge in " + std::to_string(max_iter) +
                          " iterations; residual " + std::to_string(residual));
  return {d, e, it, residual};
}

ScalingPair symmetric_sinkhorn(const Matrix<double>& m, double tol, int max_iter) {
  if (!m.square() || !m.is_symmetric(1e-12))
    throw std::invalid_argument("symmetric_sinkhorn needs a symmetric matrix");
  require_nonnegative(m);
  if (!has_total_support(m))
    throw std::invalid_argument("matrix does not have total support; no doubly stochastic "
                                "scaling DMD exists");
  return symmetric_scaling_core(m, tol, max_iter);
}

namespace {

// On entrywise-positive blocks the two Gram conditions pin the row and
// column sums of N = DME: N^T 1 is a positive 1-eigenvector of the doubly
// stochastic N^T N, hence constant per block, and likewise N 1; the totals
// force row sums sqrt(b/a) and column sums sqrt(a/b) on an a x b block.
// Conversely those sums make both Grams doubly stochastic. Normalizing to
// these marginals is therefore an equivalent formulation with a geometric
// rate on positive blocks; it serves as the tail refinement when the
// alternating scheme creeps.
void refine_uniform_marginals(const Matrix<double>& m,
                              const std::vector<BipartiteComponent>& blocks,
                              std::vector<double>& d, std::vector<double>& e, double tol,
                              int max_iter) {
  const int k = m.rows(), l = m.cols();
  std::vector<double> row_target(k), col_target(l);
  for (const auto& blk : blocks) {
    double rho = std::sqrt(static_cast<double>(blk.cols.size()) / blk.rows.size());
    for (int i : blk.rows) row_target[i] = rho;
    for (int j : blk.cols) col_target[j] = 1.0 / rho;
  }
  for (int it = 0; it < max_iter; ++it) {
    double dev = 0;
    std::vector<double> me(k, 0.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < l; ++j) me[i] += m(i, j) * e[j];
    for (int i = 0; i < k; ++i) d[i] = row_target[i] / me[i];
    std::vector<double> mtd(l, 0.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < l; ++j) mtd[j] += m(i, j) * d[i];
    for (int j = 0; j < l; ++j) {
      dev = std::max(dev, std::abs(e[j] * mtd[j] / col_target[j] - 1.0));
      e[j] = col_target[j] / mtd[j];
    }
    if (dev < tol) break;
  }
}

}  // namespace

ScalingPair alternating_balance(const Matrix<double>& m, double tol, int max_iter,
                                const std::optional<std::vector<double>>& init_e) {
  require_nonnegative(m);
  const int k = m.rows(), l = m.cols();
  auto blocks = block_structure(m, 0.0);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].rows.empty() || blocks[b].cols.empty()) {
      std::ostringstream out;
      out << "matrix has a null " << (blocks[b].rows.empty() ? "column" : "row");
      throw std::invalid_argument(out.str());
    }
    if (!blocks[b].complete) {
      std::ostringstream out;
      out << "support component " << b << " is not complete bipartite; the two-sided "
          << "balancing scheme requires entrywise-positive blocks";
      throw std::invalid_argument(out.str());
    }
  }

  std::vector<double> e = init_e.value_or(std::vector<double>(l, 1.0));
  if (static_cast<int>(e.size()) != l) throw std::invalid_argument("initial scaling size mismatch");
  for (double x : e)
    if (!(x > 0)) throw std::invalid_argument("initial scaling must be positive");
  std::vector<double> d(k, 1.0);
  auto mt = m.transposed();
  const double inner_tol = std::max(tol * 1e-2, 1e-14);

  auto residual_of = [&]() {
    auto n = scale(m, d, e);
    auto nnt = n * n.transposed();
    auto ntn = n.transposed() * n;
    return std::max(max_dev_from_one(nnt.row_sums()), max_dev_from_one(ntn.row_sums()));
  };

  double residual = 0;
  int it = 0;
  for (; it < max_iter; ++it) {
    // D-step: symmetric scaling of M E^2 M^T
    std::vector<double> e2(l);
    for (int j = 0; j < l; ++j) e2[j] = e[j] * e[j];
    auto kmat = m.scaled_cols(e2) * mt;
    d = symmetric_scaling_core(kmat, inner_tol, max_iter).d;
    // E-step: symmetric scaling of M^T D^2 M
    std::vector<double> d2(k);
    for (int i = 0; i < k; ++i) d2[i] = d[i] * d[i];
    auto lmat = mt.scaled_cols(d2) * m;
    e = symmetric_scaling_core(lmat, inner_tol, max_iter).d;

    residual = residual_of();
    if (residual < tol) break;
    if (it >= 30) {
      // the alternation's linear rate can flatten near 1 on ill-conditioned
      // square blocks; finish on the equivalent uniform-marginal formulation
      refine_uniform_marginals(m, blocks, d, e, std::max(tol * 1e-2, 1e-14), max_iter);
      residual = residual_of();
      break;
    }

    // Gauge fix per block: D_r -> s D_r, E_r -> E_r/s leaves N unchanged and
    // keeps the diagonals away from under/overflow.
    for (const auto& blk : blocks) {
      double log_d = 0, log_e = 0;
      for (int i : blk.rows) log_d += std::log(d[i]);
      for (int j : blk.cols) log_e += std::log(e[j]);
      double s = std::exp(0.5 * (log_e / blk.cols.size() - log_d / blk.rows.size()));
      for (int i : blk.rows) d[i] *= s;
      for (int j : blk.cols) e[j] /= s;
    }
  }
  if (residual >= tol)
    throw numerical_error("alternating balance did not converge in " + std::to_string(max_iter) +
                          " iterations; residual " + std::to_string(residual));
  return {d, e, it, residual};
}

}  // namespace eqp
