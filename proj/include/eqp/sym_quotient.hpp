#pragma once

#include "eqp/balance.hpp"
#include "eqp/fraciso.hpp"
#include "eqp/quotient.hpp"

#include <functional>
#include <optional>

namespace eqp {

// Nonnegative witness M with both Gram products doubly stochastic, together
// with the support graph Z_M and the induced cell matching.
struct SymWitness {
  Matrix<double> m;
  std::vector<BipartiteComponent> components;  // Z_M
  std::vector<int> eta;                        // pi cell i <-> sigma cell eta[i]
};

// M = P~ Q~^T from equitable partitions whose symmetrized quotients agree
// entrywise under `matching`.
SymWitness construct_witness(const Graph<double>& g, const Partition& pi,
                             const Graph<double>& h, const Partition& sigma,
                             const std::vector<int>& matching, double tol = defaults::ds_tol);

// M >= 0, MM^T and M^T M doubly stochastic, A_G M = M A_H, all within tol.
bool verify_witness(const Graph<double>& g, const Graph<double>& h, const Matrix<double>& m,
                    double tol = defaults::ds_tol);

struct ExtractedPartitions {
  Partition pi, sigma;
  std::vector<int> eta;
};

// Cells are the traces of the Z_M connected components on each side.
ExtractedPartitions extract_partitions(const Graph<double>& g, const Graph<double>& h,
                                       const Matrix<double>& m, double tol = defaults::ds_tol,
                                       double support_eps = defaults::support_eps);

// Backtracking search for permutations p with b1[i][j] = b2[p(i)][p(j)].
// `compat(i, j)` restricts candidate images; `yield` returns false to stop.
template <class T>
void for_each_isomorphism(const Matrix<T>& b1, const Matrix<T>& b2, double tol,
                          const std::function<bool(int, int)>& compat,
                          const std::function<bool(const std::vector<int>&)>& yield) {
  if (b1.rows() != b2.rows()) return;
  const int k = b1.rows();
  std::vector<int> perm(k, -1);
  std::vector<char> used(k, 0);
  bool stop = false;
  auto dfs = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == k) {
      if (!yield(perm)) stop = true;
      return;
    }
    for (int j = 0; j < k && !stop; ++j) {
      if (used[j] || (compat && !compat(i, j))) continue;
      if (!scalar_traits<T>::eq(b1(i, i), b2(j, j), tol)) continue;
      bool ok = true;
      for (int a = 0; a < i && ok; ++a)
        ok = scalar_traits<T>::eq(b1(i, a), b2(j, perm[a]), tol) &&
             scalar_traits<T>::eq(b1(a, i), b2(perm[a], j), tol);
      if (!ok) continue;
      perm[i] = j;
      used[j] = 1;
      self(self, i + 1);
      used[j] = 0;
      perm[i] = -1;
    }
  };
  dfs(dfs, 0);
}

// First permutation matching the quotient matrices within tol; when
// match_sizes is set, cells may only map to cells of equal size.
template <class T>
std::optional<std::vector<int>> weighted_graph_isomorphic(const QuotientGraph<T>& b1,
                                                          const QuotientGraph<T>& b2, double tol,
                                                          bool match_sizes = false) {
  if (b1.k() != b2.k()) return std::nullopt;
  std::function<bool(int, int)> compat;
  if (match_sizes)
    compat = [&](int i, int j) { return b1.cell_sizes[i] == b2.cell_sizes[j]; };
  std::optional<std::vector<int>> found;
  for_each_isomorphism<T>(b1.mat, b2.mat, tol, compat, [&](const std::vector<int>& p) {
    found = p;
    return false;
  });
  return found;
}

struct CommonSymmetrizedQuotient {
  Partition pi, sigma;
  std::vector<int> matching;
  QuotientGraph<double> quotient;  // of g by pi; equals h's under matching
};

// Exhaustive search over pairs of equitable partitions, coarsest first.
std::optional<CommonSymmetrizedQuotient> common_symmetrized_quotient(
    const Graph<double>& g, const Graph<double>& h, int max_n = defaults::enumerate_cap,
    double tol = defaults::tol);

// lambda with |C_r| = lambda * |D_matching(r)| for all r, if constant.
std::optional<Rational> cell_ratio(const Partition& pi, const Partition& sigma,
                                   const std::vector<int>& matching);

struct SameQuotientResult {
  bool same = false;
  std::optional<Partition> pi, sigma;  // coarsest equitable partitions
  std::vector<int> matching;
  std::optional<Rational> lambda;
  std::optional<Matrix<double>> witness;  // constant row and column sums
  double row_sum = 0, col_sum = 0;
};

// Coarsest combinatorial quotients isomorphic with a constant cell-size
// ratio; on success also returns M = P~ Q~^T with constant row/column sums.
SameQuotientResult same_combinatorial_quotient(const Graph<Rational>& g,
                                               const Graph<Rational>& h,
                                               double tol = defaults::tol);

}  // namespace eqp
