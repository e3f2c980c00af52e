#pragma once

#include "eqp/matrix.hpp"

#include <cmath>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace eqp {

// Symmetric weighted adjacency; diagonal entries are loop weights.
template <class T>
struct Graph {
  int n = 0;
  Matrix<T> adj;
  std::vector<std::string> labels;  // optional vertex names

  T weighted_degree(int v) const { return adj.row_sum(v); }
};

template <class T>
struct WEdge {
  int u, v;
  T w = T(1);
};

template <class T>
Graph<T> graph_from_edges(int n, const std::vector<WEdge<T>>& edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  Graph<T> g;
  g.n = n;
  g.adj = Matrix<T>(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if constexpr (!scalar_traits<T>::exact) {
      if (!std::isfinite(e.w)) throw std::invalid_argument("non-finite edge weight");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    if (e.u == e.v) {
      g.adj(e.u, e.u) = e.w;  // loop weight sits once on the diagonal
    } else {
      g.adj(e.u, e.v) = e.w;
      g.adj(e.v, e.u) = e.w;
    }
  }
  return g;
}

inline Graph<double> to_double(const Graph<Rational>& g) {
  return Graph<double>{g.n, to_double(g.adj), g.labels};
}

template <class T>
std::vector<std::vector<int>> connected_components(const Graph<T>& g) {
  std::vector<int> comp(g.n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, verts;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      verts.push_back(v);
      for (int u = 0; u < g.n; ++u)
        if (comp[u] < 0 && !(g.adj(v, u) == T(0))) {
          comp[u] = comp[s];
          stack.push_back(u);
        }
    }
    std::sort(verts.begin(), verts.end());
    out.push_back(std::move(verts));
  }
  return out;
}

// Text format: first line "n m [weighted]", then m lines "u v [w]" with
// 0-indexed endpoints. Weights parse exactly (decimals or "p/q").
Graph<Rational> parse_graph_text(std::istream& in);
Graph<Rational> load_graph_file(const std::string& path);
void write_graph_text(std::ostream& out, const Graph<Rational>& g);

// Matrix text format: "rows cols" then row-major decimal entries.
Matrix<double> parse_matrix_text(std::istream& in);
Matrix<double> load_matrix_file(const std::string& path);

}  // namespace eqp
