#pragma once

#include "eqp/graph.hpp"

#include <random>
#include <vector>

namespace eqp::fixtures {

inline Graph<Rational> path(int n) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
  return graph_from_edges(n, e);
}

inline Graph<Rational> cycle(int n) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1});
  return graph_from_edges(n, e);
}

inline Graph<Rational> complete(int n) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1});
  return graph_from_edges(n, e);
}

// sides {0..r-1} and {r..r+s-1}
inline Graph<Rational> complete_bipartite(int r, int s) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) e.push_back({i, r + j, 1});
  return graph_from_edges(r + s, e);
}

inline Graph<Rational> star(int leaves) { return complete_bipartite(1, leaves); }

inline Graph<Rational> disjoint_union(const Graph<Rational>& a, const Graph<Rational>& b) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < a.n; ++i)
    for (int j = i; j < a.n; ++j)
      if (a.adj(i, j) != 0) e.push_back({i, j, a.adj(i, j)});
  for (int i = 0; i < b.n; ++i)
    for (int j = i; j < b.n; ++j)
      if (b.adj(i, j) != 0) e.push_back({a.n + i, a.n + j, b.adj(i, j)});
  return graph_from_edges(a.n + b.n, e);
}

inline Graph<Rational> hypercube(int d) {
  int n = 1 << d;
  std::vector<WEdge<Rational>> e;
  for (int x = 0; x < n; ++x)
    for (int b = 0; b < d; ++b)
      if (x < (x ^ (1 << b))) e.push_back({x, x ^ (1 << b), 1});
  return graph_from_edges(n, e);
}

inline Graph<Rational> petersen() {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5, 1});          // outer cycle
    e.push_back({5 + i, 5 + (i + 2) % 5, 1});  // inner pentagram
    e.push_back({i, 5 + i, 1});                // spokes
  }
  return graph_from_edges(10, e);
}

// 13-vertex contraction of the 4-cube: vertex 6 stands for four middle-level
// vertices and carries weight 2 in the associated weighting. Levels are
// {0},{1..4},{5,6,7},{8..11},{12}; state transfer runs between 0 and 12.
inline Graph<Rational> contracted_q4() {
  std::vector<WEdge<Rational>> e = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4},
      {1, 5}, {1, 6}, {2, 5}, {2, 6}, {3, 6}, {3, 7}, {4, 6}, {4, 7},
      {8, 5}, {8, 6}, {9, 5}, {9, 6}, {10, 6}, {10, 7}, {11, 6}, {11, 7},
      {12, 8}, {12, 9}, {12, 10}, {12, 11}};
  return graph_from_edges(13, e);
}

inline std::vector<double> contracted_q4_weights() {
  std::vector<double> w(13, 1.0);
  w[6] = 2.0;
  return w;
}

inline std::vector<std::vector<int>> contracted_q4_levels() {
  return {{0}, {1, 2, 3, 4}, {5, 6, 7}, {8, 9, 10, 11}, {12}};
}

// popcount levels of the d-cube
inline std::vector<std::vector<int>> hypercube_levels(int d) {
  std::vector<std::vector<int>> cells(d + 1);
  for (int x = 0; x < (1 << d); ++x) cells[__builtin_popcount(x)].push_back(x);
  return cells;
}

inline Graph<Rational> random_graph(int n, double p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j, 1});
  return graph_from_edges(n, e);
}

inline Graph<Rational> permuted(const Graph<Rational>& g, const std::vector<int>& perm) {
  std::vector<WEdge<Rational>> e;
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      if (g.adj(i, j) != 0) e.push_back({perm[i], perm[j], g.adj(i, j)});
  return graph_from_edges(g.n, e);
}

inline std::vector<int> random_permutation(int n, unsigned seed) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace eqp::fixtures
