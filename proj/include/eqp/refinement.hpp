#pragma once

#include "eqp/defaults.hpp"
#include "eqp/errors.hpp"
#include "eqp/graph.hpp"
#include "eqp/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

namespace eqp {

struct EquitableCounterexample {
  int u, v;   // same cell, different weight sums
  int cell;   // target cell index
};

struct EquitableCheck {
  bool equitable = false;
  std::optional<EquitableCounterexample> counterexample;
  explicit operator bool() const { return equitable; }
};

// Weighted equitability: row sums of adj into each cell constant on each cell.
template <class T>
EquitableCheck is_equitable(const Graph<T>& g, const Partition& pi, double tol = defaults::tol) {
  if (pi.n() != g.n) throw std::invalid_argument("partition does not match graph");
  for (int cj = 0; cj < pi.cell_count(); ++cj) {
    const auto& target = pi.cell(cj);
    for (int ci = 0; ci < pi.cell_count(); ++ci) {
      const auto& cell = pi.cell(ci);
      T ref(0);
      bool have_ref = false;
      for (int v : cell) {
        T s(0);
        for (int u : target) s += g.adj(v, u);
        if (!have_ref) {
          ref = s;
          have_ref = true;
        } else if (!scalar_traits<T>::eq(s, ref, tol)) {
          return {false, EquitableCounterexample{cell.front(), v, cj}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

struct RefinementTrace {
  std::vector<Partition> rounds;                // initial coloring through stable
  std::vector<std::vector<int>> histories;      // per vertex, canonical color per round
};

namespace detail {

// One joint refinement over several graphs sharing a canonical color space.
// Colors are renumbered each round by sorted (old color, sum profile) keys, so
// they are comparable across graphs and invariant under isomorphism.
template <class T>
struct JointColors {
  std::vector<std::vector<int>> colors;                   // per graph, per vertex
  std::vector<std::vector<std::vector<int>>> histories;   // per graph, per vertex, per round
  int rounds = 0;
  int color_count = 0;
};

template <class T>
JointColors<T> refine_joint(const std::vector<const Graph<T>*>& graphs,
                            std::vector<std::vector<int>> colors, double tol) {
  JointColors<T> out;
  const size_t ng = graphs.size();
  out.histories.resize(ng);
  for (size_t g = 0; g < ng; ++g) {
    out.histories[g].resize(graphs[g]->n);
    for (int v = 0; v < graphs[g]->n; ++v) out.histories[g][v].push_back(colors[g][v]);
  }
  int m = 0;
  for (const auto& cs : colors)
    for (int c : cs) m = std::max(m, c + 1);

  while (true) {
    // weight sums from each vertex into every current color class
    std::vector<std::vector<std::vector<T>>> sums(ng);
    for (size_t g = 0; g < ng; ++g) {
      const Graph<T>& gr = *graphs[g];
      sums[g].assign(gr.n, std::vector<T>(m, T(0)));
      for (int v = 0; v < gr.n; ++v)
        for (int u = 0; u < gr.n; ++u)
          if (!(gr.adj(v, u) == T(0))) sums[g][v][colors[g][u]] += gr.adj(v, u);
    }

    using Profile = std::conditional_t<scalar_traits<T>::exact, std::vector<T>, std::vector<int>>;
    std::vector<std::vector<Profile>> profiles(ng);
    if constexpr (scalar_traits<T>::exact) {
      for (size_t g = 0; g < ng; ++g) profiles[g] = std::move(sums[g]);
    } else {
      // Bucket each coordinate across all graphs so nearby binary64 sums
      // compare equal within tol.
      for (size_t g = 0; g < ng; ++g)
        profiles[g].assign(graphs[g]->n, std::vector<int>(m, 0));
      for (int c = 0; c < m; ++c) {
        std::vector<std::tuple<double, int, int>> vals;  // (value, graph, vertex)
        for (size_t g = 0; g < ng; ++g)
          for (int v = 0; v < graphs[g]->n; ++v)
            vals.emplace_back(sums[g][v][c], static_cast<int>(g), v);
        std::sort(vals.begin(), vals.end());
        int bucket = 0;
        for (size_t i = 0; i < vals.size(); ++i) {
          if (i > 0 && std::get<0>(vals[i]) - std::get<0>(vals[i - 1]) > tol) ++bucket;
          profiles[std::get<1>(vals[i])][std::get<2>(vals[i])][c] = bucket;
        }
      }
    }

    std::map<std::pair<int, Profile>, int> intern;
    for (size_t g = 0; g < ng; ++g)
      for (int v = 0; v < graphs[g]->n; ++v)
        intern[{colors[g][v], profiles[g][v]}] = 0;
    int next = 0;
    for (auto& [key, id] : intern) id = next++;

    if (next == m) break;  // keys refine the old classes, equal count means stable
    for (size_t g = 0; g < ng; ++g)
      for (int v = 0; v < graphs[g]->n; ++v) {
        colors[g][v] = intern[{colors[g][v], profiles[g][v]}];
        out.histories[g][v].push_back(colors[g][v]);
      }
    m = next;
    ++out.rounds;
  }

  out.colors = std::move(colors);
  out.color_count = m;
  return out;
}

inline std::vector<int> initial_colors(int n, const std::optional<Partition>& initial) {
  std::vector<int> c(n, 0);
  if (initial) {
    if (initial->n() != n) throw std::invalid_argument("initial coloring does not match graph");
    Partition canon = initial->canonicalized();
    for (int i = 0; i < canon.cell_count(); ++i)
      for (int v : canon.cell(i)) c[v] = i;
  }
  return c;
}

}  // namespace detail

template <class T>
struct RefinementResult {
  Partition partition;
  RefinementTrace trace;
};

// Coarsest equitable partition refining `initial` (trivial coloring when
// absent), by iterated splitting on weight-sum profiles.
template <class T>
RefinementResult<T> coarsest_equitable(const Graph<T>& g,
                                       const std::optional<Partition>& initial = std::nullopt,
                                       double tol = defaults::tol) {
  auto joint = detail::refine_joint<T>({&g}, {detail::initial_colors(g.n, initial)}, tol);
  RefinementTrace trace;
  trace.histories = joint.histories[0];
  size_t nrounds = trace.histories[0].size();
  for (size_t r = 0; r < nrounds; ++r) {
    std::vector<int> cs(g.n);
    for (int v = 0; v < g.n; ++v) cs[v] = trace.histories[v][r];
    trace.rounds.push_back(Partition::from_assignment(cs));
  }
  return {Partition::from_assignment(joint.colors[0]), std::move(trace)};
}

Partition join(const Partition& pi, const Partition& sigma);
Partition meet(const Partition& pi, const Partition& sigma);

// All equitable partitions of g, canonically ordered. Search runs over
// restricted-growth strings; a branch dies as soon as two vertices sharing a
// cell disagree on degree or, once their neighborhoods are fully assigned, on
// their weight-sum profile.
template <class T>
std::vector<Partition> enumerate_equitable(const Graph<T>& g,
                                           int max_n = defaults::enumerate_cap,
                                           double tol = defaults::tol) {
  if (g.n > max_n)
    throw std::invalid_argument("enumerate_equitable: graph exceeds cap of " +
                                std::to_string(max_n) + " vertices");
  const int n = g.n;
  std::vector<T> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = g.weighted_degree(v);
  std::vector<int> max_nbr(n, -1);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (!(g.adj(v, u) == T(0))) max_nbr[v] = std::max(max_nbr[v], u);
  // completes_at[i]: vertices whose incident sums are final once 0..i assigned
  std::vector<std::vector<int>> completes_at(n);
  for (int v = 0; v < n; ++v) completes_at[std::max(v, max_nbr[v])].push_back(v);

  std::vector<int> assign(n, -1);
  std::vector<std::vector<T>> into(n, std::vector<T>(n, T(0)));  // into[v][cell]
  std::vector<int> cell_rep;            // first completed vertex per cell, -1 if none
  std::vector<std::vector<int>> cells;  // members per cell
  std::vector<Partition> found;

  auto profiles_match = [&](int a, int b, int ncells) {
    if (!scalar_traits<T>::eq(degree[a], degree[b], tol)) return false;
    for (int c = 0; c < ncells; ++c)
      if (!scalar_traits<T>::eq(into[a][c], into[b][c], tol)) return false;
    return true;
  };

  auto dfs = [&](auto&& self, int v) -> void {
    if (v == n) {
      std::vector<std::vector<int>> copy(cells.begin(), cells.end());
      Partition pi(std::move(copy), n);
      if (is_equitable(g, pi, tol)) found.push_back(pi.canonicalized());
      return;
    }
    int ncells = static_cast<int>(cells.size());
    for (int c = 0; c <= ncells && c < n; ++c) {
      bool fresh = c == ncells;
      if (fresh) {
        cells.emplace_back();
        cell_rep.push_back(-1);
      } else if (!scalar_traits<T>::eq(degree[v], degree[cells[c].front()], tol)) {
        continue;  // equitability forces equal degrees within a cell
      }
      assign[v] = c;
      cells[c].push_back(v);
      for (int u = 0; u < n; ++u)
        if (!(g.adj(u, v) == T(0))) into[u][c] += g.adj(u, v);

      bool ok = true;
      std::vector<std::pair<int, int>> reps_set;  // (cell, previous rep) for rollback
      for (int u : completes_at[v]) {
        int cu = assign[u];
        if (cell_rep[cu] < 0) {
          reps_set.emplace_back(cu, -1);
          cell_rep[cu] = u;
        } else if (!profiles_match(u, cell_rep[cu], static_cast<int>(cells.size()))) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, v + 1);
      for (auto& [cu, prev] : reps_set) cell_rep[cu] = prev;

      for (int u = 0; u < n; ++u)
        if (!(g.adj(u, v) == T(0))) into[u][c] -= g.adj(u, v);
      cells[c].pop_back();
      assign[v] = -1;
      if (fresh) {
        cells.pop_back();
        cell_rep.pop_back();
      }
    }
  };
  dfs(dfs, 0);

  std::sort(found.begin(), found.end(), [](const Partition& a, const Partition& b) {
    if (a.cell_count() != b.cell_count()) return a.cell_count() < b.cell_count();
    return a.cells() < b.cells();
  });
  return found;
}

}  // namespace eqp
