#include "eqp/refinement.hpp"

#include <map>

namespace eqp {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition join(const Partition& pi, const Partition& sigma) {
  if (pi.n() != sigma.n()) throw std::invalid_argument("partition ground-set mismatch");
  Dsu dsu(pi.n());
  for (const auto& part : {pi.cells(), sigma.cells()})
    for (const auto& cell : part)
      for (size_t i = 1; i < cell.size(); ++i) dsu.unite(cell[0], cell[i]);
  std::vector<int> root(pi.n());
  for (int v = 0; v < pi.n(); ++v) root[v] = dsu.find(v);
  return Partition::from_assignment(root);
}

Partition meet(const Partition& pi, const Partition& sigma) {
  if (pi.n() != sigma.n()) throw std::invalid_argument("partition ground-set mismatch");
  std::map<std::pair<int, int>, int> ids;
  std::vector<int> assignment(pi.n());
  for (int v = 0; v < pi.n(); ++v) {
    auto key = std::make_pair(pi.cell_of(v), sigma.cell_of(v));
    auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    (void)fresh;
    assignment[v] = it->second;
  }
  return Partition::from_assignment(assignment);
}

}  // namespace eqp
