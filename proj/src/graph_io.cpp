#include "eqp/graph.hpp"

#include <fstream>
#include <sstream>

namespace eqp {

Graph<Rational> parse_graph_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty graph file");
  std::istringstream head(line);
  int n = 0, m = 0;
  std::string flag;
  if (!(head >> n >> m)) throw std::invalid_argument("graph header must be 'n m [weighted]'");
  bool weighted = false;
  if (head >> flag) {
    if (flag != "weighted") throw std::invalid_argument("unknown graph header flag: " + flag);
    weighted = true;
  }
  std::vector<WEdge<Rational>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("unexpected end of edge list");
    std::istringstream es(line);
    WEdge<Rational> e;
    if (!(es >> e.u >> e.v)) throw std::invalid_argument("bad edge line: " + line);
    std::string w;
    if (es >> w)
      e.w = rational_from_string(w);
    else if (weighted)
      throw std::invalid_argument("missing weight on edge line: " + line);
    edges.push_back(e);
  }
  return graph_from_edges(n, edges);
}

Graph<Rational> load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return parse_graph_text(in);
}

void write_graph_text(std::ostream& out, const Graph<Rational>& g) {
  std::vector<std::tuple<int, int, Rational>> edges;
  bool weighted = false;
  for (int u = 0; u < g.n; ++u)
    for (int v = u; v < g.n; ++v)
      if (g.adj(u, v) != 0) {
        edges.emplace_back(u, v, g.adj(u, v));
        if (g.adj(u, v) != 1) weighted = true;
      }
  out << g.n << ' ' << edges.size() << (weighted ? " weighted" : "") << '\n';
  for (const auto& [u, v, w] : edges) {
    out << u << ' ' << v;
    if (weighted) out << ' ' << rational_to_string(w);
    out << '\n';
  }
}

Matrix<double> parse_matrix_text(std::istream& in) {
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix header must be 'rows cols'");
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  Matrix<double> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw std::invalid_argument("matrix entry missing");
  return m;
}

Matrix<double> load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  return parse_matrix_text(in);
}

}  // namespace eqp
