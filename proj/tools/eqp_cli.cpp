// Command-line front end: text/JSON file parsing, subcommand dispatch, JSON
// output on stdout. Exit codes: 0 computed (decisions live in the JSON),
// 2 input error, 3 numerical failure.

#include "eqp/balance.hpp"
#include "eqp/fraciso.hpp"
#include "eqp/pseudo.hpp"
#include "eqp/qwalk.hpp"
#include "eqp/sym_quotient.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace eqp;

namespace {

json matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json partition_json(const Partition& pi) {
  json cells = json::array();
  for (const auto& c : pi.cells()) cells.push_back(c);
  return cells;
}

template <class T>
json quotient_json(const QuotientGraph<T>& q) {
  json out;
  out["kind"] = q.kind == QuotientKind::combinatorial ? "combinatorial" : "symmetrized";
  out["matrix"] = matrix_json(q.mat);
  out["cell_sizes"] = q.cell_sizes;
  return out;
}

std::vector<double> load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open weights file: " + path);
  auto j = nlohmann::json::parse(in);
  if (!j.is_array()) throw std::invalid_argument("weights JSON must be an array of numbers");
  std::vector<double> w;
  for (const auto& x : j) {
    if (!x.is_number()) throw std::invalid_argument("weights JSON must be an array of numbers");
    w.push_back(x.get<double>());
  }
  return w;
}

void emit(const std::string& command, json inputs, json result, json diagnostics) {
  json out;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["result"] = std::move(result);
  out["diagnostics"] = std::move(diagnostics);
  std::cout << out.dump(2) << '\n';
}

struct Options {
  std::string graph_a, graph_b, partition_path, weights_path, matrix_path;
  std::string mode = "plain";  // balance: plain | symmetric | two-sided
  double tol = -1;             // <0 means per-command default
  int max_iter = defaults::sinkhorn_max_iter;
  int max_n = defaults::enumerate_cap;
  int from = -1, to = -1;
  double time = 0, tmax = 0;
  int steps = 1000;
};

int run_refine(const Options& o) {
  auto g = load_graph_file(o.graph_a);
  std::optional<Partition> initial;
  if (!o.partition_path.empty()) initial = load_partition_file(o.partition_path);
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  auto res = coarsest_equitable(g, initial, tol);
  emit("refine", {{"graph", o.graph_a}, {"tol", tol}},
       {{"partition", partition_json(res.partition)},
        {"rounds", res.trace.rounds.size()}},
       {{"cells", res.partition.cell_count()}});
  return 0;
}

int run_quotient(const Options& o, bool symmetrized) {
  auto g = load_graph_file(o.graph_a);
  auto pi = load_partition_file(o.partition_path);
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  json result;
  if (symmetrized) {
    auto q = symmetrized_quotient(g, pi, tol);
    result = {{"quotient", quotient_json(q)}, {"cells", partition_json(pi)}};
  } else {
    auto q = quotient(g, pi, tol);
    result = {{"quotient", quotient_json(q)}, {"cells", partition_json(pi)}};
  }
  emit(symmetrized ? "symquotient" : "quotient",
       {{"graph", o.graph_a}, {"partition", o.partition_path}, {"tol", tol}},
       std::move(result), json::object());
  return 0;
}

int run_fraciso(const Options& o) {
  auto g = load_graph_file(o.graph_a);
  auto h = load_graph_file(o.graph_b);
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  auto dec = fractionally_isomorphic(g, h, tol);
  json result{{"decision", dec.isomorphic}};
  if (dec.isomorphic) {
    result["partition_g"] = partition_json(*dec.pi);
    result["partition_h"] = partition_json(*dec.sigma);
    result["quotient"] = quotient_json(*dec.quotient);
    auto w = fraciso_witness(g, h, tol);
    result["witness"] = matrix_json(*w);
  }
  emit("fraciso", {{"graph_g", o.graph_a}, {"graph_h", o.graph_b}, {"tol", tol}},
       std::move(result), json::object());
  return 0;
}

int run_common_symq(const Options& o) {
  auto g = to_double(load_graph_file(o.graph_a));
  auto h = to_double(load_graph_file(o.graph_b));
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  auto hit = common_symmetrized_quotient(g, h, o.max_n, tol);
  json result{{"decision", static_cast<bool>(hit)}};
  if (hit) {
    result["partition_g"] = partition_json(hit->pi);
    result["partition_h"] = partition_json(hit->sigma);
    result["matching"] = hit->matching;
    result["quotient"] = quotient_json(hit->quotient);
    auto wit = construct_witness(g, hit->pi, h, hit->sigma, hit->matching);
    result["witness"] = matrix_json(wit.m);
    result["witness_verified"] = verify_witness(g, h, wit.m);
  }
  emit("common-symq",
       {{"graph_g", o.graph_a}, {"graph_h", o.graph_b}, {"max_n", o.max_n}, {"tol", tol}},
       std::move(result), json::object());
  return 0;
}

int run_same_quotient(const Options& o) {
  auto g = load_graph_file(o.graph_a);
  auto h = load_graph_file(o.graph_b);
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  auto res = same_combinatorial_quotient(g, h, tol);
  json result{{"decision", res.same}};
  if (res.same) {
    result["partition_g"] = partition_json(*res.pi);
    result["partition_h"] = partition_json(*res.sigma);
    result["matching"] = res.matching;
    result["lambda"] = rational_to_string(*res.lambda);
    result["witness"] = matrix_json(*res.witness);
    result["row_sum"] = res.row_sum;
    result["col_sum"] = res.col_sum;
  }
  emit("same-quotient", {{"graph_g", o.graph_a}, {"graph_h", o.graph_b}, {"tol", tol}},
       std::move(result), json::object());
  return 0;
}

int run_balance(const Options& o) {
  auto m = load_matrix_file(o.matrix_path);
  double tol = o.tol < 0 ? defaults::sinkhorn_tol : o.tol;
  ScalingPair s;
  if (o.mode == "symmetric")
    s = symmetric_sinkhorn(m, tol, o.max_iter);
  else if (o.mode == "two-sided")
    s = alternating_balance(m, tol, o.max_iter);
  else
    s = sinkhorn(m, tol, o.max_iter);
  auto n = scale(m, s.d, s.e);
  emit("balance",
       {{"matrix", o.matrix_path}, {"mode", o.mode}, {"tol", tol}, {"max_iter", o.max_iter}},
       {{"d", s.d}, {"e", s.e}, {"balanced", matrix_json(n)}},
       {{"iterations", s.iterations}, {"residual", s.residual}});
  return 0;
}

int run_pseudo_check(const Options& o) {
  auto g = to_double(load_graph_file(o.graph_a));
  auto pi = load_partition_file(o.partition_path);
  auto w = load_weights(o.weights_path);
  double tol = o.tol < 0 ? defaults::tol : o.tol;
  auto b = is_pseudo_equitable(g, w, pi, tol);
  json result{{"pseudo_equitable", static_cast<bool>(b)}};
  if (b) {
    result["quotient"] = quotient_json(*b);
    result["symmetrized"] = quotient_json(pseudo_symmetrized_quotient(g, w, pi, tol));
  }
  emit("pseudo-check",
       {{"graph", o.graph_a}, {"weights", o.weights_path}, {"partition", o.partition_path},
        {"tol", tol}},
       std::move(result), json::object());
  return 0;
}

int run_pst(const Options& o) {
  auto g = to_double(load_graph_file(o.graph_a));
  double tol = o.tol < 0 ? defaults::pst_tol : o.tol;
  auto res = pst_check(g, o.from, o.to, o.time, tol);
  emit("pst",
       {{"graph", o.graph_a}, {"from", o.from}, {"to", o.to}, {"time", o.time}, {"tol", tol}},
       {{"transfer", res.transfer}, {"fidelity", res.fidelity}}, json::object());
  return 0;
}

int run_pst_scan(const Options& o) {
  auto g = to_double(load_graph_file(o.graph_a));
  double tol = o.tol < 0 ? defaults::pst_tol : o.tol;
  auto res = pst_scan(g, o.from, o.to, o.tmax, o.steps, tol);
  json cands = json::array();
  for (auto& [t, f] : res) cands.push_back({{"t", t}, {"fidelity", f}});
  emit("pst-scan",
       {{"graph", o.graph_a}, {"from", o.from}, {"to", o.to}, {"tmax", o.tmax},
        {"steps", o.steps}, {"tol", tol}},
       {{"candidates", std::move(cands)}}, json::object());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equitable partitions, quotient graphs, matrix balancing and quantum walks"};
  app.require_subcommand(1);
  Options o;

  auto* refine = app.add_subcommand("refine", "coarsest equitable partition");
  refine->add_option("graph", o.graph_a)->required();
  refine->add_option("--initial", o.partition_path, "initial coloring (partition JSON)");
  refine->add_option("--tol", o.tol);

  auto* quot = app.add_subcommand("quotient", "combinatorial quotient graph");
  quot->add_option("graph", o.graph_a)->required();
  quot->add_option("--partition", o.partition_path)->required();
  quot->add_option("--tol", o.tol);

  auto* symq = app.add_subcommand("symquotient", "symmetrized quotient graph");
  symq->add_option("graph", o.graph_a)->required();
  symq->add_option("--partition", o.partition_path)->required();
  symq->add_option("--tol", o.tol);

  auto* fi = app.add_subcommand("fraciso", "fractional isomorphism decision + witness");
  fi->add_option("graph_g", o.graph_a)->required();
  fi->add_option("graph_h", o.graph_b)->required();
  fi->add_option("--tol", o.tol);

  auto* csq = app.add_subcommand("common-symq", "search for a common symmetrized quotient");
  csq->add_option("graph_g", o.graph_a)->required();
  csq->add_option("graph_h", o.graph_b)->required();
  csq->add_option("--max-n", o.max_n);
  csq->add_option("--tol", o.tol);

  auto* sq = app.add_subcommand("same-quotient", "same combinatorial quotient decision");
  sq->add_option("graph_g", o.graph_a)->required();
  sq->add_option("graph_h", o.graph_b)->required();
  sq->add_option("--tol", o.tol);

  auto* bal = app.add_subcommand("balance", "Sinkhorn-type matrix balancing");
  bal->add_option("matrix", o.matrix_path)->required();
  bool sym_flag = false, two_flag = false;
  bal->add_flag("--symmetric", sym_flag, "one diagonal, DMD doubly stochastic");
  bal->add_flag("--two-sided", two_flag, "N = DME with NN^T and N^T N doubly stochastic");
  bal->add_option("--tol", o.tol);
  bal->add_option("--max-iter", o.max_iter);

  auto* pc = app.add_subcommand("pseudo-check", "pseudo-equitability of a weighted partition");
  pc->add_option("graph", o.graph_a)->required();
  pc->add_option("--weights", o.weights_path)->required();
  pc->add_option("--partition", o.partition_path)->required();
  pc->add_option("--tol", o.tol);

  auto* pst = app.add_subcommand("pst", "perfect state transfer check at a fixed time");
  pst->add_option("graph", o.graph_a)->required();
  pst->add_option("--from", o.from)->required();
  pst->add_option("--to", o.to)->required();
  pst->add_option("--time", o.time)->required();
  pst->add_option("--tol", o.tol);

  auto* scan = app.add_subcommand("pst-scan", "scan fidelity over a time grid");
  scan->add_option("graph", o.graph_a)->required();
  scan->add_option("--from", o.from)->required();
  scan->add_option("--to", o.to)->required();
  scan->add_option("--tmax", o.tmax)->required();
  scan->add_option("--steps", o.steps);
  scan->add_option("--tol", o.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (sym_flag && two_flag) {
    std::cerr << "balance: --symmetric and --two-sided are mutually exclusive\n";
    return 2;
  }
  if (sym_flag) o.mode = "symmetric";
  if (two_flag) o.mode = "two-sided";

  try {
    if (refine->parsed()) return run_refine(o);
    if (quot->parsed()) return run_quotient(o, false);
    if (symq->parsed()) return run_quotient(o, true);
    if (fi->parsed()) return run_fraciso(o);
    if (csq->parsed()) return run_common_symq(o);
    if (sq->parsed()) return run_same_quotient(o);
    if (bal->parsed()) return run_balance(o);
    if (pc->parsed()) return run_pseudo_check(o);
    if (pst->parsed()) return run_pst(o);
    if (scan->parsed()) return run_pst_scan(o);
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
