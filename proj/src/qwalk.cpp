#include "eqp/qwalk.hpp"

#include "eqp/eigen_support.hpp"
#include "eqp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace eqp {

namespace {

using cplx = std::complex<double>;

CMatrix exp_it(const std::vector<double>& w, const Matrix<double>& v, double t) {
  const int n = static_cast<int>(w.size());
  std::vector<cplx> phase(n);
  for (int k = 0; k < n; ++k) phase[k] = std::exp(cplx(0, t * w[k]));
  CMatrix u(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0;
      for (int k = 0; k < n; ++k) s += phase[k] * v(i, k) * v(j, k);
      u(i, j) = s;
    }
  return u;
}

double entry_fidelity(const std::vector<double>& w, const Matrix<double>& v, int a, int b,
                      double t) {
  cplx s = 0;
  for (size_t k = 0; k < w.size(); ++k)
    s += std::exp(cplx(0, t * w[k])) * v(a, static_cast<int>(k)) * v(b, static_cast<int>(k));
  return std::norm(s);
}

void check_walk_input(const Graph<double>& g, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("walk time must be finite");
  if (!g.adj.is_symmetric(1e-12))
    throw std::invalid_argument("walk matrix needs a symmetric adjacency");
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

}  // namespace

WalkMatrix walk_matrix(const Graph<double>& g, double t) {
  check_walk_input(g, t);
  auto [w, v] = sym_eigen(g.adj);
  auto u = exp_it(w, v, t);
  double resid = 0;
  const int n = g.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0;
      for (int k = 0; k < n; ++k) s += u(i, k) * std::conj(u(j, k));
      resid = std::max(resid, std::abs(s - (i == j ? cplx(1) : cplx(0))));
    }
  if (resid > 1e-9) throw numerical_error("walk matrix failed the unitarity check");
  return {t, std::move(u)};
}

PstResult pst_check(const Graph<double>& g, int u, int v, double t, double tol) {
  if (u == v) throw std::invalid_argument("state transfer endpoints must differ");
  if (u < 0 || u >= g.n || v < 0 || v >= g.n)
    throw std::invalid_argument("vertex out of range");
  check_walk_input(g, t);
  auto [w, vec] = sym_eigen(g.adj);
  double fid = entry_fidelity(w, vec, u, v, t);
  return {fid >= 1 - tol, fid};
}

std::vector<std::pair<double, double>> pst_scan(const Graph<double>& g, int u, int v,
                                                double t_max, int steps, double tol) {
  if (steps < 1) throw std::invalid_argument("pst_scan needs at least one step");
  if (u == v || u < 0 || u >= g.n || v < 0 || v >= g.n)
    throw std::invalid_argument("bad state transfer endpoints");
  auto [w, vec] = sym_eigen(g.adj);
  auto fid = [&](double t) { return entry_fidelity(w, vec, u, v, t); };

  std::vector<double> f(steps + 1);
  double h = t_max / steps;
  for (int i = 0; i <= steps; ++i) f[i] = fid(i * h);

  std::vector<std::pair<double, double>> out;
  for (int i = 1; i < steps; ++i) {
    if (!(f[i] >= f[i - 1] && f[i] >= f[i + 1] && (f[i] > f[i - 1] || f[i] > f[i + 1])))
      continue;
    double t_star = golden_max(fid, (i - 1) * h, (i + 1) * h);
    double best = fid(t_star);
    if (best >= 1 - tol) out.emplace_back(t_star, best);
  }
  return out;
}

double quotient_walk_residual(const Graph<double>& g, const Partition& pi, double t,
                              double tol) {
  auto b = symmetrized_quotient(g, pi, tol);
  auto p = normalized_characteristic_matrix(pi, g.n);
  CMatrix pc(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) pc(i, j) = p(i, j);
  auto ug = walk_matrix(g, t).u;
  auto [wq, vq] = sym_eigen(b.mat);
  auto ub = exp_it(wq, vq, t);
  return (ug * pc - pc * ub).max_abs();
}

double quotient_walk_residual(const Graph<double>& g, const std::vector<double>& w,
                              const Partition& pi, double t, double tol) {
  auto b = pseudo_symmetrized_quotient(g, w, pi, tol);
  auto u = normalize_per_cell(w, pi);
  Matrix<double> p(g.n, pi.cell_count());
  for (int c = 0; c < pi.cell_count(); ++c)
    for (int v : pi.cell(c)) p(v, c) = u[v];
  CMatrix pc(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) pc(i, j) = p(i, j);
  auto ug = walk_matrix(g, t).u;
  auto [wq, vq] = sym_eigen(b.mat);
  auto ub = exp_it(wq, vq, t);
  return (ug * pc - pc * ub).max_abs();
}

}  // namespace eqp
