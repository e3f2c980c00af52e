#pragma once

#include "eqp/refinement.hpp"

#include <cmath>
#include <sstream>

namespace eqp {

enum class QuotientKind { combinatorial, symmetrized };

// k x k quotient matrix over cells. Combinatorial quotients are directed
// (possibly asymmetric) with entry (i,j) the weight from any vertex of C_i
// into C_j; symmetrized quotients hold e(C_i,C_j)/sqrt(|C_i||C_j|).
template <class T>
struct QuotientGraph {
  QuotientKind kind = QuotientKind::combinatorial;
  Matrix<T> mat;
  std::vector<int> cell_sizes;

  int k() const { return mat.rows(); }
};

namespace detail {
inline std::string counterexample_message(const EquitableCounterexample& ce) {
  std::ostringstream out;
  out << "partition is not equitable: vertices " << ce.u << " and " << ce.v
      << " disagree on cell " << ce.cell;
  return out.str();
}
}  // namespace detail

// Quotient of an arbitrary (possibly asymmetric) square matrix: demands row
// sums into every cell constant on each cell.
template <class T>
QuotientGraph<T> quotient_of_matrix(const Matrix<T>& a, const Partition& pi,
                                    double tol = defaults::tol) {
  if (!a.square() || a.rows() != pi.n())
    throw std::invalid_argument("quotient: matrix/partition size mismatch");
  const int k = pi.cell_count();
  Matrix<T> b(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      bool first = true;
      for (int v : pi.cell(i)) {
        T s(0);
        for (int u : pi.cell(j)) s += a(v, u);
        if (first) {
          b(i, j) = s;
          first = false;
        } else if (!scalar_traits<T>::eq(s, b(i, j), tol)) {
          throw std::invalid_argument(detail::counterexample_message(
              {pi.cell(i).front(), v, j}));
        }
      }
    }
  }
  return {QuotientKind::combinatorial, std::move(b), pi.cell_sizes()};
}

template <class T>
QuotientGraph<T> quotient(const Graph<T>& g, const Partition& pi, double tol = defaults::tol) {
  auto check = is_equitable(g, pi, tol);
  if (!check) throw std::invalid_argument(detail::counterexample_message(*check.counterexample));
  return quotient_of_matrix(g.adj, pi, tol);
}

template <class T>
QuotientGraph<T> quotient(const QuotientGraph<T>& q, const Partition& pi,
                          double tol = defaults::tol) {
  auto r = quotient_of_matrix(q.mat, pi, tol);
  std::vector<int> sizes(pi.cell_count(), 0);
  for (int i = 0; i < pi.cell_count(); ++i)
    for (int c : pi.cell(i)) sizes[i] += q.cell_sizes[c];
  r.cell_sizes = std::move(sizes);
  return r;
}

template <class T>
QuotientGraph<double> symmetrized_quotient(const Graph<T>& g, const Partition& pi,
                                           double tol = defaults::tol) {
  auto check = is_equitable(g, pi, tol);
  if (!check) throw std::invalid_argument(detail::counterexample_message(*check.counterexample));
  const int k = pi.cell_count();
  Matrix<double> b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      T e(0);
      for (int v : pi.cell(i))
        for (int u : pi.cell(j)) e += g.adj(v, u);
      b(i, j) = to_double(e) /
                std::sqrt(static_cast<double>(pi.cell(i).size()) * pi.cell(j).size());
    }
  return {QuotientKind::symmetrized, std::move(b), pi.cell_sizes()};
}

// Invariant-subspace test: colspace(P) is A-invariant iff appending AP adds
// no new column directions. Exact rational rank.
inline bool colspace_invariant(const Matrix<Rational>& a, const Partition& pi) {
  auto p = characteristic_matrix(pi, a.rows());
  return rank(hcat(p, a * p)) == rank(p);
}

// Partition of the cells of sigma induced by a coarser equitable pi; the
// image partition is equitable for G/sigma.
template <class T>
Partition push_partition(const Graph<T>& g, const Partition& sigma, const Partition& pi,
                         double tol = defaults::tol) {
  if (!sigma.refines(pi))
    throw std::invalid_argument("push_partition: sigma is not a refinement of pi");
  for (const Partition* p : {&sigma, &pi}) {
    auto check = is_equitable(g, *p, tol);
    if (!check) throw std::invalid_argument(detail::counterexample_message(*check.counterexample));
  }
  std::vector<int> image(sigma.cell_count());
  for (int c = 0; c < sigma.cell_count(); ++c) image[c] = pi.cell_of(sigma.cell(c).front());
  Partition phi = Partition::from_assignment(image);
  auto b = quotient(g, sigma, tol);
  if constexpr (scalar_traits<T>::exact) {
    if (!colspace_invariant(b.mat, phi))
      throw numerical_error("push_partition: image partition not equitable for the quotient");
  } else {
    quotient_of_matrix(b.mat, phi, tol);  // throws when not equitable
  }
  return phi;
}

// Inverse direction: group the cells of sigma by an equitable partition of
// G/sigma and lift to vertices.
template <class T>
Partition lift_partition(const Graph<T>& g, const Partition& sigma, const Partition& s,
                         double tol = defaults::tol) {
  auto check = is_equitable(g, sigma, tol);
  if (!check) throw std::invalid_argument(detail::counterexample_message(*check.counterexample));
  if (s.n() != sigma.cell_count())
    throw std::invalid_argument("lift_partition: partition does not match quotient size");
  auto b = quotient(g, sigma, tol);
  try {
    quotient_of_matrix(b.mat, s, tol);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("lift_partition: partition is not equitable for the quotient");
  }
  std::vector<std::vector<int>> cells(s.cell_count());
  for (int i = 0; i < s.cell_count(); ++i)
    for (int c : s.cell(i))
      cells[i].insert(cells[i].end(), sigma.cell(c).begin(), sigma.cell(c).end());
  Partition lifted = Partition(std::move(cells), g.n).canonicalized();
  if (!is_equitable(g, lifted, tol))
    throw numerical_error("lift_partition: lifted partition not equitable");
  return lifted;
}

}  // namespace eqp
