#include "eqp/graph.hpp"
#include "eqp/partition.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace eqp;

TEST_CASE("graph_from_edges basics") {
  auto k3 = fixtures::complete(3);
  Matrix<Rational> expect({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(k3.adj == expect);

  auto loop = graph_from_edges<Rational>(1, {{0, 0, 1}});
  CHECK(loop.adj(0, 0) == 1);

  // the symmetrized quotient of the triangle, entered directly as a graph
  auto w = graph_from_edges<double>(2, {{0, 1, std::sqrt(2.0)}, {1, 1, 1.0}});
  CHECK(w.adj(0, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.adj(1, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.adj(1, 1) == 1.0);
  CHECK(w.adj(0, 0) == 0.0);
}

TEST_CASE("graph_from_edges rejects bad input") {
  CHECK_THROWS_AS(graph_from_edges<Rational>(2, {{0, 2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges<Rational>(2, {{0, 1, 1}, {1, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges<Rational>(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges<double>(2, {{0, 1, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("characteristic matrices") {
  Partition pi({{0}, {1, 2}}, 3);
  Matrix<Rational> expect({{1, 0}, {0, 1}, {0, 1}});
  CHECK(characteristic_matrix(pi, 3) == expect);

  CHECK(characteristic_matrix(Partition::singletons(3), 3) == Matrix<Rational>::identity(3));
  CHECK(characteristic_matrix(Partition::one_cell(4), 4) ==
        Matrix<Rational>::constant(4, 1, 1));

  auto p = characteristic_matrix(pi, 3);
  auto ptp = p.transposed() * p;
  CHECK(ptp == Matrix<Rational>(std::vector<std::vector<Rational>>{{1, 0}, {0, 2}}));
}

TEST_CASE("normalized characteristic matrices") {
  Partition star({{0}, {1, 2, 3, 4}}, 5);
  auto p = normalized_characteristic_matrix(star, 5);
  for (int v = 1; v <= 4; ++v) CHECK(p(v, 1) == doctest::Approx(0.5));

  CHECK(normalized_characteristic_matrix(Partition::singletons(3), 3)
            .approx_equal(Matrix<double>::identity(3), 1e-15));

  auto one = normalized_characteristic_matrix(Partition::one_cell(3), 3);
  for (int v = 0; v < 3; ++v) CHECK(one(v, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));

  // orthonormal columns
  auto ptp = p.transposed() * p;
  CHECK(ptp.approx_equal(Matrix<double>::identity(2), 1e-12));
}

TEST_CASE("projector P~P~^T is symmetric idempotent nonnegative with 1/|C| blocks") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::vector<int> assign(n);
    for (int v = 0; v < n; ++v) assign[v] = static_cast<int>(rng() % (1 + v));
    auto pi = Partition::from_assignment(assign);
    auto p = normalized_characteristic_matrix(pi, n);
    auto s = p * p.transposed();
    CHECK(s.is_symmetric(1e-12));
    CHECK((s * s).max_abs_diff(s) < 1e-12);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CHECK(s(a, b) >= -1e-15);
        if (pi.cell_of(a) == pi.cell_of(b))
          CHECK(s(a, b) ==
                doctest::Approx(1.0 / pi.cell(pi.cell_of(a)).size()).epsilon(1e-12));
        else
          CHECK(s(a, b) == 0.0);
      }
    // entrywise agreement of the two characteristic matrices after squaring
    auto pc = characteristic_matrix(pi, n);
    for (int v = 0; v < n; ++v)
      for (int c = 0; c < pi.cell_count(); ++c) {
        double sq = p(v, c) * p(v, c);
        Rational target = pc(v, c) / Rational(static_cast<int>(pi.cell(c).size()));
        CHECK(std::abs(sq - to_double(target)) < 1e-15);
      }
  }
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition({{0, 1}}, 3), std::invalid_argument);          // not covering
  CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}, 3), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Partition({{0}, {}}, 1), std::invalid_argument);         // empty cell
  CHECK_THROWS_AS(Partition({{0, 3}}, 2), std::invalid_argument);          // out of range
}

TEST_CASE("partition canonical order sorts by (size, smallest vertex)") {
  Partition pi({{1, 2}, {0}, {3}}, 4);
  auto canon = pi.canonicalized();
  CHECK(canon.cells() == std::vector<std::vector<int>>{{0}, {3}, {1, 2}});
  // construction order is preserved until canonicalized
  CHECK(pi.cells() == std::vector<std::vector<int>>{{1, 2}, {0}, {3}});
}

TEST_CASE("graph text serialization round-trips exactly") {
  auto g = graph_from_edges<Rational>(
      4, {{0, 1, Rational(1, 3)}, {1, 2, 2}, {2, 2, Rational(5, 2)}, {0, 3, 1}});
  std::stringstream buf;
  write_graph_text(buf, g);
  auto h = parse_graph_text(buf);
  CHECK(g.adj == h.adj);

  std::stringstream buf2, buf3;
  write_graph_text(buf2, h);
  write_graph_text(buf3, g);
  CHECK(buf2.str() == buf3.str());

  // decimals parse exactly
  std::stringstream in("2 1 weighted\n0 1 0.125\n");
  auto d = parse_graph_text(in);
  CHECK(d.adj(0, 1) == Rational(1, 8));
}

TEST_CASE("graph text parser rejects malformed input") {
  std::stringstream a("2 1 weighted\n0 1\n");
  CHECK_THROWS_AS(parse_graph_text(a), std::invalid_argument);
  std::stringstream b("2 2\n0 1\n");
  CHECK_THROWS_AS(parse_graph_text(b), std::invalid_argument);
  std::stringstream c("not a header\n");
  CHECK_THROWS_AS(parse_graph_text(c), std::invalid_argument);
}

TEST_CASE("rational string parsing") {
  CHECK(rational_from_string("1.5") == Rational(3, 2));
  CHECK(rational_from_string("-0.25") == Rational(-1, 4));
  CHECK(rational_from_string("7/3") == Rational(7, 3));
  CHECK(rational_from_string("-7/3") == Rational(-7, 3));
  CHECK(rational_from_string("42") == 42);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK(rational_to_string(Rational(3, 2)) == "3/2");
  CHECK(rational_to_string(Rational(4)) == "4");
}
