#pragma once

#include "eqp/matrix.hpp"

#include <string>
#include <vector>

namespace eqp {

// Ordered partition of {0..n-1} into nonempty cells. The cell order given at
// construction is preserved (it fixes row/column order of quotient matrices);
// canonicalized() reorders cells by (size, smallest vertex).
class Partition {
 public:
  Partition(std::vector<std::vector<int>> cells, int n);
  static Partition singletons(int n);
  static Partition one_cell(int n);
  // Cells grouped from a dense cell-id vector, emitted in canonical order.
  static Partition from_assignment(const std::vector<int>& cell_of);

  int n() const { return n_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<int>& cell(int i) const { return cells_[i]; }
  int cell_of(int v) const { return assignment_[v]; }
  std::vector<int> cell_sizes() const;

  Partition canonicalized() const;
  // True when every cell of *this lies inside a cell of `coarser`.
  bool refines(const Partition& coarser) const;
  // Equality as set systems, ignoring cell order.
  bool same_blocks(const Partition& other) const;
  // Order-sensitive equality (identical cell lists).
  bool operator==(const Partition& other) const { return cells_ == other.cells_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> cells_;
  std::vector<int> assignment_;
};

// n x k 0/1 indicator matrix; column i marks cell i.
Matrix<Rational> characteristic_matrix(const Partition& pi, int n);
// Columns scaled to unit norm: entry 1/sqrt(|C_i|) on cell i.
Matrix<double> normalized_characteristic_matrix(const Partition& pi, int n);

// JSON form: array of arrays of vertex indices, e.g. [[0,1],[2]].
Partition partition_from_json(const std::string& text);
Partition load_partition_file(const std::string& path);
std::string partition_to_json(const Partition& pi);

}  // namespace eqp
