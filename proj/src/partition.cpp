#include "eqp/partition.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace eqp {

Partition::Partition(std::vector<std::vector<int>> cells, int n) : n_(n), cells_(std::move(cells)) {
  if (n_ < 1) throw std::invalid_argument("partition ground set must be nonempty");
  assignment_.assign(n_, -1);
  for (size_t c = 0; c < cells_.size(); ++c) {
    auto& cell = cells_[c];
    if (cell.empty()) throw std::invalid_argument("empty partition cell");
    std::sort(cell.begin(), cell.end());
    for (int v : cell) {
      if (v < 0 || v >= n_) throw std::invalid_argument("partition vertex out of range");
      if (assignment_[v] != -1) throw std::invalid_argument("partition cells overlap");
      assignment_[v] = static_cast<int>(c);
    }
  }
  for (int v = 0; v < n_; ++v)
    if (assignment_[v] < 0) throw std::invalid_argument("partition does not cover all vertices");
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> cells(n);
  for (int v = 0; v < n; ++v) cells[v] = {v};
  return Partition(std::move(cells), n);
}

Partition Partition::one_cell(int n) {
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  return Partition({all}, n);
}

Partition Partition::from_assignment(const std::vector<int>& cell_of) {
  std::map<int, std::vector<int>> groups;
  for (size_t v = 0; v < cell_of.size(); ++v) groups[cell_of[v]].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> cells;
  cells.reserve(groups.size());
  for (auto& [_, cell] : groups) cells.push_back(std::move(cell));
  return Partition(std::move(cells), static_cast<int>(cell_of.size())).canonicalized();
}

std::vector<int> Partition::cell_sizes() const {
  std::vector<int> s;
  s.reserve(cells_.size());
  for (const auto& c : cells_) s.push_back(static_cast<int>(c.size()));
  return s;
}

Partition Partition::canonicalized() const {
  auto cells = cells_;
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });
  return Partition(std::move(cells), n_);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.n_ != n_) throw std::invalid_argument("partition ground-set mismatch");
  for (const auto& cell : cells_) {
    int target = coarser.cell_of(cell.front());
    for (int v : cell)
      if (coarser.cell_of(v) != target) return false;
  }
  return true;
}

bool Partition::same_blocks(const Partition& other) const {
  if (other.n_ != n_ || other.cells_.size() != cells_.size()) return false;
  return canonicalized() == other.canonicalized();
}

Matrix<Rational> characteristic_matrix(const Partition& pi, int n) {
  if (pi.n() != n) throw std::invalid_argument("partition size does not match vertex count");
  Matrix<Rational> p(n, pi.cell_count());
  for (int i = 0; i < pi.cell_count(); ++i)
    for (int v : pi.cell(i)) p(v, i) = 1;
  return p;
}

Matrix<double> normalized_characteristic_matrix(const Partition& pi, int n) {
  if (pi.n() != n) throw std::invalid_argument("partition size does not match vertex count");
  Matrix<double> p(n, pi.cell_count());
  for (int i = 0; i < pi.cell_count(); ++i) {
    double s = 1.0 / std::sqrt(static_cast<double>(pi.cell(i).size()));
    for (int v : pi.cell(i)) p(v, i) = s;
  }
  return p;
}

Partition partition_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("partition JSON must be an array of arrays");
  std::vector<std::vector<int>> cells;
  int count = 0;
  for (const auto& c : j) {
    if (!c.is_array()) throw std::invalid_argument("partition JSON must be an array of arrays");
    std::vector<int> cell;
    for (const auto& v : c) {
      if (!v.is_number_integer()) throw std::invalid_argument("partition entries must be integers");
      cell.push_back(v.get<int>());
      ++count;
    }
    cells.push_back(std::move(cell));
  }
  return Partition(std::move(cells), count);
}

Partition load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open partition file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return partition_from_json(text);
}

std::string partition_to_json(const Partition& pi) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : pi.cells()) j.push_back(c);
  return j.dump();
}

}  // namespace eqp
