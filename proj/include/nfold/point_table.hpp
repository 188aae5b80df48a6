#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nfold/core.hpp"

namespace nfold {

/// Back-reference stored with each cell. Its meaning depends on the table:
/// base tables point into their selection store, fold tables hold the pair of
/// contributing cells, level sets hold (parent cell, small cell).
struct Origin {
  std::int64_t first = -1;
  std::int64_t second = -1;
};

/// Sparse set of lattice points of a fixed dimension, each with a value and an
/// origin. Insertion keeps the first cell seen for a point unless a strictly
/// larger value arrives. seal() sorts the cells lexicographically.
class PointTable {
 public:
  explicit PointTable(int dim = 0);

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<const Int> point(std::size_t cell) const {
    return {coords_.data() + cell * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  Int value(std::size_t cell) const { return values_[cell]; }
  const Origin& origin(std::size_t cell) const { return origins_[cell]; }

  std::optional<std::size_t> find(std::span<const Int> p) const;

  /// Returns true when a new cell was created or the stored value improved.
  bool offer(std::span<const Int> p, Int value, Origin origin);

  void seal();
  void reserve(std::size_t cells);

  /// Cells whose first coordinate lies in [lo, hi]; requires a sealed table.
  std::pair<std::size_t, std::size_t> first_axis_range(Int lo, Int hi) const;

  std::vector<std::vector<Int>> points() const;

 private:
  std::uint64_t hash(std::span<const Int> p) const;
  std::size_t probe(std::span<const Int> p, std::uint64_t h) const;
  void rehash(std::size_t capacity);

  int dim_;
  std::vector<Int> coords_;
  std::vector<Int> values_;
  std::vector<Origin> origins_;
  std::vector<std::uint32_t> slots_;  // 0 = empty, otherwise cell + 1
  bool sealed_ = false;
};

}  // namespace nfold
