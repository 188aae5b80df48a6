#include "nfold/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace nfold {

const char* to_string(Mode mode) {
  return mode == Mode::feasibility ? "feasibility" : "optimization";
}

const char* to_string(InstanceErrorKind kind) {
  switch (kind) {
    case InstanceErrorKind::dimension_mismatch: return "dimension-mismatch";
    case InstanceErrorKind::negative_local_rhs: return "negative-local-rhs";
    case InstanceErrorKind::length_mismatch: return "length-mismatch";
    case InstanceErrorKind::objective_missing: return "objective-missing";
    case InstanceErrorKind::negative_objective: return "negative-objective";
    case InstanceErrorKind::overflow: return "overflow";
  }
  return "unknown";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::optimal: return "optimal";
  }
  return "unknown";
}

InstanceError::InstanceError(InstanceErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

Block::Block(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

Block::Block(int rows, int cols, std::vector<Int> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw InstanceError(InstanceErrorKind::dimension_mismatch, "block data does not match its shape");
  }
}

Block Block::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  Block b(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(cols)) {
      throw InstanceError(InstanceErrorKind::dimension_mismatch,
                          "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(cols));
    }
    for (int j = 0; j < cols; ++j) b.at(static_cast<int>(i), j) = rows[i][j];
  }
  return b;
}

std::vector<Int> Block::column(int col) const {
  std::vector<Int> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, col);
  return out;
}

std::vector<std::vector<Int>> Block::to_rows() const {
  std::vector<std::vector<Int>> out(rows_, std::vector<Int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = at(i, j);
  return out;
}

Int Block::max_abs() const {
  Int m = 0;
  for (Int v : data_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

Int Block::min_entry() const {
  if (data_.empty()) return 0;
  return *std::min_element(data_.begin(), data_.end());
}

ValidatedInstance validate(NFoldInstance inst) {
  using K = InstanceErrorKind;
  if (inst.n < 0 || inst.r < 0) throw InstanceError(K::dimension_mismatch, "n and r must be non-negative");
  const auto n = static_cast<std::size_t>(inst.n);
  if (inst.t.size() != n) throw InstanceError(K::dimension_mismatch, "t has " + std::to_string(inst.t.size()) + " entries, n = " + std::to_string(n));
  if (inst.blocks.size() != n)
    throw InstanceError(K::dimension_mismatch, std::to_string(inst.blocks.size()) + " blocks supplied, n = " + std::to_string(n));
  if (inst.b_low.size() != n) throw InstanceError(K::dimension_mismatch, "b_low length differs from n");
  if (inst.b_up.size() != static_cast<std::size_t>(inst.r)) throw InstanceError(K::dimension_mismatch, "b_up length differs from r");

  ValidatedInstance v;
  v.offsets_.resize(n);
  std::size_t h = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (inst.t[k] <= 0) throw InstanceError(K::dimension_mismatch, "t[" + std::to_string(k) + "] must be positive");
    const Block& b = inst.blocks[k];
    if (b.rows() != inst.r || b.cols() != inst.t[k]) {
      throw InstanceError(K::dimension_mismatch, "block " + std::to_string(k) + " is " + std::to_string(b.rows()) + "x" +
                                                     std::to_string(b.cols()) + ", expected " + std::to_string(inst.r) + "x" +
                                                     std::to_string(inst.t[k]));
    }
    v.delta_ = std::max(v.delta_, b.max_abs());
    if (b.min_entry() < 0) v.has_negative_ = true;
    v.offsets_[k] = h;
    h += static_cast<std::size_t>(inst.t[k]);
  }
  if (inst.c && inst.c->size() != h)
    throw InstanceError(K::dimension_mismatch, "c has " + std::to_string(inst.c->size()) + " entries, h = " + std::to_string(h));
  for (std::size_t k = 0; k < n; ++k) {
    if (inst.b_low[k] < 0) throw InstanceError(K::negative_local_rhs, "b_low[" + std::to_string(k) + "] = " + std::to_string(inst.b_low[k]));
  }
  v.h_ = h;
  v.inst_ = std::move(inst);
  return v;
}

bool verify_solution(const ValidatedInstance& vi, std::span<const Int> x) {
  const NFoldInstance& inst = vi.get();
  if (x.size() != vi.h())
    throw InstanceError(InstanceErrorKind::length_mismatch, "x has " + std::to_string(x.size()) + " entries, h = " + std::to_string(vi.h()));
  std::vector<Wide> global(inst.r, 0);
  for (int k = 0; k < inst.n; ++k) {
    const std::size_t off = vi.brick_offset(k);
    Wide sum = 0;
    for (int j = 0; j < inst.t[k]; ++j) {
      const Int xj = x[off + j];
      if (xj < 0) return false;
      sum += xj;
      for (int row = 0; row < inst.r; ++row) global[row] += static_cast<Wide>(inst.blocks[k].at(row, j)) * xj;
    }
    if (sum != inst.b_low[k]) return false;
  }
  for (int row = 0; row < inst.r; ++row)
    if (global[row] != inst.b_up[row]) return false;
  return true;
}

std::optional<Int> objective_value(const NFoldInstance& inst, std::span<const Int> x) {
  if (!inst.c) return std::nullopt;
  Wide total = 0;
  for (std::size_t j = 0; j < x.size() && j < inst.c->size(); ++j) total += static_cast<Wide>((*inst.c)[j]) * x[j];
  if (total > std::numeric_limits<Int>::max() || total < std::numeric_limits<Int>::min())
    throw InstanceError(InstanceErrorKind::overflow, "objective exceeds 64-bit range");
  return static_cast<Int>(total);
}

}  // namespace nfold
