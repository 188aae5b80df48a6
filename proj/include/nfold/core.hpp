#pragma once

// Instance model for combinatorial n-fold integer programs:
//
//   [ A_1  A_2  ...  A_n ]       [ b_up  ]
//   [ 1^T               ]  x  =  [       ]
//   [      1^T          ]        [ b_low ]
//   [            ...    ]
//   [               1^T ]
//
// Every block A_k has r rows and t_k columns; brick x^(k) holds the t_k
// variables of block k and its coordinates must sum to b_low[k].

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfold {

using Int = std::int64_t;
using Wide = __int128;

enum class Mode { feasibility, optimization };

const char* to_string(Mode mode);

/// Dense row-major integer matrix with a fixed shape.
class Block {
 public:
  Block() = default;
  Block(int rows, int cols);
  Block(int rows, int cols, std::vector<Int> row_major);

  /// Builds from nested rows; an empty list yields a 0 x cols block.
  static Block from_rows(const std::vector<std::vector<Int>>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int at(int row, int col) const { return data_[static_cast<std::size_t>(row) * cols_ + col]; }
  Int& at(int row, int col) { return data_[static_cast<std::size_t>(row) * cols_ + col]; }

  std::vector<Int> column(int col) const;
  std::vector<std::vector<Int>> to_rows() const;
  Int max_abs() const;
  Int min_entry() const;

  friend bool operator==(const Block&, const Block&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

struct NFoldInstance {
  int n = 0;
  int r = 0;
  std::vector<int> t;
  std::vector<Block> blocks;
  std::vector<Int> b_up;
  std::vector<Int> b_low;
  std::optional<std::vector<Int>> c;

  friend bool operator==(const NFoldInstance&, const NFoldInstance&) = default;
};

enum class InstanceErrorKind { dimension_mismatch, negative_local_rhs, length_mismatch, objective_missing, negative_objective, overflow };

const char* to_string(InstanceErrorKind kind);

class InstanceError : public std::runtime_error {
 public:
  InstanceError(InstanceErrorKind kind, const std::string& what);
  InstanceErrorKind kind() const { return kind_; }

 private:
  InstanceErrorKind kind_;
};

/// An instance whose shapes have been checked, with cached Delta and h.
class ValidatedInstance {
 public:
  const NFoldInstance& get() const { return inst_; }
  const NFoldInstance* operator->() const { return &inst_; }

  Int delta() const { return delta_; }
  std::size_t h() const { return h_; }
  /// Offset of brick k inside the full variable vector.
  std::size_t brick_offset(int k) const { return offsets_[k]; }
  bool has_negative_entries() const { return has_negative_; }

 private:
  friend ValidatedInstance validate(NFoldInstance inst);
  NFoldInstance inst_;
  Int delta_ = 0;
  std::size_t h_ = 0;
  std::vector<std::size_t> offsets_;
  bool has_negative_ = false;
};

/// Checks shapes and signs. Throws InstanceError.
ValidatedInstance validate(NFoldInstance inst);

struct Solution {
  std::vector<Int> x;
  std::optional<Int> objective;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// True iff x >= 0, every brick sums to b_low[k], and sum_k A_k x^(k) = b_up.
/// Throws InstanceError(length_mismatch) when x has the wrong length.
bool verify_solution(const ValidatedInstance& inst, std::span<const Int> x);

/// c^T x, or nullopt when the instance has no objective.
std::optional<Int> objective_value(const NFoldInstance& inst, std::span<const Int> x);

enum class SolveStatus { feasible, infeasible, optimal };

const char* to_string(SolveStatus status);

struct SolveStats {
  int iterations = 0;
  Int support_bound = 0;
  Int box_radius = 0;
  std::uint64_t dp_cells = 0;
  std::vector<std::uint64_t> level_sizes;
  bool reduced = false;
  double wall_ms = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;
  SolveStats stats;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nfold
