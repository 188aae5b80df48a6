#include "nfold/dp_engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nfold {

namespace {

constexpr Int kFar = std::numeric_limits<Int>::max() / 4;
constexpr Int kNone = std::numeric_limits<Int>::min();

Int clamp_far(Wide v) {
  if (v > kFar) return kFar;
  if (v < -kFar) return -kFar;
  return static_cast<Int>(v);
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

struct ColumnRange {
  std::vector<Int> lo;  // per row, min entry over columns
  std::vector<Int> hi;
};

ColumnRange column_range(const Block& block) {
  ColumnRange out{std::vector<Int>(static_cast<std::size_t>(block.rows()), 0), std::vector<Int>(static_cast<std::size_t>(block.rows()), 0)};
  for (int i = 0; i < block.rows(); ++i) {
    Int lo = block.at(i, 0), hi = block.at(i, 0);
    for (int j = 1; j < block.cols(); ++j) {
      lo = std::min(lo, block.at(i, j));
      hi = std::max(hi, block.at(i, j));
    }
    out.lo[static_cast<std::size_t>(i)] = lo;
    out.hi[static_cast<std::size_t>(i)] = hi;
  }
  return out;
}

std::vector<Int> block_costs(const ValidatedInstance& inst, int k, Mode mode) {
  const auto t = static_cast<std::size_t>(inst->t[static_cast<std::size_t>(k)]);
  std::vector<Int> out(t, 0);
  if (mode == Mode::optimization && inst->c) {
    const std::size_t off = inst.brick_offset(k);
    std::copy_n(inst->c->begin() + static_cast<std::ptrdiff_t>(off), t, out.begin());
  }
  return out;
}

}  // namespace

AxisBox AxisBox::cube(int dim, Int lo, Int hi) {
  return AxisBox{std::vector<Int>(static_cast<std::size_t>(dim), lo), std::vector<Int>(static_cast<std::size_t>(dim), hi)};
}

bool AxisBox::contains(std::span<const Int> p) const {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] < lo[j] || p[j] > hi[j]) return false;
  return true;
}

bool AxisBox::empty() const {
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (lo[j] > hi[j]) return true;
  return false;
}

BlockTable block_base_table(const Block& block, Int items, Mode mode, std::span<const Int> costs, const AxisBox& box) {
  const int r = block.rows();
  const int t = block.cols();
  const ColumnRange range = column_range(block);
  const bool weighted = mode == Mode::optimization && !costs.empty();

  BlockTable out;
  out.cols = t;
  out.items = items;
  out.cells = PointTable(r);

  std::vector<PointTable> layers;
  layers.reserve(static_cast<std::size_t>(items) + 1);
  layers.emplace_back(r);
  const std::vector<Int> zero(static_cast<std::size_t>(r), 0);
  layers.back().offer(zero, 0, Origin{});
  layers.back().seal();

  std::vector<Int> lo(static_cast<std::size_t>(r)), hi(static_cast<std::size_t>(r)), p(static_cast<std::size_t>(r));
  for (Int c = 1; c <= items; ++c) {
    const Int left = items - c;
    for (int i = 0; i < r; ++i) {
      const auto u = static_cast<std::size_t>(i);
      lo[u] = clamp_far(static_cast<Wide>(box.lo[u]) - static_cast<Wide>(left) * range.hi[u]);
      hi[u] = clamp_far(static_cast<Wide>(box.hi[u]) - static_cast<Wide>(left) * range.lo[u]);
    }
    const PointTable& prev = layers.back();
    PointTable next(r);
    next.reserve(prev.size() * 2);
    for (std::size_t cell = 0; cell < prev.size(); ++cell) {
      const auto base = prev.point(cell);
      for (int j = 0; j < t; ++j) {
        bool inside = true;
        for (int i = 0; i < r; ++i) {
          const auto u = static_cast<std::size_t>(i);
          p[u] = base[u] + block.at(i, j);
          if (p[u] < lo[u] || p[u] > hi[u]) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        const Int value = prev.value(cell) + (weighted ? costs[static_cast<std::size_t>(j)] : 0);
        next.offer(p, value, Origin{static_cast<std::int64_t>(cell), j});
      }
    }
    next.seal();
    layers.push_back(std::move(next));
    if (layers.back().empty()) {
      out.cells.seal();
      return out;
    }
  }

  const PointTable& last = layers.back();
  out.cells.reserve(last.size());
  out.selections.assign(last.size() * static_cast<std::size_t>(t), 0);
  for (std::size_t cell = 0; cell < last.size(); ++cell) {
    if (!box.contains(last.point(cell))) continue;
    const std::size_t row = out.cells.size();
    Int* sel = out.selections.data() + row * static_cast<std::size_t>(t);
    std::size_t walk = cell;
    for (std::size_t layer = layers.size() - 1; layer > 0; --layer) {
      const Origin& o = layers[layer].origin(walk);
      ++sel[o.second];
      walk = static_cast<std::size_t>(o.first);
    }
    out.cells.offer(last.point(cell), last.value(cell), Origin{static_cast<std::int64_t>(row), -1});
  }
  out.selections.resize(out.cells.size() * static_cast<std::size_t>(t));
  out.cells.seal();
  return out;
}

BlockTable block_base_table(const Block& block, Int items, Int support, Int delta, Mode mode, std::span<const Int> costs) {
  const Int cap = clamp_far(static_cast<Wide>(support) * delta);
  return block_base_table(block, items, mode, costs, AxisBox::cube(block.rows(), 0, cap));
}

PointTable convolve(const PointTable& a, const PointTable& b, const AxisBox& box) {
  if (a.dim() != b.dim()) throw std::invalid_argument("convolve: dimension mismatch");
  const int dim = a.dim();
  PointTable out(dim);
  std::vector<Int> p(static_cast<std::size_t>(dim));
  for (std::size_t ca = 0; ca < a.size(); ++ca) {
    const auto pa = a.point(ca);
    std::size_t from = 0, to = b.size();
    if (dim > 0) std::tie(from, to) = b.first_axis_range(box.lo[0] - pa[0], box.hi[0] - pa[0]);
    for (std::size_t cb = from; cb < to; ++cb) {
      const auto pb = b.point(cb);
      bool inside = true;
      for (int j = 0; j < dim; ++j) {
        const auto u = static_cast<std::size_t>(j);
        p[u] = pa[u] + pb[u];
        if (p[u] < box.lo[u] || p[u] > box.hi[u]) {
          inside = false;
          break;
        }
      }
      if (inside) out.offer(p, a.value(ca) + b.value(cb), Origin{static_cast<std::int64_t>(ca), static_cast<std::int64_t>(cb)});
    }
  }
  out.seal();
  return out;
}

PointTable convolve(const PointTable& a, const PointTable& b, Int cap) {
  return convolve(a, b, AxisBox::cube(a.dim(), -kFar, cap));
}

// ---------------------------------------------------------------------------

BlockPointSolver::BlockPointSolver(const Block& block, Int items, Mode mode, std::span<const Int> costs)
    : block_(block), items_(items), mode_(mode), memo_(block.rows() + 2) {
  const auto t = static_cast<std::size_t>(block.cols());
  const auto r = static_cast<std::size_t>(block.rows());
  costs_.assign(t, 0);
  if (mode == Mode::optimization && !costs.empty()) std::copy(costs.begin(), costs.end(), costs_.begin());
  suffix_min_.assign((t + 1) * r, 0);
  suffix_max_.assign((t + 1) * r, 0);
  for (std::size_t j = t; j-- > 0;) {
    for (std::size_t i = 0; i < r; ++i) {
      const Int a = block.at(static_cast<int>(i), static_cast<int>(j));
      const bool last = j + 1 == t;
      suffix_min_[j * r + i] = last ? a : std::min(a, suffix_min_[(j + 1) * r + i]);
      suffix_max_[j * r + i] = last ? a : std::max(a, suffix_max_[(j + 1) * r + i]);
    }
  }
  key_.resize(r + 2);
}

bool BlockPointSolver::choice_range(int col, Int left, std::span<const Int> rem, Int& lo, Int& hi) const {
  const auto r = static_cast<std::size_t>(block_.rows());
  lo = 0;
  hi = left;
  const auto next = static_cast<std::size_t>(col + 1);
  for (std::size_t i = 0; i < r; ++i) {
    const Wide a = block_.at(static_cast<int>(i), col);
    const Wide smin = suffix_min_[next * r + i];
    const Wide smax = suffix_max_[next * r + i];
    // (left - x) * smin <= rem - x * a <= (left - x) * smax
    const Wide d1 = smin - a, v1 = static_cast<Wide>(left) * smin - rem[i];
    if (d1 > 0) lo = std::max<Int>(lo, clamp_far(ceil_div(v1, d1)));
    else if (d1 < 0) hi = std::min<Int>(hi, clamp_far(floor_div(v1, d1)));
    else if (v1 > 0) return false;
    const Wide d2 = smax - a, v2 = static_cast<Wide>(left) * smax - rem[i];
    if (d2 > 0) hi = std::min<Int>(hi, clamp_far(floor_div(v2, d2)));
    else if (d2 < 0) lo = std::max<Int>(lo, clamp_far(ceil_div(v2, d2)));
    else if (v2 < 0) return false;
    if (lo > hi) return false;
  }
  return lo <= hi;
}

std::optional<Int> BlockPointSolver::best(int col, Int left, std::vector<Int>& rem) {
  const int r = block_.rows();
  if (col == block_.cols() - 1) {
    for (int i = 0; i < r; ++i)
      if (static_cast<Wide>(left) * block_.at(i, col) != rem[static_cast<std::size_t>(i)]) return std::nullopt;
    return left * costs_[static_cast<std::size_t>(col)];
  }
  Int lo = 0, hi = 0;
  if (!choice_range(col, left, rem, lo, hi)) return std::nullopt;

  auto shift = [&](Int x) {
    for (int i = 0; i < r; ++i) rem[static_cast<std::size_t>(i)] -= x * block_.at(i, col);
  };
  const Int cost = costs_[static_cast<std::size_t>(col)];

  if (lo == hi) {
    shift(lo);
    const auto child = best(col + 1, left - lo, rem);
    shift(-lo);
    if (!child) return std::nullopt;
    return *child + lo * cost;
  }

  key_[0] = col;
  key_[1] = left;
  std::copy(rem.begin(), rem.end(), key_.begin() + 2);
  if (const auto hit = memo_.find(key_)) {
    const Int v = memo_.value(*hit);
    if (v == kNone) return std::nullopt;
    return v;
  }

  const std::vector<Int> base = rem;
  Int found = kNone;
  for (Int x = lo; x <= hi; ++x) {
    for (int i = 0; i < r; ++i) rem[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] - x * block_.at(i, col);
    const auto child = best(col + 1, left - x, rem);
    if (child && *child + x * cost > found) {
      found = *child + x * cost;
      if (mode_ == Mode::feasibility) break;
    }
  }
  rem = base;
  key_[0] = col;
  key_[1] = left;
  std::copy(rem.begin(), rem.end(), key_.begin() + 2);
  memo_.offer(key_, found, Origin{});
  if (found == kNone) return std::nullopt;
  return found;
}

std::optional<Int> BlockPointSolver::best_value(std::span<const Int> target) {
  if (memo_.size() > (1u << 21)) memo_ = PointTable(block_.rows() + 2);
  std::vector<Int> rem(target.begin(), target.end());
  return best(0, items_, rem);
}

std::optional<BlockPointResult> BlockPointSolver::solve(std::span<const Int> target) {
  const auto total = best_value(target);
  if (!total) return std::nullopt;
  const int r = block_.rows();
  const int t = block_.cols();
  BlockPointResult out{*total, std::vector<Int>(static_cast<std::size_t>(t), 0)};
  std::vector<Int> rem(target.begin(), target.end());
  Int left = items_;
  Int want = *total;
  for (int col = 0; col + 1 < t; ++col) {
    Int lo = 0, hi = 0;
    if (!choice_range(col, left, rem, lo, hi)) throw std::logic_error("block point solver lost its witness");
    const Int cost = costs_[static_cast<std::size_t>(col)];
    const std::vector<Int> base = rem;
    bool taken = false;
    for (Int x = lo; x <= hi && !taken; ++x) {
      for (int i = 0; i < r; ++i) rem[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] - x * block_.at(i, col);
      const auto child = best(col + 1, left - x, rem);
      if (child && *child + x * cost == want) {
        out.selection[static_cast<std::size_t>(col)] = x;
        left -= x;
        want -= x * cost;
        taken = true;
      }
    }
    if (!taken) throw std::logic_error("block point solver lost its witness");
  }
  out.selection[static_cast<std::size_t>(t - 1)] = left;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Int> SmallSubproblem::expand(std::size_t cell) const {
  std::vector<Int> x(h_, 0);
  if (bases_.empty()) return x;
  for (std::size_t j = folds_.size(); j-- > 0;) {
    const Origin& o = folds_[j].origin(cell);
    const BlockTable& base = bases_[j];
    const auto sel = base.selection(static_cast<std::size_t>(o.second));
    std::copy(sel.begin(), sel.end(), x.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<std::size_t>(base.block)]));
    cell = static_cast<std::size_t>(o.first);
  }
  return x;
}

SmallSubproblem build_small_subproblem(const ValidatedInstance& inst, std::span<const Int> small_rhs, Mode mode, const AxisBox& target,
                                       std::optional<int> lazy_block) {
  const int n = inst->n;
  const int r = inst->r;
  const auto ur = static_cast<std::size_t>(r);

  SmallSubproblem out;
  out.h_ = inst.h();
  out.lazy_ = lazy_block;
  for (int k = 0; k < n; ++k) out.offsets_.push_back(inst.brick_offset(k));

  // per-block lowest and highest possible contribution on every row
  std::vector<std::vector<Wide>> low(static_cast<std::size_t>(n), std::vector<Wide>(ur, 0));
  std::vector<std::vector<Wide>> high = low;
  std::vector<Wide> all_low(ur, 0), all_high(ur, 0);
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const ColumnRange range = column_range(inst->blocks[uk]);
    for (std::size_t i = 0; i < ur; ++i) {
      low[uk][i] = static_cast<Wide>(small_rhs[uk]) * range.lo[i];
      high[uk][i] = static_cast<Wide>(small_rhs[uk]) * range.hi[i];
      all_low[i] += low[uk][i];
      all_high[i] += high[uk][i];
    }
  }

  for (int k = 0; k < n; ++k)
    if (!lazy_block || *lazy_block != k) out.order_.push_back(k);

  if (out.order_.empty()) {
    PointTable zero(r);
    zero.offer(std::vector<Int>(ur, 0), 0, Origin{});
    zero.seal();
    out.folds_.push_back(std::move(zero));
    return out;
  }

  std::vector<Wide> done_low(ur, 0), done_high(ur, 0);
  for (std::size_t step = 0; step < out.order_.size(); ++step) {
    const int k = out.order_[step];
    const auto uk = static_cast<std::size_t>(k);
    AxisBox base_box = AxisBox::cube(r, 0, 0);
    AxisBox fold_box = base_box;
    for (std::size_t i = 0; i < ur; ++i) {
      base_box.lo[i] = clamp_far(target.lo[i] - (all_high[i] - high[uk][i]));
      base_box.hi[i] = clamp_far(target.hi[i] - (all_low[i] - low[uk][i]));
      done_low[i] += low[uk][i];
      done_high[i] += high[uk][i];
      fold_box.lo[i] = clamp_far(target.lo[i] - (all_high[i] - done_high[i]));
      fold_box.hi[i] = clamp_far(target.hi[i] - (all_low[i] - done_low[i]));
    }
    const std::vector<Int> costs = block_costs(inst, k, mode);
    BlockTable base = block_base_table(inst->blocks[uk], small_rhs[uk], mode, costs, base_box);
    base.block = k;
    out.cells_built_ += base.cells.size();

    PointTable fold(r);
    if (step == 0) {
      for (std::size_t cell = 0; cell < base.cells.size(); ++cell)
        if (fold_box.contains(base.cells.point(cell)))
          fold.offer(base.cells.point(cell), base.cells.value(cell), Origin{-1, static_cast<std::int64_t>(cell)});
      fold.seal();
    } else {
      fold = convolve(out.folds_.back(), base.cells, fold_box);
    }
    out.cells_built_ += fold.size();
    out.bases_.push_back(std::move(base));
    out.folds_.push_back(std::move(fold));
    if (out.folds_.back().empty()) {
      // nothing further can appear; keep the chain consistent
      break;
    }
  }
  return out;
}

SmallSubproblem small_subproblem_set(const ValidatedInstance& inst, const IterationPlan& plan, int i, Mode mode) {
  const std::vector<Int> small = plan.small_rhs(i);
  return build_small_subproblem(inst, small, mode, AxisBox::cube(inst->r, 0, plan.radius));
}

}  // namespace nfold
