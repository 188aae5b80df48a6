#include "nfold/driver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nfold/dp_engine.hpp"
#include "nfold/point_table.hpp"
#include "nfold/reduction.hpp"

namespace nfold {

namespace {

constexpr Int kFar = std::numeric_limits<Int>::max() / 4;

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

Int clamp_far(Wide v) { return static_cast<Int>(std::clamp<Wide>(v, -kFar, kFar)); }

Int to_int(Wide v, const char* what) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw InstanceError(InstanceErrorKind::overflow, what);
  return static_cast<Int>(v);
}

void check_objective(const NFoldInstance& inst) {
  if (!inst.c) throw InstanceError(InstanceErrorKind::objective_missing, "optimization requires an objective vector c");
  for (Int v : *inst.c)
    if (v < 0) throw InstanceError(InstanceErrorKind::negative_objective, "objective entries must be non-negative");
}

// All blocks are zero: the global rows read 0 whatever x is.
SolveOutcome solve_zero_blocks(const ValidatedInstance& inst, Mode mode) {
  SolveOutcome out;
  out.stats.iterations = 1;
  out.stats.level_sizes = {1};
  if (std::any_of(inst->b_up.begin(), inst->b_up.end(), [](Int v) { return v != 0; })) return out;
  std::vector<Int> x(inst.h(), 0);
  for (int k = 0; k < inst->n; ++k) {
    const std::size_t off = inst.brick_offset(k);
    std::size_t pick = 0;
    if (mode == Mode::optimization) {
      for (int j = 1; j < inst->t[static_cast<std::size_t>(k)]; ++j)
        if ((*inst->c)[off + static_cast<std::size_t>(j)] > (*inst->c)[off + pick]) pick = static_cast<std::size_t>(j);
    }
    x[off + pick] = inst->b_low[static_cast<std::size_t>(k)];
  }
  out.status = mode == Mode::optimization ? SolveStatus::optimal : SolveStatus::feasible;
  out.solution = Solution{std::move(x), std::nullopt};
  return out;
}

struct Level {
  PointTable points;
  std::optional<SmallSubproblem> small;
  std::vector<Int> final_small;  // set when the level was closed by point queries
};

int pick_lazy_block(const ValidatedInstance& inst, std::span<const Int> small_rhs) {
  int best = 0;
  for (int k = 1; k < inst->n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto ub = static_cast<std::size_t>(best);
    if (small_rhs[uk] > small_rhs[ub] || (small_rhs[uk] == small_rhs[ub] && inst->t[uk] < inst->t[ub])) best = k;
  }
  return best;
}

}  // namespace

SolveOutcome solve(const ValidatedInstance& original, Mode mode, const SolveOptions& options) {
  Stopwatch watch;
  if (mode == Mode::optimization) check_objective(original.get());

  std::optional<ReducedInstance> reduced;
  if (original.has_negative_entries()) reduced = reduce(original);
  const ValidatedInstance& work = reduced ? reduced->inst : original;

  auto finish = [&](SolveOutcome out) {
    out.stats.reduced = reduced.has_value();
    if (out.solution) {
      if (!verify_solution(original, out.solution->x)) throw std::logic_error("solver produced a solution that does not verify");
      out.solution->objective = objective_value(original.get(), out.solution->x);
    }
    out.stats.wall_ms = watch.elapsed_ms();
    return out;
  };

  if (options.trace) {
    *options.trace = SolveTrace{};
    options.trace->reduced = reduced.has_value();
    options.trace->b_up = work->b_up;
  }

  if (work.delta() == 0) return finish(solve_zero_blocks(work, mode));

  const IterationPlan plan = build_plan(work, mode);
  const int n = work->n;
  const int r = work->r;
  const auto ur = static_cast<std::size_t>(r);
  const int iterations = plan.iterations;
  const Int radius = plan.radius;
  const std::vector<Int>& b = work->b_up;

  SolveOutcome out;
  out.stats.iterations = iterations;
  out.stats.support_bound = plan.support;
  out.stats.box_radius = radius;
  if (options.trace) {
    options.trace->iterations = iterations;
    options.trace->radius = radius;
  }

  // Lowest and highest amount each level's small part can add on every row.
  std::vector<std::vector<Wide>> add_low(static_cast<std::size_t>(iterations) + 1, std::vector<Wide>(ur, 0));
  std::vector<std::vector<Wide>> add_high = add_low;
  for (int i = 1; i <= iterations; ++i) {
    const std::vector<Int> small = plan.small_rhs(i);
    for (int k = 0; k < n; ++k) {
      const Block& blk = work->blocks[static_cast<std::size_t>(k)];
      for (int row = 0; row < r; ++row) {
        Int lo = blk.at(row, 0), hi = blk.at(row, 0);
        for (int j = 1; j < blk.cols(); ++j) {
          lo = std::min(lo, blk.at(row, j));
          hi = std::max(hi, blk.at(row, j));
        }
        add_low[static_cast<std::size_t>(i)][static_cast<std::size_t>(row)] += static_cast<Wide>(small[static_cast<std::size_t>(k)]) * lo;
        add_high[static_cast<std::size_t>(i)][static_cast<std::size_t>(row)] += static_cast<Wide>(small[static_cast<std::size_t>(k)]) * hi;
      }
    }
  }

  // Window for level i: the box test intersected with what the later levels
  // can still add on the way to b_up.
  auto window = [&](int i) {
    AxisBox w = AxisBox::cube(r, 0, 0);
    const Wide scale = static_cast<Wide>(1) << (iterations - i);
    for (std::size_t row = 0; row < ur; ++row) {
      Wide tail_low = 0, tail_high = 0;
      for (int later = i + 1; later <= iterations; ++later) {
        const Wide f = static_cast<Wide>(1) << (iterations - later);
        tail_low += f * add_low[static_cast<std::size_t>(later)][row];
        tail_high += f * add_high[static_cast<std::size_t>(later)][row];
      }
      Wide lo = std::max<Wide>(0, ceil_div(static_cast<Wide>(b[row]) - radius * scale, scale));
      lo = std::max(lo, ceil_div(static_cast<Wide>(b[row]) - tail_high, scale));
      Wide hi = floor_div(static_cast<Wide>(b[row]) + radius * scale, scale);
      hi = std::min(hi, floor_div(static_cast<Wide>(b[row]) - tail_low, scale));
      w.lo[row] = clamp_far(lo);
      w.hi[row] = clamp_far(hi);
    }
    return w;
  };

  std::vector<Level> levels;
  levels.reserve(static_cast<std::size_t>(iterations) + 1);
  {
    Level root{PointTable(r), std::nullopt, {}};
    root.points.offer(std::vector<Int>(ur, 0), 0, Origin{});
    root.points.seal();
    levels.push_back(std::move(root));
  }

  std::vector<Int> p(ur);
  for (int i = 1; i <= iterations; ++i) {
    const PointTable& prev = levels.back().points;
    const AxisBox w = window(i);
    Level level{PointTable(r), std::nullopt, {}};
    bool empty = w.empty();

    if (!empty) {
      // range of parents, to bound what the small part must supply
      std::vector<Int> pmin(ur, kFar), pmax(ur, -kFar);
      for (std::size_t cell = 0; cell < prev.size(); ++cell) {
        const auto a = prev.point(cell);
        for (std::size_t row = 0; row < ur; ++row) {
          pmin[row] = std::min(pmin[row], a[row]);
          pmax[row] = std::max(pmax[row], a[row]);
        }
      }
      AxisBox target = AxisBox::cube(r, 0, radius);
      for (std::size_t row = 0; row < ur; ++row) {
        target.lo[row] = std::max<Int>(0, clamp_far(static_cast<Wide>(w.lo[row]) - 2 * static_cast<Wide>(pmax[row])));
        target.hi[row] = std::min<Int>(radius, clamp_far(static_cast<Wide>(w.hi[row]) - 2 * static_cast<Wide>(pmin[row])));
      }
      const std::vector<Int> small = plan.small_rhs(i);
      const bool lazy = options.lazy_final_block && i == iterations && prev.size() == 1 && n >= 2 && !target.empty();

      if (target.empty()) {
        empty = true;
      } else if (lazy) {
        const int lazy_k = pick_lazy_block(work, small);
        SmallSubproblem sub = build_small_subproblem(work, small, mode, target, lazy_k);
        out.stats.dp_cells += sub.cells_built();
        std::vector<Int> costs(static_cast<std::size_t>(work->t[static_cast<std::size_t>(lazy_k)]), 0);
        if (mode == Mode::optimization)
          std::copy_n(work->c->begin() + static_cast<std::ptrdiff_t>(work.brick_offset(lazy_k)), costs.size(), costs.begin());
        BlockPointSolver solver(work->blocks[static_cast<std::size_t>(lazy_k)], small[static_cast<std::size_t>(lazy_k)], mode, costs);

        const auto parent = prev.point(0);
        std::vector<Int> need(ur), rem(ur);
        for (std::size_t row = 0; row < ur; ++row) need[row] = b[row] - 2 * parent[row];
        const PointTable& partial = sub.table();
        std::optional<std::size_t> best_cell;
        Int best_value = std::numeric_limits<Int>::min();
        std::vector<Int> best_rem;
        // best first, so the scan can stop once no cell can beat the incumbent
        std::vector<std::size_t> order(partial.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        Int lazy_cap = 0;
        if (mode == Mode::optimization) {
          std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return partial.value(x) > partial.value(y); });
          lazy_cap = *std::max_element(costs.begin(), costs.end()) * small[static_cast<std::size_t>(lazy_k)];
        }
        for (std::size_t cell : order) {
          if (best_cell && partial.value(cell) + lazy_cap <= best_value) break;
          const auto f = partial.point(cell);
          bool ok = true;
          for (std::size_t row = 0; row < ur; ++row) {
            rem[row] = need[row] - f[row];
            if (rem[row] < 0) ok = false;
          }
          if (!ok) continue;
          const auto v = solver.best_value(rem);
          if (!v) continue;
          const Int total = partial.value(cell) + *v;
          if (!best_cell || total > best_value) {
            best_cell = cell;
            best_value = total;
            best_rem = rem;
          }
          if (mode == Mode::feasibility) break;
        }
        if (best_cell) {
          std::vector<Int> small_x = sub.expand(*best_cell);
          const auto tail = solver.solve(best_rem);
          std::copy(tail->selection.begin(), tail->selection.end(),
                    small_x.begin() + static_cast<std::ptrdiff_t>(work.brick_offset(lazy_k)));
          level.points.offer(b, to_int(2 * static_cast<Wide>(prev.value(0)) + best_value, "objective exceeds 64-bit range"),
                             Origin{0, -1});
          level.points.seal();
          level.final_small = std::move(small_x);
        }
        empty = level.points.empty();
      } else {
        SmallSubproblem sub = build_small_subproblem(work, small, mode, target);
        out.stats.dp_cells += sub.cells_built();
        const PointTable& tilde = sub.table();
        for (std::size_t pa = 0; pa < prev.size(); ++pa) {
          const auto a = prev.point(pa);
          std::size_t from = 0, to = tilde.size();
          if (r > 0) std::tie(from, to) = tilde.first_axis_range(w.lo[0] - 2 * a[0], w.hi[0] - 2 * a[0]);
          for (std::size_t cell = from; cell < to; ++cell) {
            const auto v = tilde.point(cell);
            bool inside = true;
            for (std::size_t row = 0; row < ur; ++row) {
              p[row] = 2 * a[row] + v[row];
              if (p[row] < w.lo[row] || p[row] > w.hi[row]) {
                inside = false;
                break;
              }
            }
            if (!inside) continue;
            const Wide value = 2 * static_cast<Wide>(prev.value(pa)) + tilde.value(cell);
            level.points.offer(p, to_int(value, "objective exceeds 64-bit range"),
                               Origin{static_cast<std::int64_t>(pa), static_cast<std::int64_t>(cell)});
          }
        }
        level.points.seal();
        level.small = std::move(sub);
        empty = level.points.empty();
      }
    }

    out.stats.level_sizes.push_back(level.points.size());
    out.stats.dp_cells += level.points.size();
    if (options.trace) options.trace->levels.push_back(LevelTrace{i, level.points.points()});
    if (empty) return finish(std::move(out));
    levels.push_back(std::move(level));
  }

  const auto end = levels.back().points.find(b);
  if (!end) return finish(std::move(out));

  // x = sum_i 2^(I-i) x~^(i)
  std::vector<Wide> acc(work.h(), 0);
  std::size_t cell = *end;
  for (int i = iterations; i >= 1; --i) {
    const Level& level = levels[static_cast<std::size_t>(i)];
    const Origin& o = level.points.origin(cell);
    const std::vector<Int> small_x = level.small ? level.small->expand(static_cast<std::size_t>(o.second)) : level.final_small;
    const Wide scale = static_cast<Wide>(1) << (iterations - i);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += scale * small_x[j];
    cell = static_cast<std::size_t>(o.first);
  }
  std::vector<Int> x(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) x[j] = to_int(acc[j], "solution entry exceeds 64-bit range");

  out.status = mode == Mode::optimization ? SolveStatus::optimal : SolveStatus::feasible;
  out.solution = Solution{std::move(x), std::nullopt};
  if (mode == Mode::optimization) {
    const Int claimed = levels.back().points.value(*end);
    if (objective_value(work.get(), out.solution->x) != claimed) throw std::logic_error("reconstructed objective disagrees with the table value");
  }
  return finish(std::move(out));
}

std::optional<std::vector<Int>> reduce_solution(const ValidatedInstance& inst, std::span<const Int> x, std::span<const Int> small_rhs) {
  std::vector<Int> out(x.size(), 0);
  for (int k = 0; k < inst->n; ++k) {
    const std::size_t off = inst.brick_offset(k);
    const auto t = static_cast<std::size_t>(inst->t[static_cast<std::size_t>(k)]);
    const Int want = small_rhs[static_cast<std::size_t>(k)];
    Int used = 0;
    for (std::size_t j = off; j < off + t; ++j) {
      out[j] = x[j] % 2;
      used += out[j];
    }
    if (used > want || (want - used) % 2 != 0) return std::nullopt;
    for (std::size_t j = off; j < off + t && used < want; ++j) {
      const Int pairs = std::min((x[j] - out[j]) / 2, (want - used) / 2);
      out[j] += 2 * pairs;
      used += 2 * pairs;
    }
    if (used != want) return std::nullopt;
  }
  return out;
}

}  // namespace nfold
