#include "nfold/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace nfold {

namespace {

struct Brick {
  std::vector<Int> x;
  std::vector<Int> image;  // A x
  Int value = 0;
};

// stars and bars: every x >= 0 of length t with sum total
void enumerate(int t, Int total, std::vector<Int>& x, int pos, Int left, const std::function<void(const std::vector<Int>&)>& emit) {
  if (pos == t - 1) {
    x[static_cast<std::size_t>(pos)] = left;
    emit(x);
    return;
  }
  for (Int v = left; v >= 0; --v) {
    x[static_cast<std::size_t>(pos)] = v;
    enumerate(t, total, x, pos + 1, left - v, emit);
  }
}

// One representative per image, keeping the best value (first seen on ties).
std::vector<Brick> brick_images(const Block& block, Int total, std::span<const Int> costs, OracleBudget& budget) {
  std::map<std::vector<Int>, Brick> best;
  std::vector<Int> x(static_cast<std::size_t>(block.cols()), 0);
  enumerate(block.cols(), total, x, 0, total, [&](const std::vector<Int>& v) {
    budget.charge(1);
    Brick b{v, std::vector<Int>(static_cast<std::size_t>(block.rows()), 0), 0};
    for (int i = 0; i < block.rows(); ++i)
      for (int j = 0; j < block.cols(); ++j) b.image[static_cast<std::size_t>(i)] += block.at(i, j) * v[static_cast<std::size_t>(j)];
    for (std::size_t j = 0; j < costs.size(); ++j) b.value += costs[j] * v[j];
    auto it = best.find(b.image);
    if (it == best.end()) best.emplace(b.image, std::move(b));
    else if (b.value > it->second.value) it->second = std::move(b);
  });
  std::vector<Brick> out;
  out.reserve(best.size());
  for (auto& [image, brick] : best) out.push_back(std::move(brick));
  return out;
}

struct Partial {
  Int value = 0;
  std::vector<std::size_t> picks;  // index into each brick list
};

std::map<std::vector<Int>, Partial> combine(const std::vector<std::vector<Brick>>& bricks, int r, OracleBudget& budget) {
  std::map<std::vector<Int>, Partial> acc;
  acc.emplace(std::vector<Int>(static_cast<std::size_t>(r), 0), Partial{});
  for (const auto& options : bricks) {
    std::map<std::vector<Int>, Partial> next;
    for (const auto& [point, partial] : acc) {
      for (std::size_t idx = 0; idx < options.size(); ++idx) {
        budget.charge(1);
        std::vector<Int> sum = point;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += options[idx].image[i];
        const Int value = partial.value + options[idx].value;
        auto it = next.find(sum);
        if (it == next.end() || value > it->second.value) {
          Partial p{value, partial.picks};
          p.picks.push_back(idx);
          next[sum] = std::move(p);
        }
      }
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

void OracleBudget::charge(std::uint64_t amount) {
  used += amount;
  if (used > limit) {
    exceeded = true;
    throw BudgetExceeded("oracle budget of " + std::to_string(limit) + " evaluations exceeded");
  }
}

SolveOutcome oracle_solve(const NFoldInstance& inst, Mode mode, OracleBudget* budget) {
  OracleBudget local;
  OracleBudget& bud = budget ? *budget : local;
  Stopwatch watch;
  SolveOutcome out;
  if (mode == Mode::optimization && !inst.c) throw InstanceError(InstanceErrorKind::objective_missing, "oracle optimization requires c");
  if (std::any_of(inst.b_low.begin(), inst.b_low.end(), [](Int v) { return v < 0; })) return out;

  std::vector<std::vector<Brick>> bricks;
  std::size_t off = 0;
  for (int k = 0; k < inst.n; ++k) {
    const Block& block = inst.blocks[static_cast<std::size_t>(k)];
    std::vector<Int> costs;
    if (mode == Mode::optimization) costs.assign(inst.c->begin() + static_cast<std::ptrdiff_t>(off), inst.c->begin() + static_cast<std::ptrdiff_t>(off) + block.cols());
    bricks.push_back(brick_images(block, inst.b_low[static_cast<std::size_t>(k)], costs, bud));
    off += static_cast<std::size_t>(block.cols());
  }
  const auto acc = combine(bricks, inst.r, bud);
  const auto it = acc.find(inst.b_up);
  out.stats.wall_ms = watch.elapsed_ms();
  if (it == acc.end()) return out;

  Solution sol;
  for (std::size_t k = 0; k < bricks.size(); ++k) {
    const auto& x = bricks[k][it->second.picks[k]].x;
    sol.x.insert(sol.x.end(), x.begin(), x.end());
  }
  sol.objective = objective_value(inst, sol.x);
  out.status = mode == Mode::optimization ? SolveStatus::optimal : SolveStatus::feasible;
  out.solution = std::move(sol);
  return out;
}

std::map<std::vector<Int>, Int> oracle_point_values(std::span<const Block> blocks, std::span<const Int> small_rhs,
                                                    std::span<const std::vector<Int>> costs, Int cap, OracleBudget* budget) {
  OracleBudget local;
  OracleBudget& bud = budget ? *budget : local;
  std::vector<std::vector<Brick>> bricks;
  const int r = blocks.empty() ? 0 : blocks[0].rows();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::span<const Int> c = k < costs.size() ? std::span<const Int>(costs[k]) : std::span<const Int>();
    bricks.push_back(brick_images(blocks[k], small_rhs[k], c, bud));
  }
  std::map<std::vector<Int>, Int> out;
  for (const auto& [point, partial] : combine(bricks, r, bud))
    if (std::all_of(point.begin(), point.end(), [&](Int v) { return v <= cap; })) out.emplace(point, partial.value);
  return out;
}

std::set<std::vector<Int>> oracle_point_set(std::span<const Block> blocks, std::span<const Int> small_rhs, Int cap, OracleBudget* budget) {
  std::set<std::vector<Int>> out;
  for (const auto& [point, value] : oracle_point_values(blocks, small_rhs, {}, cap, budget)) out.insert(point);
  return out;
}

}  // namespace nfold
