#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/dp_engine.hpp"
#include "nfold/oracle.hpp"

using namespace nfold;
using nfold::testing::make_instance;

namespace {

std::set<std::vector<Int>> as_set(const PointTable& t) {
  const auto pts = t.points();
  return {pts.begin(), pts.end()};
}

PointTable table_of(int dim, const std::vector<std::pair<std::vector<Int>, Int>>& cells) {
  PointTable t(dim);
  for (const auto& [p, v] : cells) t.offer(p, v, Origin{});
  t.seal();
  return t;
}

}  // namespace

TEST_CASE("base table of [[1,2]] with two items") {
  const Block a = Block::from_rows({{1, 2}}, 2);
  const auto bt = block_base_table(a, 2, 12, 2, Mode::feasibility, {});
  CHECK(as_set(bt.cells) == std::set<std::vector<Int>>{{2}, {3}, {4}});
  for (std::size_t cell = 0; cell < bt.cells.size(); ++cell) {
    const auto sel = bt.selection(cell);
    CHECK(sel[0] + sel[1] == 2);
    CHECK(sel[0] + 2 * sel[1] == bt.cells.point(cell)[0]);
  }
}

TEST_CASE("base table with zero items") {
  const Block a = Block::from_rows({{1, 2}}, 2);
  const auto bt = block_base_table(a, 0, 12, 2, Mode::feasibility, {});
  REQUIRE(bt.cells.size() == 1);
  CHECK(bt.cells.point(0)[0] == 0);
  CHECK(bt.selection(0)[0] == 0);
}

TEST_CASE("base table values in optimization mode") {
  const Block a = Block::from_rows({{1, 2}}, 2);
  const std::vector<Int> costs{0, 1};
  const auto bt = block_base_table(a, 2, 27, 2, Mode::optimization, costs);
  CHECK(bt.cells.value(*bt.cells.find(std::vector<Int>{3})) == 1);
  CHECK(bt.cells.value(*bt.cells.find(std::vector<Int>{4})) == 2);
  CHECK(bt.cells.value(*bt.cells.find(std::vector<Int>{2})) == 0);
}

TEST_CASE("convolution examples") {
  const auto a = table_of(1, {{{0}, 0}, {{1}, 0}});
  const auto b = table_of(1, {{{2}, 0}});
  CHECK(as_set(convolve(a, b, 10)) == std::set<std::vector<Int>>{{2}, {3}});

  const auto zero = table_of(1, {{{0}, 0}});
  CHECK(as_set(convolve(a, zero, 10)) == as_set(a));

  const auto va = table_of(1, {{{0}, 0}, {{1}, 5}});
  const auto vb = table_of(1, {{{2}, 1}});
  const auto vc = convolve(va, vb, 10);
  CHECK(vc.value(*vc.find(std::vector<Int>{2})) == 1);
  CHECK(vc.value(*vc.find(std::vector<Int>{3})) == 6);

  CHECK(as_set(convolve(a, b, 2)) == std::set<std::vector<Int>>{{2}});
}

TEST_CASE("convolution is commutative and associative on point sets") {
  std::mt19937_64 rng(9);
  auto random_table = [&] {
    PointTable t(2);
    const int cells = static_cast<int>(rng() % 6) + 1;
    for (int c = 0; c < cells; ++c) t.offer(std::vector<Int>{Int(rng() % 5), Int(rng() % 5)}, 0, Origin{});
    t.seal();
    return t;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_table(), b = random_table(), c = random_table();
    CHECK(as_set(convolve(a, b, 100)) == as_set(convolve(b, a, 100)));
    CHECK(as_set(convolve(convolve(a, b, 100), c, 100)) == as_set(convolve(a, convolve(b, c, 100), 100)));
  }
}

TEST_CASE("small subproblem of two blocks") {
  const auto vi = validate(make_instance(1, {{{1, 2}}, {{0, 1}}}, {4}, {2, 1}));
  const std::vector<Int> small{2, 1};
  const auto sub = build_small_subproblem(vi, small, Mode::feasibility, AxisBox::cube(1, 0, 24));
  CHECK(as_set(sub.table()) == std::set<std::vector<Int>>{{2}, {3}, {4}, {5}});
  for (std::size_t cell = 0; cell < sub.table().size(); ++cell) {
    const auto x = sub.expand(cell);
    CHECK(x[0] + x[1] == 2);
    CHECK(x[2] + x[3] == 1);
    CHECK(x[0] + 2 * x[1] + x[3] == sub.table().point(cell)[0]);
  }
}

TEST_CASE("small subproblem with zero demand") {
  const auto vi = validate(make_instance(1, {{{1, 2}}, {{0, 1}}}, {4}, {0, 0}));
  const std::vector<Int> small{0, 0};
  const auto sub = build_small_subproblem(vi, small, Mode::feasibility, AxisBox::cube(1, 0, 24));
  CHECK(as_set(sub.table()) == std::set<std::vector<Int>>{{0}});
}

TEST_CASE("small subproblem sets match the oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int r = 1 + static_cast<int>(rng() % 2);
    auto inst = make_instance(r, {}, std::vector<Int>(static_cast<std::size_t>(r), 0), {});
    std::vector<Int> small;
    std::vector<std::vector<Int>> costs;
    std::vector<Int> c;
    for (int k = 0; k < n; ++k) {
      const int t = 1 + static_cast<int>(rng() % 3);
      Block b(r, t);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < t; ++j) b.at(i, j) = static_cast<Int>(rng() % 3);
      inst.blocks.push_back(b);
      inst.t.push_back(t);
      inst.b_low.push_back(6);
      small.push_back(static_cast<Int>(rng() % 7));
      costs.emplace_back();
      for (int j = 0; j < t; ++j) {
        costs.back().push_back(static_cast<Int>(rng() % 6));
        c.push_back(costs.back().back());
      }
    }
    inst.n = n;
    inst.c = c;
    const auto vi = validate(inst);
    const Int cap = static_cast<Int>(rng() % 20) + 3;

    const auto feas = build_small_subproblem(vi, small, Mode::feasibility, AxisBox::cube(r, 0, cap));
    CHECK(as_set(feas.table()) == oracle_point_set(inst.blocks, small, cap));

    const auto opt = build_small_subproblem(vi, small, Mode::optimization, AxisBox::cube(r, 0, cap));
    const auto expect = oracle_point_values(inst.blocks, small, costs, cap);
    REQUIRE(opt.table().size() == expect.size());
    for (std::size_t cell = 0; cell < opt.table().size(); ++cell) {
      const auto p = opt.table().point(cell);
      const std::vector<Int> key(p.begin(), p.end());
      CHECK(opt.table().value(cell) == expect.at(key));
      const auto x = opt.expand(cell);
      CHECK(*objective_value(inst, x) == opt.table().value(cell));
    }
  }
}

TEST_CASE("point solver agrees with the base table") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const int t = 1 + static_cast<int>(rng() % 5);
    Block b(r, t);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < t; ++j) b.at(i, j) = static_cast<Int>(rng() % 3);
    std::vector<Int> costs;
    for (int j = 0; j < t; ++j) costs.push_back(static_cast<Int>(rng() % 5));
    const Int items = static_cast<Int>(rng() % 9);
    const auto table = block_base_table(b, items, Mode::optimization, costs, AxisBox::cube(r, 0, 100));
    BlockPointSolver solver(b, items, Mode::optimization, costs);
    BlockPointSolver feasible(b, items, Mode::feasibility, {});
    for (Int probe = 0; probe < 40; ++probe) {
      std::vector<Int> target;
      for (int i = 0; i < r; ++i) target.push_back(static_cast<Int>(rng() % (2 * items + 2)));
      const auto cell = table.cells.find(target);
      const auto got = solver.solve(target);
      REQUIRE(cell.has_value() == got.has_value());
      CHECK(feasible.best_value(target).has_value() == cell.has_value());
      if (!got) continue;
      CHECK(got->value == table.cells.value(*cell));
      Int used = 0, value = 0;
      std::vector<Int> image(static_cast<std::size_t>(r), 0);
      for (int j = 0; j < t; ++j) {
        used += got->selection[static_cast<std::size_t>(j)];
        value += costs[static_cast<std::size_t>(j)] * got->selection[static_cast<std::size_t>(j)];
        for (int i = 0; i < r; ++i) image[static_cast<std::size_t>(i)] += b.at(i, j) * got->selection[static_cast<std::size_t>(j)];
      }
      CHECK(used == items);
      CHECK(value == got->value);
      CHECK(image == target);
    }
  }
}
