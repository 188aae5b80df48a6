#include "nfold/generators.hpp"

namespace nfold {

namespace {

Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

}  // namespace

NFoldInstance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params) {
  NFoldInstance inst;
  inst.n = static_cast<int>(uniform(rng, 1, params.max_n));
  inst.r = static_cast<int>(uniform(rng, params.min_r, params.max_r));
  std::vector<Int> planted;
  inst.b_up.assign(static_cast<std::size_t>(inst.r), 0);
  for (int k = 0; k < inst.n; ++k) {
    const int t = static_cast<int>(uniform(rng, 1, params.max_t));
    Block block(inst.r, t);
    for (int i = 0; i < inst.r; ++i)
      for (int j = 0; j < t; ++j) block.at(i, j) = uniform(rng, params.min_entry, params.max_entry);
    const Int b_low = uniform(rng, 0, params.max_b_low);

    // random composition of b_low into t parts
    std::vector<Int> x(static_cast<std::size_t>(t), 0);
    for (Int unit = 0; unit < b_low; ++unit) ++x[static_cast<std::size_t>(uniform(rng, 0, t - 1))];
    for (int i = 0; i < inst.r; ++i)
      for (int j = 0; j < t; ++j) inst.b_up[static_cast<std::size_t>(i)] += block.at(i, j) * x[static_cast<std::size_t>(j)];

    inst.t.push_back(t);
    inst.blocks.push_back(std::move(block));
    inst.b_low.push_back(b_low);
  }
  if (std::bernoulli_distribution(params.planted)(rng) == false)
    for (Int& v : inst.b_up) v += uniform(rng, -3, 3);
  if (params.with_objective) {
    std::vector<Int> c;
    for (int t : inst.t)
      for (int j = 0; j < t; ++j) c.push_back(uniform(rng, 0, params.max_cost));
    inst.c = std::move(c);
  }
  return inst;
}

NFoldInstance random_feasible_instance(std::mt19937_64& rng, RandomInstanceParams params) {
  params.planted = 1.0;
  return random_instance(rng, params);
}

}  // namespace nfold
