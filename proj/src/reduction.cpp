#include "nfold/reduction.hpp"

#include <limits>

namespace nfold {

ReducedInstance reduce(const ValidatedInstance& vi) {
  const NFoldInstance& src = vi.get();
  const Int shift = vi.delta();
  NFoldInstance out = src;
  for (Block& b : out.blocks)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) b.at(i, j) += shift;

  Wide norm = 0;
  for (Int v : src.b_low) norm += v;
  for (Int& v : out.b_up) {
    const Wide shifted = static_cast<Wide>(v) + norm * shift;
    if (shifted > std::numeric_limits<Int>::max() || shifted < std::numeric_limits<Int>::min())
      throw InstanceError(InstanceErrorKind::overflow, "shifted b_up exceeds 64-bit range");
    v = static_cast<Int>(shifted);
  }
  return ReducedInstance{validate(std::move(out)), shift};
}

Solution map_back(const ValidatedInstance& original, const Solution& reduced_solution) {
  Solution s{reduced_solution.x, std::nullopt};
  s.objective = objective_value(original.get(), s.x);
  return s;
}

}  // namespace nfold
