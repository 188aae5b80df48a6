#pragma once

#include <optional>
#include <vector>

#include "nfold/core.hpp"

namespace nfold::testing {

using Rows = std::vector<std::vector<Int>>;

inline NFoldInstance make_instance(int r, const std::vector<Rows>& blocks, std::vector<Int> b_up, std::vector<Int> b_low,
                                   std::optional<std::vector<Int>> c = std::nullopt) {
  NFoldInstance inst;
  inst.n = static_cast<int>(blocks.size());
  inst.r = r;
  for (const Rows& rows : blocks) {
    const int cols = rows.empty() ? 1 : static_cast<int>(rows.front().size());
    inst.t.push_back(cols);
    inst.blocks.push_back(Block::from_rows(rows, cols));
  }
  inst.b_up = std::move(b_up);
  inst.b_low = std::move(b_low);
  inst.c = std::move(c);
  return inst;
}

}  // namespace nfold::testing
