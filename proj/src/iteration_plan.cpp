#include "nfold/iteration_plan.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace nfold {

namespace mp = boost::multiprecision;

namespace {

// floor(log2(v)) for v >= 1
Int floor_log2(const mp::cpp_int& v) {
  return static_cast<Int>(mp::msb(v));
}

Int checked(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw InstanceError(InstanceErrorKind::overflow, "plan quantity exceeds 64-bit range");
  return static_cast<Int>(v);
}

Int next_m(Int m, Int support, int& z, Int& tilm) {
  z = (m % 2) == (support % 2) ? 0 : 1;
  tilm = support - z;
  return (m - tilm) / 2;
}

}  // namespace

Int support_bound(int r, Int delta, Mode mode) {
  if (mode == Mode::feasibility) {
    const unsigned a = 2u * static_cast<unsigned>(r + 1);
    const mp::cpp_int x = mp::cpp_int(4) * (r + 1) * std::max<Int>(delta, 1);
    return floor_log2(mp::pow(x, a));
  }
  const unsigned a = 2u * static_cast<unsigned>(r + 2);
  const mp::cpp_int linear = mp::cpp_int(a) * (mp::cpp_int(delta) + 2);
  const mp::cpp_int total = linear + floor_log2(mp::pow(mp::cpp_int(r + 2), a));
  if (total > std::numeric_limits<Int>::max()) throw InstanceError(InstanceErrorKind::overflow, "support bound exceeds 64-bit range");
  return static_cast<Int>(total);
}

Int box_radius(Int n, Int support, Int delta) {
  return checked(static_cast<Wide>(n) * support * delta);
}

int iteration_count(Int b_low, Int support) {
  assert(support >= 1);
  if (b_low <= support) return 1;
  // smallest j with (b + K) / 2^j <= 2K
  const Wide target = static_cast<Wide>(b_low) + support;
  Wide cap = 2 * static_cast<Wide>(support);
  int j = 0;
  while (cap < target) {
    cap *= 2;
    ++j;
  }
  return j + 1;
}

BlockSchedule lower_rhs_schedule(Int b_low, Int support) {
  return lower_rhs_schedule(b_low, support, iteration_count(b_low, support));
}

BlockSchedule lower_rhs_schedule(Int b_low, Int support, int total_iterations) {
  assert(total_iterations >= 1);
  BlockSchedule s;
  const auto len = static_cast<std::size_t>(total_iterations);
  s.m.assign(len, 0);
  s.tilm.assign(len, 0);
  s.hatm.assign(len, 0);
  s.z.assign(len, 0);
  s.nonzero_iterations = iteration_count(b_low, support);

  Int m = b_low;
  for (int i = total_iterations; i >= 1; --i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    s.m[idx] = m;
    if (m <= support || i == 1) {
      // base step: everything left is small; earlier iterations stay zero
      s.tilm[idx] = m;
      s.hatm[idx] = 0;
      m = 0;
      continue;
    }
    Int tilm = 0;
    int z = 0;
    const Int next = next_m(m, support, z, tilm);
    s.z[idx] = z;
    s.tilm[idx] = tilm;
    s.hatm[idx] = m - tilm;
    m = next;
  }
  return s;
}

Int closed_form_m(Int b_low, Int support, int total_iterations, int i) {
  assert(i >= 1 && i <= total_iterations);
  Int m = b_low;  // m^(I)
  for (int level = total_iterations - 1; level >= i; --level) {
    if (m <= support) return 0;
    // m^(level) = ceil((b - K (2^s - 1)) / 2^s), s = I - level
    const int shift = total_iterations - level;
    const Wide scale = static_cast<Wide>(1) << shift;
    const Wide num = static_cast<Wide>(b_low) - static_cast<Wide>(support) * (scale - 1);
    Wide q = num / scale;
    if (num % scale != 0 && num > 0) ++q;
    m = checked(q);
  }
  return m;
}

std::vector<Int> IterationPlan::small_rhs(int i) const {
  std::vector<Int> out;
  out.reserve(blocks.size());
  for (const auto& s : blocks) out.push_back(s.tilm[static_cast<std::size_t>(i - 1)]);
  return out;
}

std::vector<Int> IterationPlan::lower_rhs(int i) const {
  std::vector<Int> out;
  out.reserve(blocks.size());
  for (const auto& s : blocks) out.push_back(s.m[static_cast<std::size_t>(i - 1)]);
  return out;
}

IterationPlan build_plan(const ValidatedInstance& vi, Mode mode) {
  const NFoldInstance& inst = vi.get();
  IterationPlan plan;
  plan.mode = mode;
  plan.delta = vi.delta();
  plan.support = support_bound(inst.r, vi.delta(), mode);
  plan.radius = box_radius(inst.n, plan.support, vi.delta());
  plan.iterations = 1;
  for (Int b : inst.b_low) {
    const int ik = iteration_count(b, plan.support);
    plan.block_iterations.push_back(ik);
    plan.iterations = std::max(plan.iterations, ik);
  }
  for (Int b : inst.b_low) plan.blocks.push_back(lower_rhs_schedule(b, plan.support, plan.iterations));
  return plan;
}

nlohmann::json plan_to_json(const IterationPlan& plan) {
  nlohmann::json doc;
  doc["mode"] = to_string(plan.mode);
  doc["K"] = plan.support;
  doc["D"] = plan.radius;
  doc["delta"] = plan.delta;
  doc["I"] = plan.iterations;
  doc["I_k"] = plan.block_iterations;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& s : plan.blocks) {
    blocks.push_back({{"m", s.m}, {"tilm", s.tilm}, {"hatm", s.hatm}, {"z", s.z}, {"I_k", s.nonzero_iterations}});
  }
  doc["blocks"] = std::move(blocks);
  return doc;
}

}  // namespace nfold
