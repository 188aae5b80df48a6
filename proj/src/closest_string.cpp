#include "nfold/closest_string.hpp"

#include <map>
#include <stdexcept>

#include "nfold/driver.hpp"

namespace nfold {

void validate_strings(const StringInstance& inst) {
  if (inst.strings.empty()) throw std::invalid_argument("at least one string is required");
  for (const auto& s : inst.strings)
    if (s.size() != inst.strings[0].size()) throw std::invalid_argument("strings must have equal length");
  if (inst.d && *inst.d < 0) throw std::invalid_argument("d must be non-negative");
}

StringInstance strings_from_json(const nlohmann::json& doc) {
  if (!doc.contains("strings")) throw std::invalid_argument("missing field strings");
  StringInstance inst;
  inst.strings = doc.at("strings").get<std::vector<std::string>>();
  if (doc.contains("d") && !doc.at("d").is_null()) inst.d = doc.at("d").get<Int>();
  validate_strings(inst);
  return inst;
}

std::vector<ColumnType> extract_column_types(const std::vector<std::string>& strings) {
  std::vector<ColumnType> types;
  std::map<std::vector<int>, std::size_t> index;
  const std::size_t len = strings.empty() ? 0 : strings[0].size();
  for (std::size_t col = 0; col < len; ++col) {
    std::vector<int> pattern;
    std::vector<char> seen;
    for (const auto& s : strings) {
      std::size_t id = 0;
      while (id < seen.size() && seen[id] != s[col]) ++id;
      if (id == seen.size()) seen.push_back(s[col]);
      pattern.push_back(static_cast<int>(id));
    }
    auto [it, fresh] = index.emplace(pattern, types.size());
    if (fresh) types.push_back(ColumnType{pattern, static_cast<int>(seen.size()), 0, {}});
    ColumnType& type = types[it->second];
    ++type.count;
    type.positions.push_back(col);
  }
  return types;
}

NFoldInstance build_closest_string_ilp(const std::vector<ColumnType>& types, int k, Int d) {
  NFoldInstance inst;
  inst.r = k;
  inst.b_up.assign(static_cast<std::size_t>(k), d);
  for (const ColumnType& type : types) {
    Block block(k, type.symbols);
    for (int row = 0; row < k; ++row)
      for (int e = 0; e < type.symbols; ++e) block.at(row, e) = type.pattern[static_cast<std::size_t>(row)] != e ? 1 : 0;
    inst.blocks.push_back(std::move(block));
    inst.t.push_back(type.symbols);
    inst.b_low.push_back(type.count);
  }
  Block slack(k, k + 1);
  for (int row = 0; row < k; ++row) slack.at(row, row) = 1;
  inst.blocks.push_back(std::move(slack));
  inst.t.push_back(k + 1);
  inst.b_low.push_back(d * k);
  inst.n = static_cast<int>(inst.blocks.size());
  return inst;
}

Int hamming(const std::string& a, const std::string& b) {
  Int out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] != b[i] ? 1 : 0;
  return out;
}

Int max_distance(const std::string& center, const std::vector<std::string>& strings) {
  Int out = 0;
  for (const auto& s : strings) out = std::max(out, hamming(center, s));
  return out;
}

std::optional<CenterResult> decide_closest(const std::vector<std::string>& strings, Int d) {
  const auto types = extract_column_types(strings);
  const int k = static_cast<int>(strings.size());
  const ValidatedInstance vi = validate(build_closest_string_ilp(types, k, d));
  const SolveOutcome out = solve(vi, Mode::feasibility);
  if (!out.solution) return std::nullopt;

  std::string center(strings[0].size(), '\0');
  const auto& x = out.solution->x;
  for (std::size_t f = 0; f < types.size(); ++f) {
    const ColumnType& type = types[f];
    const std::size_t off = vi.brick_offset(static_cast<int>(f));
    std::size_t next = 0;
    for (int e = 0; e < type.symbols; ++e) {
      int row = 0;
      while (type.pattern[static_cast<std::size_t>(row)] != e) ++row;
      for (Int copies = 0; copies < x[off + static_cast<std::size_t>(e)]; ++copies) {
        const std::size_t col = type.positions[next++];
        center[col] = strings[static_cast<std::size_t>(row)][col];
      }
    }
  }
  if (max_distance(center, strings) > d) throw std::logic_error("decoded center exceeds the radius");
  return CenterResult{center, d, 1};
}

std::optional<CenterResult> solve_closest(const StringInstance& inst) {
  validate_strings(inst);
  if (inst.d) return decide_closest(inst.strings, *inst.d);

  Int lo = 0;
  Int hi = static_cast<Int>(inst.strings[0].size());
  int probes = 0;
  std::optional<CenterResult> best = decide_closest(inst.strings, hi);
  ++probes;
  while (lo < hi) {
    const Int mid = lo + (hi - lo) / 2;
    ++probes;
    if (auto r = decide_closest(inst.strings, mid)) {
      best = std::move(r);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  best->d = max_distance(best->center, inst.strings);
  best->probes = probes;
  return best;
}

nlohmann::json center_to_json(const std::optional<CenterResult>& result) {
  if (!result) return {{"status", "infeasible"}};
  return {{"status", "feasible"}, {"center", result->center}, {"d", result->d}, {"probes", result->probes}};
}

}  // namespace nfold
