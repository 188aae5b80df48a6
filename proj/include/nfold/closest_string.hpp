#pragma once

// Closest String through the column-type n-fold ILP. Columns of the input
// are grouped by their equality pattern; for each type the ILP chooses how
// many of its columns take each of the characters occurring in it.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

struct StringInstance {
  std::vector<std::string> strings;
  std::optional<Int> d;
};

/// Throws std::invalid_argument on an empty set, unequal lengths or d < 0.
void validate_strings(const StringInstance& inst);

StringInstance strings_from_json(const nlohmann::json& doc);

/// Equality pattern of a column: characters renamed by first occurrence,
/// so row j holds a canonical id in [0, symbols).
struct ColumnType {
  std::vector<int> pattern;
  int symbols = 0;
  Int count = 0;
  std::vector<std::size_t> positions;  // original column indices, ascending
};

/// Types in order of first occurrence.
std::vector<ColumnType> extract_column_types(const std::vector<std::string>& strings);

/// k global rows (one per string), one block per type plus the slack block.
NFoldInstance build_closest_string_ilp(const std::vector<ColumnType>& types, int k, Int d);

struct CenterResult {
  std::string center;
  Int d = 0;
  int probes = 0;
};

Int hamming(const std::string& a, const std::string& b);
Int max_distance(const std::string& center, const std::vector<std::string>& strings);

/// Decides radius d; the returned center is verified.
std::optional<CenterResult> decide_closest(const std::vector<std::string>& strings, Int d);

/// With d set this is the decision problem, otherwise the smallest radius
/// is found by binary search over [0, L].
std::optional<CenterResult> solve_closest(const StringInstance& inst);

nlohmann::json center_to_json(const std::optional<CenterResult>& result);

}  // namespace nfold
