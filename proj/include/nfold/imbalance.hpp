#pragma once

// Graph Imbalance parameterized by vertex cover. For each ordering of a
// minimum cover C the remaining (independent) vertices are grouped by
// their neighborhood in C and distributed over the k+1 slots between cover
// vertices by an n-fold ILP.

#include <optional>
#include <vector>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Throws std::invalid_argument on out-of-range endpoints, loops or
/// repeated edges.
void validate_graph(const Graph& g);

Graph graph_from_json(const nlohmann::json& doc);

std::vector<std::vector<int>> adjacency(const Graph& g);

/// Imbalance of `order` (a permutation of the vertices).
Int imbalance_of(const Graph& g, const std::vector<int>& order);

/// Smallest vertex cover of size at most k_max, ascending, or nullopt.
std::optional<std::vector<int>> vertex_cover(const Graph& g, int k_max);

/// ILP data for one ordering of the cover.
struct OrderingData {
  std::vector<int> cover;                 // c_1..c_k in order
  std::vector<unsigned> types;            // neighborhood masks over cover positions
  std::vector<std::vector<int>> members;  // independent vertices per type, ascending
  std::vector<Int> cover_offset;          // left minus right cover neighbors
};

OrderingData ordering_data(const Graph& g, const std::vector<int>& cover);

/// Imbalance of one independent vertex of `type` placed in `slot`.
Int slot_cost(unsigned type, int k, int slot);

/// 2k global rows; one block per type, then the y block, then the slack
/// block. Costs are shifted per block so the core can maximize.
NFoldInstance build_ordering_ilp(const OrderingData& data, int n);

struct OrderingResult {
  std::vector<int> order;
  Int imbalance = 0;
};

/// Best vertex ordering that keeps the cover in the given order.
OrderingResult solve_ordering(const Graph& g, const OrderingData& data);

struct ImbalanceOptions {
  int max_cover = 6;
};

/// Minimum over all orderings of a minimum cover. Throws
/// std::invalid_argument when the cover exceeds max_cover.
OrderingResult solve_imbalance(const Graph& g, const ImbalanceOptions& options = {});

nlohmann::json ordering_to_json(const OrderingResult& result);

}  // namespace nfold
