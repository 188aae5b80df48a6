#include "nfold/imbalance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nfold/driver.hpp"

namespace nfold {

void validate_graph(const Graph& g) {
  if (g.n < 0) throw std::invalid_argument("n must be non-negative");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw std::invalid_argument("repeated edge");
  }
}

Graph graph_from_json(const nlohmann::json& doc) {
  for (const char* key : {"n", "edges"})
    if (!doc.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
  Graph g;
  g.n = doc.at("n").get<int>();
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges must be pairs");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  validate_graph(g);
  return g;
}

std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (auto [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

Int imbalance_of(const Graph& g, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(g.n), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<Int> balance(static_cast<std::size_t>(g.n), 0);
  for (auto [u, v] : g.edges) {
    const bool u_first = pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)];
    balance[static_cast<std::size_t>(u)] += u_first ? -1 : 1;
    balance[static_cast<std::size_t>(v)] += u_first ? 1 : -1;
  }
  Int total = 0;
  for (Int b : balance) total += b < 0 ? -b : b;
  return total;
}

namespace {

bool cover_search(const Graph& g, std::vector<bool>& in, int budget, std::vector<int>& chosen) {
  for (auto [u, v] : g.edges) {
    if (in[static_cast<std::size_t>(u)] || in[static_cast<std::size_t>(v)]) continue;
    if (budget == 0) return false;
    for (int w : {u, v}) {
      in[static_cast<std::size_t>(w)] = true;
      chosen.push_back(w);
      if (cover_search(g, in, budget - 1, chosen)) return true;
      chosen.pop_back();
      in[static_cast<std::size_t>(w)] = false;
    }
    return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<int>> vertex_cover(const Graph& g, int k_max) {
  for (int k = 0; k <= k_max; ++k) {
    std::vector<bool> in(static_cast<std::size_t>(g.n), false);
    std::vector<int> chosen;
    if (cover_search(g, in, k, chosen)) {
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return std::nullopt;
}

OrderingData ordering_data(const Graph& g, const std::vector<int>& cover) {
  OrderingData data;
  data.cover = cover;
  const auto adj = adjacency(g);
  std::vector<int> index(static_cast<std::size_t>(g.n), -1);
  for (std::size_t i = 0; i < cover.size(); ++i) index[static_cast<std::size_t>(cover[i])] = static_cast<int>(i);

  std::map<unsigned, std::size_t> type_of;
  for (int v = 0; v < g.n; ++v) {
    if (index[static_cast<std::size_t>(v)] >= 0) continue;
    unsigned mask = 0;
    for (int w : adj[static_cast<std::size_t>(v)]) mask |= 1u << index[static_cast<std::size_t>(w)];
    auto [it, fresh] = type_of.emplace(mask, data.types.size());
    if (fresh) {
      data.types.push_back(mask);
      data.members.emplace_back();
    }
    data.members[it->second].push_back(v);
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Int offset = 0;
    for (int w : adj[static_cast<std::size_t>(cover[i])]) {
      const int j = index[static_cast<std::size_t>(w)];
      if (j < 0) continue;
      offset += j < static_cast<int>(i) ? 1 : -1;
    }
    data.cover_offset.push_back(offset);
  }
  return data;
}

Int slot_cost(unsigned type, int k, int slot) {
  Int left = 0;
  Int right = 0;
  for (int i = 0; i < k; ++i)
    if (type >> i & 1u) (i < slot ? left : right) += 1;
  return left > right ? left - right : right - left;
}

NFoldInstance build_ordering_ilp(const OrderingData& data, int n) {
  const int k = static_cast<int>(data.cover.size());
  NFoldInstance inst;
  inst.r = 2 * k;
  inst.b_up.assign(static_cast<std::size_t>(2 * k), 0);
  for (int i = 0; i < k; ++i) {
    inst.b_up[static_cast<std::size_t>(i)] = -data.cover_offset[static_cast<std::size_t>(i)];
    inst.b_up[static_cast<std::size_t>(k + i)] = data.cover_offset[static_cast<std::size_t>(i)];
  }
  std::vector<Int> costs;

  // type blocks: column `slot` places a vertex after the first `slot` cover vertices
  for (std::size_t f = 0; f < data.types.size(); ++f) {
    Block block(2 * k, k + 1);
    for (int slot = 0; slot <= k; ++slot)
      for (int i = 0; i < k; ++i) {
        if (!(data.types[f] >> i & 1u)) continue;
        const Int sign = slot <= i ? 1 : -1;
        block.at(i, slot) = sign;
        block.at(k + i, slot) = -sign;
      }
    Int top = 0;
    for (int slot = 0; slot <= k; ++slot) top = std::max(top, slot_cost(data.types[f], k, slot));
    for (int slot = 0; slot <= k; ++slot) costs.push_back(top - slot_cost(data.types[f], k, slot));
    inst.blocks.push_back(std::move(block));
    inst.t.push_back(k + 1);
    inst.b_low.push_back(static_cast<Int>(data.members[f].size()));
  }

  // y block: y_i bounds the imbalance of cover vertex i; the last column absorbs the rest
  Block y(2 * k, k + 1);
  for (int i = 0; i < k; ++i) {
    y.at(i, i) = -1;
    y.at(k + i, i) = -1;
    costs.push_back(0);
  }
  costs.push_back(1);
  inst.blocks.push_back(std::move(y));
  inst.t.push_back(k + 1);
  inst.b_low.push_back(static_cast<Int>(k) * (n - 1));

  Block slack(2 * k, 2 * k + 1);
  for (int i = 0; i < 2 * k; ++i) {
    slack.at(i, i) = 1;
    costs.push_back(0);
  }
  costs.push_back(0);
  inst.blocks.push_back(std::move(slack));
  inst.t.push_back(2 * k + 1);
  inst.b_low.push_back(2 * static_cast<Int>(k) * (n - 1));

  inst.n = static_cast<int>(inst.blocks.size());
  inst.c = std::move(costs);
  return inst;
}

OrderingResult solve_ordering(const Graph& g, const OrderingData& data) {
  const int k = static_cast<int>(data.cover.size());
  if (k == 0) {
    OrderingResult result;
    for (int v = 0; v < g.n; ++v) result.order.push_back(v);
    return result;
  }
  const ValidatedInstance vi = validate(build_ordering_ilp(data, g.n));
  const SolveOutcome out = solve(vi, Mode::optimization);
  if (!out.solution) throw std::logic_error("ordering ILP reported infeasible");
  const auto& x = out.solution->x;

  std::vector<std::vector<int>> slots(static_cast<std::size_t>(k + 1));
  for (std::size_t f = 0; f < data.types.size(); ++f) {
    const std::size_t off = vi.brick_offset(static_cast<int>(f));
    std::size_t next = 0;
    for (int slot = 0; slot <= k; ++slot)
      for (Int copies = 0; copies < x[off + static_cast<std::size_t>(slot)]; ++copies)
        slots[static_cast<std::size_t>(slot)].push_back(data.members[f][next++]);
  }
  OrderingResult result;
  for (int slot = 0; slot <= k; ++slot) {
    auto& vs = slots[static_cast<std::size_t>(slot)];
    std::sort(vs.begin(), vs.end());
    result.order.insert(result.order.end(), vs.begin(), vs.end());
    if (slot < k) result.order.push_back(data.cover[static_cast<std::size_t>(slot)]);
  }

  // native cost = sum y + sum slot costs; undo the per-block shift
  const std::size_t yoff = vi.brick_offset(static_cast<int>(data.types.size()));
  Int native = 0;
  for (int i = 0; i < k; ++i) native += x[yoff + static_cast<std::size_t>(i)];
  for (std::size_t f = 0; f < data.types.size(); ++f) {
    const std::size_t off = vi.brick_offset(static_cast<int>(f));
    for (int slot = 0; slot <= k; ++slot) native += slot_cost(data.types[f], k, slot) * x[off + static_cast<std::size_t>(slot)];
  }
  result.imbalance = imbalance_of(g, result.order);
  if (result.imbalance != native) throw std::logic_error("decoded ordering disagrees with the ILP optimum");
  return result;
}

OrderingResult solve_imbalance(const Graph& g, const ImbalanceOptions& options) {
  validate_graph(g);
  const auto cover = vertex_cover(g, std::max(options.max_cover, 0));
  if (!cover) throw std::invalid_argument("vertex cover exceeds the configured limit of " + std::to_string(options.max_cover));
  std::vector<int> perm = *cover;
  std::optional<OrderingResult> best;
  do {
    // a reversed cover order gives the mirrored vertex order, same imbalance
    if (perm.size() >= 2 && perm.front() > perm.back()) continue;
    OrderingResult r = solve_ordering(g, ordering_data(g, perm));
    if (!best || r.imbalance < best->imbalance) best = std::move(r);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

nlohmann::json ordering_to_json(const OrderingResult& result) {
  return {{"ordering", result.order}, {"imbalance", result.imbalance}};
}

}  // namespace nfold
