#include "nfold/scheduling.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "nfold/driver.hpp"

namespace nfold {

namespace {

constexpr std::size_t kConfigLimit = 200000;

Int ceil_ratio(Int s, Ratio t) { return static_cast<Int>((static_cast<Wide>(s) * t.num + t.den - 1) / t.den); }
Int floor_ratio(Int s, Ratio t) { return static_cast<Int>(static_cast<Wide>(s) * t.num / t.den); }

// Merged view of an instance for one guess.
struct GuessData {
  SchedObjective objective;
  Int sign = -1;                // dummy job size
  std::vector<Int> sizes;       // distinct processing times, ascending
  std::vector<Int> counts;      // jobs per size
  std::vector<std::vector<int>> jobs_of;  // job ids per size
  std::vector<Int> target;      // guessed load per machine
  Int dummies = 0;
  Int pmax = 0;
  Int jobs = 0;
};

// Configuration blocks grouped by machines sharing the same column set.
struct ClassBlock {
  std::vector<int> machines;
  std::vector<std::vector<Int>> configs;  // length d+1, last entry = dummies
};

void enumerate(const std::vector<Int>& sizes, const std::vector<Int>& cap, Int load_hi, std::vector<Int>& c, std::size_t j, Int load,
               const std::function<void(const std::vector<Int>&, Int)>& emit) {
  if (j == sizes.size()) {
    emit(c, load);
    return;
  }
  for (Int v = 0; v <= cap[j] && load + v * sizes[j] <= load_hi; ++v) {
    c[j] = v;
    enumerate(sizes, cap, load_hi, c, j + 1, load + v * sizes[j], emit);
  }
  c[j] = 0;
}

// Exact-fill configurations for a machine with guessed load t: real load L
// plus sign * dummies equals t, with at most `dummy_cap` dummies.
std::vector<std::vector<Int>> fill_configs(const GuessData& g, const std::vector<Int>& cap, Int t, Int dummy_cap) {
  std::vector<std::vector<Int>> out;
  const Int hi = g.sign < 0 ? t + dummy_cap : t;
  const Int lo = g.sign < 0 ? t : t - dummy_cap;
  std::vector<Int> c(g.sizes.size(), 0);
  enumerate(g.sizes, cap, hi, c, 0, 0, [&](const std::vector<Int>& v, Int load) {
    if (load < lo) return;
    std::vector<Int> col = v;
    col.push_back(g.sign < 0 ? load - t : t - load);
    out.push_back(std::move(col));
    if (out.size() > kConfigLimit) throw std::runtime_error("configuration count exceeds the supported size");
  });
  return out;
}

// Parity configurations for big machines: fewer than a copies per size, no
// pivot jobs, load congruent to t mod a and at most t.
std::vector<std::vector<Int>> parity_configs(const GuessData& g, const std::vector<Int>& cap, Int a, Int t) {
  std::vector<Int> limited(g.sizes.size());
  for (std::size_t j = 0; j < g.sizes.size(); ++j) limited[j] = g.sizes[j] == a ? 0 : std::min(cap[j], a - 1);
  const Int dummy_cap = std::min(a - 1, g.dummies);
  const Int residue = ((t % a) + a) % a;
  std::vector<std::vector<Int>> out;
  std::vector<Int> c(g.sizes.size(), 0);
  enumerate(g.sizes, limited, t + dummy_cap, c, 0, 0, [&](const std::vector<Int>& v, Int real) {
    for (Int dummy = 0; dummy <= dummy_cap; ++dummy) {
      const Int load = real + g.sign * dummy;
      if (load > t || ((load % a) + a) % a != residue) continue;
      std::vector<Int> col = v;
      col.push_back(dummy);
      out.push_back(std::move(col));
    }
    if (out.size() > kConfigLimit) throw std::runtime_error("configuration count exceeds the supported size");
  });
  return out;
}

struct Placement {
  std::vector<std::vector<Int>> per_machine;  // counts per size, last = dummies
};

// Builds and solves the configuration ILP. Returns per-machine counts and
// the slack vector (empty when there is no slack block).
std::optional<std::pair<Placement, std::vector<Int>>> solve_config_ilp(const GuessData& g, const std::vector<ClassBlock>& classes,
                                                                        const std::vector<Int>& rhs, std::optional<Int> pivot) {
  const int d = static_cast<int>(g.sizes.size());
  NFoldInstance inst;
  inst.r = d + 1;
  inst.b_up = rhs;
  for (const ClassBlock& cls : classes) {
    if (cls.configs.empty()) return std::nullopt;
    Block block(d + 1, static_cast<int>(cls.configs.size()));
    for (std::size_t col = 0; col < cls.configs.size(); ++col)
      for (int row = 0; row <= d; ++row) block.at(row, static_cast<int>(col)) = cls.configs[col][static_cast<std::size_t>(row)];
    inst.blocks.push_back(std::move(block));
    inst.t.push_back(static_cast<int>(cls.configs.size()));
    inst.b_low.push_back(static_cast<Int>(cls.machines.size()));
  }
  if (pivot) {
    const Int a = *pivot;
    Block slack(d + 1, d + 2);
    for (int j = 0; j < d; ++j) slack.at(j, j) = g.sizes[static_cast<std::size_t>(j)] == a ? 1 : a;
    slack.at(d, d) = a;
    inst.blocks.push_back(std::move(slack));
    inst.t.push_back(d + 2);
    inst.b_low.push_back(g.jobs + g.dummies);
  }
  inst.n = static_cast<int>(inst.blocks.size());
  const ValidatedInstance vi = validate(std::move(inst));
  const SolveOutcome out = solve(vi, Mode::feasibility);
  if (!out.solution) return std::nullopt;

  Placement placement;
  placement.per_machine.assign(g.target.size(), std::vector<Int>(static_cast<std::size_t>(d + 1), 0));
  const std::vector<Int>& x = out.solution->x;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::size_t off = vi.brick_offset(static_cast<int>(k));
    std::size_t next = 0;
    for (std::size_t col = 0; col < classes[k].configs.size(); ++col)
      for (Int copies = 0; copies < x[off + col]; ++copies) placement.per_machine[static_cast<std::size_t>(classes[k].machines[next++])] = classes[k].configs[col];
  }
  std::vector<Int> slack;
  if (pivot) {
    const std::size_t off = vi.brick_offset(static_cast<int>(classes.size()));
    slack.assign(x.begin() + static_cast<std::ptrdiff_t>(off), x.begin() + static_cast<std::ptrdiff_t>(off) + d + 1);
  }
  return std::make_pair(std::move(placement), std::move(slack));
}

std::vector<ClassBlock> group_machines(const std::vector<int>& machines, const std::vector<Int>& key) {
  std::map<Int, ClassBlock> groups;
  for (int mc : machines) groups[key[static_cast<std::size_t>(mc)]].machines.push_back(mc);
  std::vector<ClassBlock> out;
  for (auto& [k, cls] : groups) out.push_back(std::move(cls));
  return out;
}

// Turns per-machine counts into a job assignment. Dummies are dropped.
std::vector<int> assign_jobs(const GuessData& g, const std::vector<std::vector<Int>>& per_machine, std::size_t total_jobs) {
  std::vector<int> job_machine(total_jobs, -1);
  std::vector<std::size_t> taken(g.sizes.size(), 0);
  for (std::size_t mc = 0; mc < per_machine.size(); ++mc)
    for (std::size_t j = 0; j < g.sizes.size(); ++j)
      for (Int copies = 0; copies < per_machine[mc][j]; ++copies) {
        if (taken[j] >= g.jobs_of[j].size()) throw std::logic_error("configuration uses more jobs than exist");
        job_machine[static_cast<std::size_t>(g.jobs_of[j][taken[j]++])] = static_cast<int>(mc);
      }
  for (int v : job_machine)
    if (v < 0) throw std::logic_error("a job was left unassigned");
  return job_machine;
}

std::optional<Schedule> exact_path(const GuessData& g, std::size_t total_jobs) {
  std::vector<int> all(g.target.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<ClassBlock> classes = group_machines(all, g.target);
  for (ClassBlock& cls : classes) cls.configs = fill_configs(g, g.counts, g.target[static_cast<std::size_t>(cls.machines[0])], g.dummies);
  std::vector<Int> rhs = g.counts;
  rhs.push_back(g.dummies);
  const auto solved = solve_config_ilp(g, classes, rhs, std::nullopt);
  if (!solved) return std::nullopt;
  Schedule s;
  s.job_machine = assign_jobs(g, solved->first.per_machine, total_jobs);
  s.path = "exact";
  return s;
}

std::optional<Schedule> pivot_path(const GuessData& g, Int a, const std::vector<int>& small, const std::vector<int>& big, std::size_t total_jobs) {
  const std::size_t d = g.sizes.size();
  const std::size_t pa = static_cast<std::size_t>(std::find(g.sizes.begin(), g.sizes.end(), a) - g.sizes.begin());
  const Int withheld = g.pmax * g.pmax * static_cast<Int>(big.size());
  std::vector<Int> reduced = g.counts;
  reduced[pa] -= withheld;
  if (reduced[pa] < 0) return std::nullopt;

  std::vector<ClassBlock> classes = group_machines(small, g.target);
  for (ClassBlock& cls : classes) cls.configs = fill_configs(g, reduced, g.target[static_cast<std::size_t>(cls.machines[0])], g.dummies);

  std::vector<Int> residue(g.target.size(), 0);
  for (int mc : big) residue[static_cast<std::size_t>(mc)] = g.target[static_cast<std::size_t>(mc)] % a;
  for (ClassBlock& cls : group_machines(big, residue)) {
    Int lowest = g.target[static_cast<std::size_t>(cls.machines[0])];
    for (int mc : cls.machines) lowest = std::min(lowest, g.target[static_cast<std::size_t>(mc)]);
    cls.configs = parity_configs(g, reduced, a, lowest);
    classes.push_back(std::move(cls));
  }

  std::vector<Int> rhs = reduced;
  rhs.push_back(g.dummies);
  const auto solved = solve_config_ilp(g, classes, rhs, a);
  if (!solved) return std::nullopt;
  std::vector<std::vector<Int>> per_machine = solved->first.per_machine;
  const std::vector<Int>& slack = solved->second;

  // remaining room on every big machine; small machines are already exact
  std::vector<Int> room(g.target.size(), 0);
  for (int mc : big) {
    const auto um = static_cast<std::size_t>(mc);
    Int load = g.sign * per_machine[um][d];
    for (std::size_t j = 0; j < d; ++j) load += per_machine[um][j] * g.sizes[j];
    room[um] = g.target[um] - load;
  }
  auto roomiest = [&] {
    int best = big.front();
    for (int mc : big)
      if (room[static_cast<std::size_t>(mc)] > room[static_cast<std::size_t>(best)]) best = mc;
    return static_cast<std::size_t>(best);
  };
  auto place_bundle = [&](std::size_t type, Int size) {
    const std::size_t mc = roomiest();
    if (room[mc] < size) throw std::logic_error("bundle augmentation got stuck");
    per_machine[mc][type] += a;
    room[mc] -= size;
  };

  // 1. dummy bundles (negative size for Cmin) onto one big machine
  if (g.sign < 0) {
    const auto first = static_cast<std::size_t>(big.front());
    per_machine[first][d] += a * slack[d];
    room[first] += a * slack[d];
  } else {
    for (Int b = 0; b < slack[d]; ++b) place_bundle(d, a);
  }
  // 2. bundles of a equal jobs
  for (std::size_t j = 0; j < d; ++j)
    if (j != pa)
      for (Int b = 0; b < slack[j]; ++b) place_bundle(j, a * g.sizes[j]);
  // 3. single pivot jobs fill the remaining room exactly
  Int pivots = slack[pa] + withheld;
  for (int mc : big) {
    const auto um = static_cast<std::size_t>(mc);
    if (room[um] < 0 || room[um] % a != 0) throw std::logic_error("pivot augmentation got stuck");
    per_machine[um][pa] += room[um] / a;
    pivots -= room[um] / a;
    room[um] = 0;
  }
  if (pivots != 0) throw std::logic_error("pivot jobs do not match the remaining room");

  Schedule s;
  s.job_machine = assign_jobs(g, per_machine, total_jobs);
  s.path = "pivot a=" + std::to_string(a);
  return s;
}

}  // namespace

Ratio Ratio::make(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int g = std::gcd(num < 0 ? -num : num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

std::string Ratio::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

const char* to_string(SchedObjective objective) { return objective == SchedObjective::cmax ? "cmax" : "cmin"; }

void validate_scheduling(const SchedulingInstance& inst) {
  if (inst.p.size() != inst.n.size()) throw std::invalid_argument("p and n differ in length");
  if (inst.s.size() != inst.m.size()) throw std::invalid_argument("s and m differ in length");
  for (Int v : inst.p)
    if (v <= 0) throw std::invalid_argument("processing times must be positive");
  for (Int v : inst.n)
    if (v < 0) throw std::invalid_argument("job counts must be non-negative");
  for (Int v : inst.s)
    if (v <= 0) throw std::invalid_argument("speeds must be positive");
  Int machines = 0;
  for (Int v : inst.m) {
    if (v < 0) throw std::invalid_argument("machine counts must be non-negative");
    machines += v;
  }
  if (machines == 0) throw std::invalid_argument("at least one machine is required");
}

SchedulingInstance scheduling_from_json(const nlohmann::json& doc) {
  SchedulingInstance inst;
  for (const char* key : {"p", "n", "s", "m"})
    if (!doc.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
  inst.p = doc.at("p").get<std::vector<Int>>();
  inst.n = doc.at("n").get<std::vector<Int>>();
  inst.s = doc.at("s").get<std::vector<Int>>();
  inst.m = doc.at("m").get<std::vector<Int>>();
  validate_scheduling(inst);
  return inst;
}

std::vector<Int> job_sizes(const SchedulingInstance& inst) {
  std::vector<Int> out;
  for (std::size_t j = 0; j < inst.p.size(); ++j) out.insert(out.end(), static_cast<std::size_t>(inst.n[j]), inst.p[j]);
  return out;
}

std::vector<Int> machine_speeds(const SchedulingInstance& inst) {
  std::vector<Int> out;
  for (std::size_t k = 0; k < inst.s.size(); ++k) out.insert(out.end(), static_cast<std::size_t>(inst.m[k]), inst.s[k]);
  return out;
}

Ratio schedule_objective(const SchedulingInstance& inst, const std::vector<int>& job_machine, SchedObjective objective) {
  const auto sizes = job_sizes(inst);
  const auto speeds = machine_speeds(inst);
  if (job_machine.size() != sizes.size()) throw std::invalid_argument("assignment length differs from the job count");
  std::vector<Int> loads(speeds.size(), 0);
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    const int mc = job_machine[j];
    if (mc < 0 || static_cast<std::size_t>(mc) >= speeds.size()) throw std::invalid_argument("job assigned to a missing machine");
    loads[static_cast<std::size_t>(mc)] += sizes[j];
  }
  Ratio best = Ratio::make(loads[0], speeds[0]);
  for (std::size_t k = 1; k < speeds.size(); ++k) {
    const Ratio v = Ratio::make(loads[k], speeds[k]);
    if (objective == SchedObjective::cmax ? best < v : v < best) best = v;
  }
  return best;
}

std::vector<Ratio> candidate_guesses(const SchedulingInstance& inst) {
  Int jobs = 0, pmax = 0;
  for (std::size_t j = 0; j < inst.p.size(); ++j) {
    jobs += inst.n[j];
    if (inst.n[j] > 0) pmax = std::max(pmax, inst.p[j]);
  }
  std::vector<Ratio> out;
  for (std::size_t k = 0; k < inst.s.size(); ++k)
    if (inst.m[k] > 0)
      for (Int v = 0; v <= jobs * pmax; ++v) out.push_back(Ratio::make(v, inst.s[k]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Schedule> decide_guess(const SchedulingInstance& inst, Ratio guess, SchedObjective objective, const SchedulingOptions& options) {
  validate_scheduling(inst);
  GuessData g;
  g.objective = objective;
  g.sign = objective == SchedObjective::cmin ? -1 : 1;

  std::map<Int, std::size_t> index;
  for (std::size_t j = 0; j < inst.p.size(); ++j)
    if (inst.n[j] > 0) index[inst.p[j]] = 0;
  for (auto& [size, idx] : index) {
    idx = g.sizes.size();
    g.sizes.push_back(size);
    g.counts.push_back(0);
    g.jobs_of.emplace_back();
  }
  int job = 0;
  Wide total = 0;
  for (std::size_t j = 0; j < inst.p.size(); ++j)
    for (Int c = 0; c < inst.n[j]; ++c) {
      const std::size_t idx = index.at(inst.p[j]);
      ++g.counts[idx];
      g.jobs_of[idx].push_back(job++);
      total += inst.p[j];
    }
  g.jobs = job;
  g.pmax = g.sizes.empty() ? 0 : g.sizes.back();

  Wide capacity = 0;
  for (std::size_t k = 0; k < inst.s.size(); ++k)
    for (Int c = 0; c < inst.m[k]; ++c) {
      const Int t = objective == SchedObjective::cmin ? ceil_ratio(inst.s[k], guess) : floor_ratio(inst.s[k], guess);
      g.target.push_back(t);
      capacity += t;
    }
  const Wide dummies = objective == SchedObjective::cmin ? total - capacity : capacity - total;
  if (dummies < 0) return std::nullopt;
  g.dummies = static_cast<Int>(dummies);

  const Int threshold = options.small_threshold.value_or(g.pmax * g.pmax * g.pmax * g.pmax);
  std::vector<int> small, big;
  for (std::size_t mc = 0; mc < g.target.size(); ++mc) (g.target[mc] > threshold ? big : small).push_back(static_cast<int>(mc));

  std::optional<Schedule> found;
  if (!big.empty() && !g.sizes.empty())
    for (Int a : g.sizes)
      if ((found = pivot_path(g, a, small, big, static_cast<std::size_t>(job)))) break;
  if (!found) found = exact_path(g, static_cast<std::size_t>(job));
  if (!found) return std::nullopt;

  found->guess = guess;
  found->loads.assign(g.target.size(), 0);
  const auto sizes = job_sizes(inst);
  for (std::size_t j = 0; j < sizes.size(); ++j) found->loads[static_cast<std::size_t>(found->job_machine[j])] += sizes[j];
  for (std::size_t mc = 0; mc < g.target.size(); ++mc) {
    const bool ok = objective == SchedObjective::cmin ? found->loads[mc] >= g.target[mc] : found->loads[mc] <= g.target[mc];
    if (!ok) throw std::logic_error("schedule misses its guessed load");
  }
  found->objective = schedule_objective(inst, found->job_machine, objective);
  return found;
}

Schedule solve_schedule(const SchedulingInstance& inst, SchedObjective objective, const SchedulingOptions& options) {
  validate_scheduling(inst);
  const std::vector<Ratio> cands = candidate_guesses(inst);
  std::map<std::size_t, std::optional<Schedule>> seen;
  int probes = 0;
  auto probe = [&](std::size_t idx) -> const std::optional<Schedule>& {
    auto it = seen.find(idx);
    if (it == seen.end()) {
      ++probes;
      it = seen.emplace(idx, decide_guess(inst, cands[idx], objective, options)).first;
    }
    return it->second;
  };

  Int jobs = 0, machines = 0;
  for (Int v : inst.n) jobs += v;
  for (Int v : inst.m) machines += v;

  std::size_t lo = 0, hi = cands.size() - 1;
  if (objective == SchedObjective::cmin) {
    // largest feasible guess; 0 is always feasible
    if (jobs < machines) hi = 0;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (probe(mid)) lo = mid;
      else hi = mid - 1;
    }
  } else {
    // smallest feasible guess; the largest candidate always is
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (probe(mid)) hi = mid;
      else lo = mid + 1;
    }
  }
  const auto& best = probe(lo);
  if (!best) throw std::logic_error("binary search ended on an infeasible guess");
  Schedule out = *best;
  out.probes = probes;
  if (objective == SchedObjective::cmin) rebalance_cmin(inst, out);
  return out;
}

Schedule solve_cmax(const SchedulingInstance& inst, const SchedulingOptions& options) {
  return solve_schedule(inst, SchedObjective::cmax, options);
}

Schedule solve_cmin(const SchedulingInstance& inst, const SchedulingOptions& options) {
  return solve_schedule(inst, SchedObjective::cmin, options);
}

void rebalance_cmin(const SchedulingInstance& inst, Schedule& schedule) {
  const auto sizes = job_sizes(inst);
  const auto speeds = machine_speeds(inst);
  Int pmax = 0;
  for (Int v : sizes) pmax = std::max(pmax, v);
  const Ratio opt = schedule.objective;
  auto too_full = [&](std::size_t mc) {
    // load > opt * s + pmax
    return static_cast<Wide>(schedule.loads[mc]) * opt.den > static_cast<Wide>(opt.num) * speeds[mc] + static_cast<Wide>(pmax) * opt.den;
  };
  const std::size_t limit = (sizes.size() + 1) * (speeds.size() + 1) * 4;
  for (std::size_t step = 0; step < limit; ++step) {
    std::size_t from = speeds.size();
    for (std::size_t mc = 0; mc < speeds.size() && from == speeds.size(); ++mc)
      if (too_full(mc)) from = mc;
    if (from == speeds.size()) break;
    std::size_t to = 0;
    for (std::size_t mc = 1; mc < speeds.size(); ++mc)
      if (Ratio::make(schedule.loads[mc], speeds[mc]) < Ratio::make(schedule.loads[to], speeds[to])) to = mc;
    const auto job = std::find(schedule.job_machine.begin(), schedule.job_machine.end(), static_cast<int>(from));
    const auto j = static_cast<std::size_t>(job - schedule.job_machine.begin());
    *job = static_cast<int>(to);
    schedule.loads[from] -= sizes[j];
    schedule.loads[to] += sizes[j];
  }
  schedule.objective = schedule_objective(inst, schedule.job_machine, SchedObjective::cmin);
}

nlohmann::json schedule_to_json(const Schedule& schedule, SchedObjective objective) {
  return nlohmann::json{{"objective", to_string(objective)},
                        {"value", schedule.objective.str()},
                        {"value_float", schedule.objective.to_double()},
                        {"assignment", schedule.job_machine},
                        {"loads", schedule.loads},
                        {"path", schedule.path},
                        {"probes", schedule.probes}};
}

}  // namespace nfold
