#include "nfold/checks.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "nfold/driver.hpp"
#include "nfold/generators.hpp"
#include "nfold/instance_io.hpp"
#include "nfold/oracle.hpp"

namespace nfold {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

nlohmann::json core_check_report(const CheckConfig& config) {
  std::mt19937_64 rng(config.seed);
  RandomInstanceParams params;
  params.with_objective = config.mode == Mode::optimization;
  std::vector<NFoldInstance> instances;
  for (int trial = 0; trial < config.trials; ++trial)
    instances.push_back(config.mode == Mode::optimization ? random_feasible_instance(rng, params) : random_instance(rng, params));

  std::vector<nlohmann::json> rows(instances.size());
  parallel_for(instances.size(), config.threads, [&](std::size_t i) {
    const ValidatedInstance vi = validate(instances[i]);
    nlohmann::json row;
    row["trial"] = i;
    row["n"] = vi->n;
    row["r"] = vi->r;
    row["b_low"] = vi->b_low;
    const SolveOutcome got = solve(vi, config.mode);
    row["status"] = to_string(got.status);
    if (got.solution) {
      row["verified"] = verify_solution(vi, got.solution->x);
      if (got.solution->objective) row["objective"] = *got.solution->objective;
    }
    OracleBudget budget;
    budget.limit = config.budget;
    try {
      const SolveOutcome want = oracle_solve(vi.get(), config.mode, &budget);
      row["oracle_status"] = to_string(want.status);
      bool agree = got.status == want.status;
      if (agree && want.solution && config.mode == Mode::optimization) {
        row["oracle_objective"] = *want.solution->objective;
        agree = got.solution->objective == want.solution->objective;
      }
      if (got.solution) agree = agree && row["verified"].get<bool>();
      row["agree"] = agree;
    } catch (const BudgetExceeded&) {
      row["oracle_status"] = "skipped";
    }
    rows[i] = std::move(row);
  });

  int agreed = 0, disagreed = 0, skipped = 0, feasible = 0;
  for (const auto& row : rows) {
    if (!row.contains("agree")) ++skipped;
    else if (row["agree"].get<bool>()) ++agreed;
    else ++disagreed;
    if (row["status"] != "infeasible") ++feasible;
  }
  nlohmann::json report;
  report["seed"] = config.seed;
  report["mode"] = to_string(config.mode);
  report["trials"] = config.trials;
  report["agreed"] = agreed;
  report["disagreed"] = disagreed;
  report["skipped"] = skipped;
  report["feasible"] = feasible;
  report["results"] = rows;
  return report;
}

}  // namespace nfold
