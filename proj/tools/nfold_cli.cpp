// Command-line front end: solvers, the iteration plan, the applications and
// the seeded oracle agreement runs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfold/checks.hpp"
#include "nfold/closest_string.hpp"
#include "nfold/driver.hpp"
#include "nfold/generators.hpp"
#include "nfold/imbalance.hpp"
#include "nfold/instance_io.hpp"
#include "nfold/iteration_plan.hpp"
#include "nfold/scheduling.hpp"

namespace {

using nlohmann::json;

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
  const char* env = std::getenv("NFOLD_LOG");
  if (!env) return LogLevel::quiet;
  const std::string v = env;
  if (v == "debug" || v == "trace") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::quiet;
}

void log(LogLevel level, const std::string& msg) {
  if (level <= log_level()) std::cerr << "[nfold] " << msg << '\n';
}

// Usage-level failures (bad flags, unreadable or malformed input).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--in: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw UsageError("--in: " + std::string(e.what()));
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--in: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("--out: cannot write " + out_path);
  out << text << '\n';
}

nfold::Mode parse_mode(const std::string& mode) {
  return mode == "optimize" ? nfold::Mode::optimization : nfold::Mode::feasibility;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-fold integer programming solver"};
  app.require_subcommand(1);

  std::string in_path, out_path, mode = "feasibility", objective = "cmax";
  int trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t budget = 10'000'000;
  std::optional<nfold::Int> small_threshold;

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    auto* opt = sub->add_option("--in", in_path, "input JSON");
    if (needs_input) opt->required();
    sub->add_option("--out", out_path, "write the result here instead of stdout");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "feasibility or optimize")->check(CLI::IsMember({"feasibility", "optimize"}));
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve an n-fold instance");
  add_io(solve_cmd, true);
  add_mode(solve_cmd);

  auto* plan_cmd = app.add_subcommand("plan", "print the lower RHS schedule");
  add_io(plan_cmd, true);
  add_mode(plan_cmd);

  auto* sched_cmd = app.add_subcommand("schedule", "uniform machine scheduling");
  add_io(sched_cmd, true);
  sched_cmd->add_option("--objective", objective, "cmax or cmin")->check(CLI::IsMember({"cmax", "cmin"}));
  sched_cmd->add_option("--small-threshold-override", small_threshold, "treat machines with guessed load above this as big");

  auto* cs_cmd = app.add_subcommand("closest-string", "closest string");
  add_io(cs_cmd, true);

  auto* imb_cmd = app.add_subcommand("imbalance", "graph imbalance");
  add_io(imb_cmd, true);

  auto* check_cmd = app.add_subcommand("oracle-check", "compare the solver with the exhaustive oracle on random instances");
  add_io(check_cmd, false);
  add_mode(check_cmd);
  check_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", seed);
  check_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
  check_cmd->add_option("--budget", budget, "oracle evaluation cap per trial");

  auto* bench_cmd = app.add_subcommand("bench", "CSV of solve time and table size on random instances");
  add_io(bench_cmd, false);
  add_mode(bench_cmd);
  bench_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*solve_cmd) {
      const auto inst = nfold::validate(nfold::parse_instance(read_text(in_path)));
      log(LogLevel::info, "solving n=" + std::to_string(inst->n) + " r=" + std::to_string(inst->r) + " mode=" + mode);
      const auto outcome = nfold::solve(inst, parse_mode(mode));
      emit(out_path, nfold::outcome_to_json(outcome).dump(2));
    } else if (*plan_cmd) {
      const auto inst = nfold::validate(nfold::parse_instance(read_text(in_path)));
      emit(out_path, nfold::plan_to_json(nfold::build_plan(inst, parse_mode(mode))).dump(2));
    } else if (*sched_cmd) {
      const auto inst = nfold::scheduling_from_json(read_json(in_path));
      const auto obj = objective == "cmin" ? nfold::SchedObjective::cmin : nfold::SchedObjective::cmax;
      nfold::SchedulingOptions opts;
      opts.small_threshold = small_threshold;
      const auto schedule = nfold::solve_schedule(inst, obj, opts);
      log(LogLevel::info, "schedule found after " + std::to_string(schedule.probes) + " probes via " + schedule.path);
      emit(out_path, nfold::schedule_to_json(schedule, obj).dump(2));
    } else if (*cs_cmd) {
      const auto inst = nfold::strings_from_json(read_json(in_path));
      emit(out_path, nfold::center_to_json(nfold::solve_closest(inst)).dump(2));
    } else if (*imb_cmd) {
      const auto graph = nfold::graph_from_json(read_json(in_path));
      emit(out_path, nfold::ordering_to_json(nfold::solve_imbalance(graph)).dump(2));
    } else if (*check_cmd) {
      nfold::CheckConfig config{seed, trials, parse_mode(mode), threads, budget};
      log(LogLevel::info, "oracle-check seed=" + std::to_string(seed) + " trials=" + std::to_string(trials));
      const json report = nfold::core_check_report(config);
      emit(out_path, report.dump(2));
      std::cerr << "agreed " << report["agreed"] << " / " << trials << ", disagreed " << report["disagreed"] << ", skipped "
                << report["skipped"] << " (seed " << seed << ")\n";
      if (report["disagreed"].get<int>() > 0) return 2;
    } else if (*bench_cmd) {
      std::mt19937_64 rng(seed);
      nfold::RandomInstanceParams params;
      params.with_objective = parse_mode(mode) == nfold::Mode::optimization;
      std::ostringstream csv;
      csv << "seed,trial,n,r,max_b_low,delta,iterations,status,dp_cells,wall_ms\n";
      for (int trial = 0; trial < trials; ++trial) {
        params.max_n = 2 + trial % 4;
        params.max_b_low = 10 + 20 * (trial % 5);
        const auto inst = nfold::validate(nfold::random_feasible_instance(rng, params));
        const auto outcome = nfold::solve(inst, parse_mode(mode));
        csv << seed << ',' << trial << ',' << inst->n << ',' << inst->r << ',' << params.max_b_low << ',' << inst.delta() << ','
            << outcome.stats.iterations << ',' << nfold::to_string(outcome.status) << ',' << outcome.stats.dp_cells << ','
            << outcome.stats.wall_ms << '\n';
      }
      emit(out_path, csv.str());
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nfold::ParseError& e) {
    std::cerr << "error: --in: " << e.what() << '\n';
    return 1;
  } catch (const nfold::InstanceError& e) {
    std::cerr << "error: --in: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: --in: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
