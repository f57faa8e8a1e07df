// Command-line front end: instance generation, table building, simulation,
// report aggregation and batch experiments.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mobiprod/errors.hpp"
#include "mobiprod/harness.hpp"
#include "mobiprod/instances.hpp"
#include "mobiprod/tables.hpp"

namespace fs = std::filesystem;
using namespace mobiprod;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// Accepts "3" or "1/3" for a lattice step of one third.
int parse_divisions(const std::string& text) {
  const std::string digits = text.rfind("1/", 0) == 0 ? text.substr(2) : text;
  try {
    const int d = std::stoi(digits);
    if (d >= 1) return d;
  } catch (const std::exception&) {
  }
  throw ValidationError("bad grid step '" + text + "'");
}

std::vector<Instance> generate_set(const std::string& set, std::uint64_t seed) {
  if (set == "A" || set == "a") return gen_set_A(seed);
  if (set == "B" || set == "b") return gen_set_B(seed);
  throw ValidationError("unknown instance set '" + set + "'");
}

// Instance files named directly or found (*.json) in directories.
std::vector<Instance> load_instances(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p))
        if (e.path().extension() == ".json") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<Instance> out;
  for (const std::string& f : files) out.push_back(read_instance_file(f));
  return out;
}

struct TableFlags {
  std::string grid = "3";
  std::string cache_dir;
  std::optional<double> beta;
};

void add_table_flags(CLI::App* cmd, TableFlags& flags) {
  cmd->add_option("--grid", flags.grid, "belief grid step, e.g. 1/3");
  cmd->add_option("--cache-dir", flags.cache_dir, "directory of cached tables");
  cmd->add_option("--beta", flags.beta, "override the discount factor")
      ->check(CLI::Range(0.0, 1.0));
}

TableOptions table_options(const TableFlags& flags) {
  TableOptions opt;
  opt.divisions = parse_divisions(flags.grid);
  opt.cache_dir = flags.cache_dir;
  return opt;
}

void apply_beta(std::vector<Instance>& instances, const TableFlags& flags) {
  if (!flags.beta) return;
  for (Instance& inst : instances) inst.beta = *flags.beta;
}

std::vector<PolicyConfig> parse_policies(const std::vector<std::string>& names,
                                         double theta, const std::string& mode) {
  std::vector<PolicyConfig> out;
  for (const std::string& n : names) {
    PolicyConfig c{parse_policy(n), theta, parse_mode(mode)};
    validate_config(c);
    out.push_back(c);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inventory control with mobile production modules"};
  app.require_subcommand(1);

  // gen
  std::string gen_set = "A", gen_dir = "instances";
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "write generated instance files");
  gen->add_option("--set", gen_set, "instance set A or B");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out-dir", gen_dir, "output directory");

  // tables
  std::vector<std::string> tab_instances;
  TableFlags tab_flags;
  auto* tab = app.add_subcommand("tables", "build and cache value tables");
  tab->add_option("--instance", tab_instances, "instance file or directory")
      ->required();
  add_table_flags(tab, tab_flags);

  // simulate
  std::vector<std::string> sim_instances, sim_policies{"DNF"};
  TableFlags sim_flags;
  double sim_theta = 0.2;
  std::string sim_mode = "po", sim_out = "-";
  int sim_reps = 50, sim_horizon = 0;
  std::uint64_t sim_seed = 1;
  bool sim_no_timing = false;
  auto* sim = app.add_subcommand("simulate", "simulate trajectories, one CSV row each");
  sim->add_option("--instance", sim_instances, "instance file or directory")
      ->required();
  sim->add_option("--policy", sim_policies, "MP MNF DNF JR LAJ GLR LAGLR")->delimiter(',');
  sim->add_option("--theta", sim_theta, "blending coefficient")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--mode", sim_mode, "belief mode po, ss or co");
  sim->add_option("--reps", sim_reps, "trajectories per policy")
      ->check(CLI::PositiveNumber);
  sim->add_option("--horizon", sim_horizon, "periods (0 = instance horizon)");
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--out", sim_out, "output CSV ('-' for stdout)");
  sim->add_flag("--no-timing", sim_no_timing, "write zero wall-clock times");
  add_table_flags(sim, sim_flags);

  // report
  std::vector<std::string> rep_inputs;
  std::string rep_out = "-";
  auto* rep = app.add_subcommand("report", "aggregate simulate CSVs into a report");
  rep->add_option("inputs", rep_inputs, "trajectory CSV files")->required();
  rep->add_option("--out", rep_out, "output CSV ('-' for stdout)");

  // experiment
  std::vector<std::string> exp_instances, exp_policies{"DNF", "MP", "MNF", "GLR", "LAJ"};
  std::string exp_set, exp_mode = "po", exp_out = "-";
  TableFlags exp_flags;
  double exp_theta = 0.2;
  int exp_reps = 50, exp_horizon = 0;
  std::uint64_t exp_seed = 1;
  bool exp_no_timing = false, exp_quiet = false;
  auto* exp = app.add_subcommand("experiment", "simulate and report in one pass");
  exp->add_option("--instance", exp_instances, "instance file or directory");
  exp->add_option("--set", exp_set, "generate set A or B instead of reading files");
  exp->add_option("--policy", exp_policies, "policies to evaluate")->delimiter(',');
  exp->add_option("--theta", exp_theta, "blending coefficient")
      ->check(CLI::Range(0.0, 1.0));
  exp->add_option("--mode", exp_mode, "belief mode po, ss or co");
  exp->add_option("--reps", exp_reps, "trajectories per policy")
      ->check(CLI::PositiveNumber);
  exp->add_option("--horizon", exp_horizon, "periods (0 = instance horizon)");
  exp->add_option("--seed", exp_seed, "master seed");
  exp->add_option("--out", exp_out, "report CSV ('-' for stdout)");
  exp->add_flag("--no-timing", exp_no_timing, "write zero wall-clock times");
  exp->add_flag("--quiet", exp_quiet, "no progress lines on stderr");
  add_table_flags(exp, exp_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const std::vector<Instance> set = generate_set(gen_set, gen_seed);
      fs::create_directories(gen_dir);
      nlohmann::json index = nlohmann::json::array();
      for (const Instance& inst : set) {
        write_instance_file(inst, (fs::path(gen_dir) / (inst.id + ".json")).string());
        index.push_back(inst.id);
      }
      write_file((fs::path(gen_dir) / "index.json").string(), index.dump(1) + "\n");
      std::cerr << "wrote " << set.size() << " instances to " << gen_dir << "\n";
    } else if (tab->parsed()) {
      std::vector<Instance> instances = load_instances(tab_instances);
      apply_beta(instances, tab_flags);
      const TableOptions opt = table_options(tab_flags);
      TableMemo memo;
      for (const Instance& inst : instances) {
        const auto start = std::chrono::steady_clock::now();
        const TableSet set = build_tables(inst, opt, &memo);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        nlohmann::json summary;
        summary["instance"] = inst.id;
        summary["grid_points"] = set.grid.size();
        summary["pi_unique"] = set.pi_unique;
        summary["seconds"] = dt.count();
        for (const ValueTable& t : set.tables) {
          double worst = 0.0;
          for (double b : t.raw_bounds()) worst = std::max(worst, b);
          summary["tables"].push_back({{"location", t.location},
                                       {"iterations", t.iterations},
                                       {"residual", t.residual},
                                       {"s_min", t.s_min},
                                       {"s_max", t.s_max},
                                       {"max_truncation_bound", worst}});
        }
        std::cout << summary.dump() << "\n";
      }
    } else if (sim->parsed()) {
      std::vector<Instance> instances = load_instances(sim_instances);
      apply_beta(instances, sim_flags);
      const std::vector<PolicyConfig> configs =
          parse_policies(sim_policies, sim_theta, sim_mode);
      const TableOptions opt = table_options(sim_flags);
      TableMemo memo;
      std::vector<TrajectoryRow> rows;
      for (const Instance& inst : instances) {
        const TableSet tables = build_tables(inst, opt, &memo);
        const int horizon = sim_horizon > 0 ? sim_horizon : inst.horizon;
        for (const PolicyConfig& c : configs) {
          for (int r = 0; r < sim_reps; ++r) {
            const std::uint64_t seed = trajectory_seed(sim_seed, inst, r);
            const auto start = std::chrono::steady_clock::now();
            const TrajectoryResult tr =
                simulate_trajectory(inst, c, &tables, horizon, seed);
            const std::chrono::duration<double> dt =
                std::chrono::steady_clock::now() - start;
            rows.push_back({inst.id, c.id, c.theta, c.mode, r, seed,
                            tr.total_discounted, tr.total_undiscounted,
                            sim_no_timing ? 0.0 : dt.count()});
          }
        }
      }
      write_file(sim_out, trajectory_csv(rows));
    } else if (rep->parsed()) {
      std::vector<TrajectoryRow> rows;
      for (const std::string& p : rep_inputs) {
        auto part = parse_trajectory_csv(read_file(p));
        rows.insert(rows.end(), part.begin(), part.end());
      }
      write_file(rep_out, report_csv(aggregate_trajectories(rows)));
    } else if (exp->parsed()) {
      std::vector<Instance> instances;
      if (!exp_set.empty()) instances = generate_set(exp_set, exp_seed);
      if (!exp_instances.empty()) {
        auto loaded = load_instances(exp_instances);
        instances.insert(instances.end(), loaded.begin(), loaded.end());
      }
      if (instances.empty()) throw ValidationError("experiment: no instances given");
      apply_beta(instances, exp_flags);
      ExperimentOptions opt;
      opt.policies = parse_policies(exp_policies, exp_theta, exp_mode);
      opt.reps = exp_reps;
      opt.horizon = exp_horizon;
      opt.seed = exp_seed;
      opt.timing = !exp_no_timing;
      opt.tables = table_options(exp_flags);
      if (!exp_quiet) opt.progress = [](const std::string& s) { std::cerr << s << "\n"; };
      write_file(exp_out, report_csv(run_experiment(instances, opt)));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const GenerationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedChain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    std::cerr << "solver budget: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "convergence: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
