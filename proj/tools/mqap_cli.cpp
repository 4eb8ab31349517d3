// mqap: command-line front end for running island-model experiments on
// multi-objective QAP instances and comparing their results.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mqap/error.hpp"
#include "mqap/experiment.hpp"
#include "mqap/instance.hpp"
#include "mqap/metrics.hpp"

namespace {

using namespace mqap;

std::chrono::nanoseconds seconds_to_duration(double secs) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(secs));
}

struct RunOptions {
  std::string instance;
  std::size_t gen_n = 0;
  std::size_t gen_m = 2;
  double gen_correlation = 0.0;
  std::uint64_t gen_seed = 1;
  std::size_t islands = 1;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  std::size_t generations = 100;
  double time_budget_secs = 300.0;
  std::string algorithm = "memetic";
  std::size_t epoch = 5;
  std::size_t migrants = 2;
  double pc = 0.9;
  double pm = 0.01;
  double ls_secs = 5.0;
  std::size_t population = 0;
  std::size_t archive_capacity = kDefaultArchiveCapacity;
  std::string clock = "wall";
  std::string ls_seeds = "archive";
  bool parallel_trials = false;
  std::string out = "results";
  std::string config;
};

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

// Fills options that were not given on the command line from a file of
// "key = value" lines. Keys are long flag names without the dashes; '#'
// starts a comment.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--config", path + ":" + std::to_string(number) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw CLI::ValidationError("--config", path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (key == "config" || opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

void add_run(CLI::App& app, RunOptions& o) {
  auto* run = app.add_subcommand("run", "Run island-model trials and write fronts plus manifest.json");
  run->add_option("--config", o.config, "key=value configuration file (command-line flags win)");
  auto* inst = run->add_option("--instance", o.instance, "Instance file");
  auto* gen = run->add_option("--gen-n", o.gen_n, "Generate a uniform instance of this size instead of --instance");
  inst->excludes(gen);
  run->add_option("--gen-m", o.gen_m, "Generated instance: number of flow matrices")->capture_default_str();
  run->add_option("--gen-correlation", o.gen_correlation, "Generated instance: flow correlation")->capture_default_str();
  run->add_option("--gen-seed", o.gen_seed, "Generated instance: seed")->capture_default_str();
  run->add_option("--islands", o.islands, "Number of islands (complete topology)")->capture_default_str();
  run->add_option("--trials", o.trials, "Independent trials")->capture_default_str();
  run->add_option("--seed", o.seed, "Base seed; trial t uses seed+t")->capture_default_str();
  run->add_option("--generations", o.generations, "Generations per island (g_max)")->capture_default_str();
  run->add_option("--time-budget-secs", o.time_budget_secs, "Wall-clock budget per island")->capture_default_str();
  run->add_option("--algorithm", o.algorithm, "memetic or nsga2")
      ->check(CLI::IsMember({"memetic", "nsga2"}))
      ->capture_default_str();
  run->add_option("--epoch", o.epoch, "Generations between migrations")->capture_default_str();
  run->add_option("--migrants", o.migrants, "Migrants per migration event")->capture_default_str();
  run->add_option("--pc", o.pc, "Crossover probability")->capture_default_str();
  run->add_option("--pm", o.pm, "Mutation probability")->capture_default_str();
  run->add_option("--ls-secs", o.ls_secs, "Local search budget per generation")->capture_default_str();
  run->add_option("--population", o.population, "Island population; 0 = derived from island count")
      ->capture_default_str();
  run->add_option("--archive-capacity", o.archive_capacity, "Archive capacity per island")->capture_default_str();
  run->add_option("--clock", o.clock, "wall or logical (1 ms per reading, reproducible)")
      ->check(CLI::IsMember({"wall", "logical"}))
      ->capture_default_str();
  run->add_option("--ls-seeds", o.ls_seeds, "Local search starting set: archive or archive+offspring")
      ->check(CLI::IsMember({"archive", "archive+offspring"}))
      ->capture_default_str();
  run->add_flag("--parallel-trials", o.parallel_trials, "Run trials concurrently");
  run->add_option("--out", o.out, "Output directory")->capture_default_str();

  run->callback([&o, run] {
    if (!o.config.empty()) apply_config_file(*run, o.config);
    ExperimentConfig config;
    if (o.gen_n > 0) {
      config.generator = InstanceSpec{o.gen_n, o.gen_m, o.gen_correlation, o.gen_seed};
    } else if (!o.instance.empty()) {
      config.instance_path = o.instance;
    } else {
      throw CLI::ValidationError("run", "either --instance or --gen-n is required");
    }
    config.algorithm = parse_algorithm(o.algorithm);
    config.island_count = o.islands;
    config.trials = o.trials;
    config.base_seed = o.seed;
    config.island.max_generations = o.generations;
    config.island.time_budget = seconds_to_duration(o.time_budget_secs);
    config.island.epoch = o.epoch;
    config.island.migrants = o.migrants;
    config.island.variation = {o.pc, o.pm};
    config.island.local_search.time_budget = seconds_to_duration(o.ls_secs);
    config.island.population_size = o.population;
    config.island.archive_capacity = o.archive_capacity;
    config.island.local_search_seeds = parse_local_search_seeds(o.ls_seeds);
    config.clock = o.clock == "logical" ? ClockKind::Logical : ClockKind::Wall;
    config.parallel_trials = o.parallel_trials;
    config.max_threads = threads_from_environment();
    config.output_dir = o.out;

    const auto results = cmd_run(config);
    for (const auto& r : results) {
      std::cout << "trial " << r.trial_index << " seed=" << r.seed << " front=" << r.front.size()
                << " wall=" << r.wall_seconds << "s -> " << (config.output_dir / r.front_file).string() << '\n';
    }
    std::cout << "manifest: " << (config.output_dir / "manifest.json").string() << '\n';
  });
}

void add_compare(CLI::App& app, std::vector<std::string>& dirs, double& alpha, std::string& out) {
  auto* cmp = app.add_subcommand("compare", "Normalized hypervolume table and rank-sum tests across result sets");
  cmp->add_option("dirs", dirs, "Result directories written by 'run'")->required()->expected(2, -1);
  cmp->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  cmp->add_option("--out", out, "Directory for report.txt, hypervolume.csv and table.csv");
  cmp->callback([&] {
    std::vector<std::filesystem::path> paths(dirs.begin(), dirs.end());
    const auto report = cmd_compare(paths, alpha);
    write_report(std::cout, report);
    if (!out.empty()) {
      std::filesystem::create_directories(out);
      std::ofstream txt(std::filesystem::path(out) / "report.txt");
      write_report(txt, report);
      std::ofstream hv(std::filesystem::path(out) / "hypervolume.csv");
      write_hypervolume_csv(hv, report);
      std::ofstream table(std::filesystem::path(out) / "table.csv");
      write_table_csv(table, report);
      if (!txt || !hv || !table) throw Error(ErrorCode::OutputWriteError, "cannot write comparison outputs to " + out);
    }
  });
}

void add_enumerate(CLI::App& app, std::string& instance, std::string& out) {
  auto* en = app.add_subcommand("enumerate", "Exact Pareto front by brute force (n <= 10)");
  en->add_option("--instance", instance, "Instance file")->required();
  en->add_option("--out", out, "Front file (default: stdout)");
  en->callback([&] {
    const auto inst = load_instance(instance);
    const auto front = enumerate_front(inst);
    if (out.empty()) {
      write_front(std::cout, front, inst.name(), std::nullopt);
      return;
    }
    std::ofstream file(out);
    write_front(file, front, inst.name(), std::nullopt);
    if (!file) throw Error(ErrorCode::OutputWriteError, "cannot write " + out);
    std::cout << front.size() << " non-dominated solutions -> " << out << '\n';
  });
}

void add_gen(CLI::App& app, InstanceSpec& spec, std::string& out) {
  auto* gen = app.add_subcommand("gen", "Generate a uniform instance with correlated flows");
  gen->add_option("--n", spec.n, "Number of facilities/locations")->required();
  gen->add_option("--m", spec.m, "Number of flow matrices")->capture_default_str();
  gen->add_option("--correlation", spec.correlation, "Target flow correlation in [-1, 1]")->capture_default_str();
  gen->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  gen->add_option("--max-value", spec.max_value, "Largest matrix entry")->capture_default_str();
  gen->add_option("--out", out, "Instance file (default: stdout)");
  gen->callback([&] {
    const auto instance = generate_uniform(spec);
    if (out.empty()) {
      write_instance(std::cout, instance);
      return;
    }
    std::ofstream file(out);
    write_instance(file, instance);
    if (!file) throw Error(ErrorCode::OutputWriteError, "cannot write " + out);
  });
}

void add_hv(CLI::App& app, std::string& front_path, std::vector<double>& ref, double& offset, std::string& baseline) {
  auto* hv = app.add_subcommand("hv", "Hypervolume of a front file");
  hv->add_option("--front", front_path, "Front file")->required();
  hv->add_option("--ref", ref, "Raw-space reference point (comma separated); omit to normalise the front itself")
      ->delimiter(',');
  hv->add_option("--offset", offset, "Offset added to the normalised maximum when --ref is absent")
      ->capture_default_str();
  hv->add_option("--relative-to", baseline,
                 "Print HV(front) / HV(this front), both normalised by this front's bounds (e.g. an enumerated front)")
      ->excludes("--ref");
  hv->callback([&] {
    const auto front = to_front(read_front_file(front_path).solutions);
    double value = 0.0;
    if (!baseline.empty()) {
      const auto exact = to_front(read_front_file(baseline).solutions);
      const auto bounds = front_bounds(std::vector<Front>{exact});
      const auto normalized_exact = normalize_front(exact, bounds);
      const auto reference = reference_point(normalized_exact, offset);
      value = hypervolume(normalize_front(front, bounds), reference) / hypervolume(normalized_exact, reference);
    } else if (!ref.empty()) {
      value = hypervolume(front, ref);
    } else {
      const auto normalized = normalize_front(front, front_bounds(std::vector<Front>{front}));
      value = hypervolume(normalized, reference_point(normalized, offset));
    }
    std::cout.precision(12);
    std::cout << value << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel asynchronous memetic solver for the multi-objective QAP"};
  app.require_subcommand(1);

  RunOptions run_options;
  std::vector<std::string> compare_dirs;
  double alpha = 0.05;
  std::string compare_out;
  std::string enum_instance, enum_out;
  InstanceSpec gen_spec;
  std::string gen_out;
  std::string hv_front;
  std::vector<double> hv_ref;
  double hv_offset = kDefaultReferenceOffset;
  std::string hv_baseline;

  add_run(app, run_options);
  add_compare(app, compare_dirs, alpha, compare_out);
  add_enumerate(app, enum_instance, enum_out);
  add_gen(app, gen_spec, gen_out);
  add_hv(app, hv_front, hv_ref, hv_offset, hv_baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const mqap::Error& e) {
    std::cerr << "mqap: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mqap: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
