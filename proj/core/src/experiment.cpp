#include "mqap/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mqap/archive.hpp"
#include "mqap/error.hpp"

namespace mqap {

namespace fs = std::filesystem;
using json = nlohmann::json;

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (island_count < 1) throw Error(ErrorCode::InvalidArgument, "island count must be >= 1");
  if (instance_path.has_value() == generator.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "exactly one of instance path or generator spec is required");
  }
}

std::size_t threads_from_environment() {
  const char* raw = std::getenv("MQAP_THREADS");
  if (!raw) return 0;
  std::size_t value = 0;
  const std::string_view text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return 0;
  return value;
}

Instance load_experiment_instance(const ExperimentConfig& config) {
  if (config.generator) return generate_uniform(*config.generator);
  try {
    return load_instance(config.instance_path->string());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InstanceLoadError) throw;
    throw Error(ErrorCode::InstanceLoadError, config.instance_path->string() + ": " + e.what());
  }
}

std::vector<IslandConfig> island_configs(const ExperimentConfig& config, std::size_t trial_index) {
  std::vector<IslandConfig> configs;
  const auto seed = trial_seed(config.base_seed, trial_index);
  for (std::size_t i = 0; i < config.island_count; ++i) {
    auto island = config.island;
    island.island_id = i;
    island.seed = island_seed(seed, i);
    if (island.population_size == 0) island.population_size = default_population_size(config.island_count);
    island.algorithm = config.algorithm;
    configs.push_back(std::move(island));
  }
  return configs;
}

RunResult run_trial(const Instance& instance, const ExperimentConfig& config, std::size_t trial_index) {
  const auto configs = island_configs(config, trial_index);
  const auto topology = build_topology(TopologyKind::Complete, config.island_count);
  ClockFactory make_clock = [kind = config.clock]() -> std::unique_ptr<Clock> {
    if (kind == ClockKind::Logical) return std::make_unique<LogicalClock>();
    return std::make_unique<SteadyClock>();
  };

  const auto started = std::chrono::steady_clock::now();
  auto islands = run_island_model(instance, configs, topology, make_clock, config.max_threads);
  RunResult result;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  result.instance_name = instance.name();
  result.algorithm = config.algorithm;
  result.island_count = config.island_count;
  result.trial_index = trial_index;
  result.seed = trial_seed(config.base_seed, trial_index);

  std::vector<Archive> archives;
  for (auto& island : islands) {
    result.islands.push_back(island.stats);
    archives.push_back(std::move(island.archive));
  }
  result.front = archive_merge(archives);
  sort_front(result.front);
  return result;
}

void sort_front(std::vector<Solution>& front) {
  std::sort(front.begin(), front.end(), [](const Solution& a, const Solution& b) {
    return std::tie(a.objectives, a.perm) < std::tie(b.objectives, b.perm);
  });
}

void write_front(std::ostream& out, std::vector<Solution> front, const std::string& instance_name,
                 std::optional<std::uint64_t> seed) {
  sort_front(front);
  out << "# mqap front\n";
  out << "# instance=" << instance_name << '\n';
  if (seed) out << "# seed=" << *seed << '\n';
  out << "# size=" << front.size() << '\n';
  for (const auto& sol : front) {
    for (std::size_t k = 0; k < sol.perm.size(); ++k) out << (k ? " " : "") << sol.perm[k];
    out << " |";
    for (auto v : sol.objectives) out << ' ' << v;
    out << '\n';
  }
}

namespace {

template <typename T>
std::vector<T> parse_numbers(std::string_view text) {
  std::vector<T> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::InvalidToken, "bad number '" + token + "' in front file");
    }
    out.push_back(value);
  }
  return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::OutputWriteError, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::OutputWriteError, "failed writing '" + path.string() + "'");
}

std::string front_file_name(std::size_t trial_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "front_%03zu.txt", trial_index);
  return buf;
}

json stats_json(const IslandStats& s) {
  return json{{"island", s.island_id},
              {"generations", s.generations},
              {"send_events", s.send_events},
              {"migrants_sent", s.migrants_sent},
              {"migrants_dropped", s.migrants_dropped},
              {"migrants_received", s.migrants_received},
              {"batches_received", s.batches_received},
              {"wall_seconds", s.wall_seconds}};
}

}  // namespace

FrontFile read_front(std::istream& in) {
  FrontFile file;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = std::string_view(line).substr(1);
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = body.substr(0, eq);
      key.remove_prefix(std::min(key.find_first_not_of(' '), key.size()));
      const auto value = std::string(body.substr(eq + 1));
      if (key == "instance") file.instance_name = value;
      if (key == "seed") file.seed = parse_numbers<std::uint64_t>(value).at(0);
      continue;
    }
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw Error(ErrorCode::InvalidToken, "front line without '|' separator");
    Solution sol;
    sol.perm = parse_numbers<int>(std::string_view(line).substr(0, bar));
    sol.objectives = parse_numbers<std::int64_t>(std::string_view(line).substr(bar + 1));
    file.solutions.push_back(std::move(sol));
  }
  return file;
}

FrontFile read_front_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InstanceLoadError, "cannot open front file '" + path.string() + "'");
  return read_front(in);
}

std::vector<RunResult> cmd_run(const ExperimentConfig& config) {
  config.validate();
  const auto instance = load_experiment_instance(config);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCode::OutputWriteError, "cannot create '" + config.output_dir.string() + "'");

  std::vector<RunResult> results;
  if (config.parallel_trials && config.trials > 1) {
    std::vector<std::future<RunResult>> pending;
    for (std::size_t t = 0; t < config.trials; ++t) {
      pending.push_back(std::async(std::launch::async, [&, t] { return run_trial(instance, config, t); }));
    }
    for (auto& f : pending) results.push_back(f.get());
  } else {
    for (std::size_t t = 0; t < config.trials; ++t) results.push_back(run_trial(instance, config, t));
  }

  json manifest{{"instance", instance.name()},
                {"n", instance.n()},
                {"m", instance.m()},
                {"algorithm", std::string(to_string(config.algorithm))},
                {"island_count", config.island_count},
                {"base_seed", config.base_seed},
                {"generations", config.island.max_generations},
                {"trials", json::array()}};
  if (config.instance_path) manifest["instance_path"] = config.instance_path->string();

  for (auto& result : results) {
    result.front_file = front_file_name(result.trial_index);
    std::ostringstream text;
    write_front(text, result.front, result.instance_name, result.seed);
    write_text_file(config.output_dir / result.front_file, text.str());

    json islands = json::array();
    for (const auto& s : result.islands) islands.push_back(stats_json(s));
    manifest["trials"].push_back(json{{"trial", result.trial_index},
                                      {"seed", result.seed},
                                      {"front_file", result.front_file},
                                      {"front_size", result.front.size()},
                                      {"wall_seconds", result.wall_seconds},
                                      {"islands", std::move(islands)}});
  }
  write_text_file(config.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return results;
}

std::vector<Solution> enumerate_front(const Instance& instance) {
  if (instance.n() > kMaxEnumerationSize) {
    throw Error(ErrorCode::TooLarge, "exhaustive enumeration is limited to n <= 10");
  }
  Archive front(std::numeric_limits<std::size_t>::max());
  auto perm = identity_permutation(instance.n());
  do {
    front.insert(make_solution(instance, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto members = front.members();
  sort_front(members);
  return members;
}

ResultSet load_result_set(const fs::path& directory) {
  std::ifstream in(directory / "manifest.json");
  if (!in) throw Error(ErrorCode::InstanceLoadError, "no manifest.json in '" + directory.string() + "'");
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InstanceLoadError, "malformed manifest in '" + directory.string() + "': " + e.what());
  }
  ResultSet set;
  set.directory = directory;
  set.instance_name = manifest.at("instance").get<std::string>();
  set.algorithm = parse_algorithm(manifest.at("algorithm").get<std::string>());
  set.island_count = manifest.at("island_count").get<std::size_t>();
  for (const auto& trial : manifest.at("trials")) {
    set.seeds.push_back(trial.at("seed").get<std::uint64_t>());
    set.fronts.push_back(to_front(read_front_file(directory / trial.at("front_file").get<std::string>()).solutions));
  }
  return set;
}

const ColumnSummary* ComparisonReport::find(const std::string& instance, const std::string& label) const {
  for (const auto& c : columns) {
    if (c.instance_name == instance && c.label == label) return &c;
  }
  return nullptr;
}

namespace {

std::string column_label(const ResultSet& set) {
  return std::string(to_string(set.algorithm)) + "-" + std::to_string(set.island_count);
}

}  // namespace

ComparisonReport compare_result_sets(const std::vector<ResultSet>& sets, double alpha) {
  ComparisonReport report;
  report.alpha = alpha;

  std::map<std::string, std::vector<const ResultSet*>> by_instance;
  for (const auto& set : sets) {
    if (!by_instance.count(set.instance_name)) report.instances.push_back(set.instance_name);
    by_instance[set.instance_name].push_back(&set);
  }

  for (const auto& instance : report.instances) {
    const auto& group = by_instance[instance];
    if (group.size() < 2) {
      throw Error(ErrorCode::InstanceMismatch, "instance '" + instance + "' has a single result set; nothing to compare");
    }

    std::vector<std::string> labels;
    for (const auto* set : group) {
      auto label = column_label(*set);
      const auto base = label;
      for (int k = 2; std::find(labels.begin(), labels.end(), label) != labels.end(); ++k) {
        label = base + "#" + std::to_string(k);
      }
      labels.push_back(label);
      if (std::find(report.labels.begin(), report.labels.end(), label) == report.labels.end()) {
        report.labels.push_back(label);
      }
    }

    std::vector<Front> pooled;
    for (const auto* set : group) pooled.insert(pooled.end(), set->fronts.begin(), set->fronts.end());
    const auto bounds = front_bounds(pooled);
    Front all_points;
    for (const auto& front : pooled) {
      const auto normalized = normalize_front(front, bounds);
      all_points.insert(all_points.end(), normalized.begin(), normalized.end());
    }
    const auto reference = reference_point(all_points, kDefaultReferenceOffset);

    const auto first_column = report.columns.size();
    for (std::size_t s = 0; s < group.size(); ++s) {
      ColumnSummary column;
      column.instance_name = instance;
      column.label = labels[s];
      for (const auto& front : group[s]->fronts) {
        column.hypervolumes.push_back(hypervolume(normalize_front(front, bounds), reference));
      }
      const auto count = static_cast<double>(column.hypervolumes.size());
      column.mean = std::accumulate(column.hypervolumes.begin(), column.hypervolumes.end(), 0.0) / count;
      double ss = 0.0;
      for (auto v : column.hypervolumes) ss += (v - column.mean) * (v - column.mean);
      column.stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
      report.columns.push_back(std::move(column));
    }

    auto best = std::max_element(report.columns.begin() + static_cast<std::ptrdiff_t>(first_column), report.columns.end(),
                                 [](const ColumnSummary& a, const ColumnSummary& b) { return a.mean < b.mean; });
    best->best = true;

    for (std::size_t x = first_column; x < report.columns.size(); ++x) {
      for (std::size_t y = x + 1; y < report.columns.size(); ++y) {
        PairwiseTest test{instance, report.columns[x].label, report.columns[y].label, std::nullopt, false};
        try {
          test.p_value = wilcoxon_rank_sum(report.columns[x].hypervolumes, report.columns[y].hypervolumes).p_value;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::DegenerateSample) test.p_value = 1.0;
          else if (e.code() != ErrorCode::InvalidArgument) throw;
        }
        test.significant = test.p_value && *test.p_value < alpha;
        report.tests.push_back(std::move(test));
      }
    }
  }
  return report;
}

ComparisonReport cmd_compare(const std::vector<fs::path>& result_dirs, double alpha) {
  if (result_dirs.size() < 2) throw Error(ErrorCode::InvalidArgument, "compare needs at least two result directories");
  std::vector<ResultSet> sets;
  for (const auto& dir : result_dirs) sets.push_back(load_result_set(dir));
  return compare_result_sets(sets, alpha);
}

void write_report(std::ostream& out, const ComparisonReport& report) {
  out << "Mean normalized hypervolume (* = best per instance)\n";
  out << std::left << std::setw(28) << "instance";
  for (const auto& label : report.labels) out << std::setw(16) << label;
  out << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& instance : report.instances) {
    out << std::setw(28) << instance;
    for (const auto& label : report.labels) {
      const auto* column = report.find(instance, label);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(4);
      if (column) cell << column->mean << (column->best ? "*" : "");
      else cell << "-";
      out << std::setw(16) << cell.str();
    }
    out << '\n';
  }
  out << "\nWilcoxon rank-sum, two-sided, alpha=" << report.alpha << '\n';
  for (const auto& test : report.tests) {
    out << test.instance_name << "  " << test.label_a << " vs " << test.label_b << "  p=";
    if (test.p_value) out << *test.p_value << (test.significant ? "  significant" : "");
    else out << "n/a";
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_hypervolume_csv(std::ostream& out, const ComparisonReport& report) {
  out << "instance,label,trial,hypervolume\n" << std::setprecision(17);
  for (const auto& column : report.columns) {
    for (std::size_t t = 0; t < column.hypervolumes.size(); ++t) {
      out << column.instance_name << ',' << column.label << ',' << t << ',' << column.hypervolumes[t] << '\n';
    }
  }
}

void write_table_csv(std::ostream& out, const ComparisonReport& report) {
  out << "instance,label,trials,mean,stddev,best\n" << std::setprecision(17);
  for (const auto& column : report.columns) {
    out << column.instance_name << ',' << column.label << ',' << column.hypervolumes.size() << ',' << column.mean << ','
        << column.stddev << ',' << (column.best ? 1 : 0) << '\n';
  }
}

}  // namespace mqap
