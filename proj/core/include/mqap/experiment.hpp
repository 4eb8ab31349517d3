#ifndef MQAP_EXPERIMENT_HPP
#define MQAP_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mqap/instance.hpp"
#include "mqap/island.hpp"
#include "mqap/metrics.hpp"

namespace mqap {

enum class ClockKind { Wall, Logical };

struct ExperimentConfig {
  std::optional<std::filesystem::path> instance_path;
  std::optional<InstanceSpec> generator;
  Algorithm algorithm = Algorithm::Memetic;
  std::size_t island_count = 1;
  std::size_t trials = 30;
  std::uint64_t base_seed = 1;
  /// Template for every island; island_id and seed are derived per island.
  /// population_size == 0 selects default_population_size(island_count).
  IslandConfig island;
  std::filesystem::path output_dir = "results";
  ClockKind clock = ClockKind::Wall;
  /// Cap on simultaneously running islands; 0 means one thread per island.
  std::size_t max_threads = 0;
  bool parallel_trials = false;

  void validate() const;
};

[[nodiscard]] constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index) noexcept {
  return base_seed + trial_index;
}
[[nodiscard]] constexpr std::uint64_t island_seed(std::uint64_t trial, std::size_t island_id) noexcept {
  return trial * 1000 + island_id;
}

/// Reads MQAP_THREADS; 0 when unset or unparsable.
std::size_t threads_from_environment();

struct RunResult {
  std::string instance_name;
  Algorithm algorithm = Algorithm::Memetic;
  std::size_t island_count = 1;
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  std::vector<Solution> front;
  double wall_seconds = 0.0;
  std::vector<IslandStats> islands;
  std::string front_file;
};

Instance load_experiment_instance(const ExperimentConfig& config);

/// Builds the per-island configs of one trial.
std::vector<IslandConfig> island_configs(const ExperimentConfig& config, std::size_t trial_index);

/// Runs one trial in memory (no files written).
RunResult run_trial(const Instance& instance, const ExperimentConfig& config, std::size_t trial_index);

/// Runs every trial, writes front_NNN.txt per trial and manifest.json into
/// config.output_dir. Throws InstanceLoadError / OutputWriteError.
std::vector<RunResult> cmd_run(const ExperimentConfig& config);

/// Lexicographic order on (objectives, permutation); makes front files
/// reproducible byte for byte.
void sort_front(std::vector<Solution>& front);

// Front file: "#"-prefixed header lines, then one solution per line:
// permutation entries, a "|" separator, objective values.
void write_front(std::ostream& out, std::vector<Solution> front, const std::string& instance_name,
                 std::optional<std::uint64_t> seed);

struct FrontFile {
  std::string instance_name;
  std::optional<std::uint64_t> seed;
  std::vector<Solution> solutions;
};

FrontFile read_front(std::istream& in);
FrontFile read_front_file(const std::filesystem::path& path);

/// Exact Pareto front by enumerating all n! permutations. Throws TooLarge
/// when n > 10.
inline constexpr std::size_t kMaxEnumerationSize = 10;
std::vector<Solution> enumerate_front(const Instance& instance);

struct ResultSet {
  std::filesystem::path directory;
  std::string instance_name;
  Algorithm algorithm = Algorithm::Memetic;
  std::size_t island_count = 1;
  std::vector<std::uint64_t> seeds;
  std::vector<Front> fronts;
};

ResultSet load_result_set(const std::filesystem::path& directory);

struct ColumnSummary {
  std::string instance_name;
  std::string label;
  std::vector<double> hypervolumes;
  double mean = 0.0;
  double stddev = 0.0;
  bool best = false;
};

struct PairwiseTest {
  std::string instance_name;
  std::string label_a;
  std::string label_b;
  std::optional<double> p_value;
  bool significant = false;
};

struct ComparisonReport {
  double alpha = 0.05;
  std::vector<std::string> instances;
  std::vector<std::string> labels;
  std::vector<ColumnSummary> columns;
  std::vector<PairwiseTest> tests;

  [[nodiscard]] const ColumnSummary* find(const std::string& instance, const std::string& label) const;
};

/// Pools every front of an instance across result sets, normalises with the
/// union bounds, takes the reference point as the componentwise maximum of
/// the pooled points (+0.01) and reports per-trial hypervolume, means and pairwise
/// two-sided rank-sum tests. Throws InstanceMismatch when an instance is
/// covered by a single result set only.
ComparisonReport compare_result_sets(const std::vector<ResultSet>& sets, double alpha = 0.05);
ComparisonReport cmd_compare(const std::vector<std::filesystem::path>& result_dirs, double alpha = 0.05);

void write_report(std::ostream& out, const ComparisonReport& report);
void write_hypervolume_csv(std::ostream& out, const ComparisonReport& report);
void write_table_csv(std::ostream& out, const ComparisonReport& report);

}  // namespace mqap

#endif  // MQAP_EXPERIMENT_HPP
