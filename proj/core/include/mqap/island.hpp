#ifndef MQAP_ISLAND_HPP
#define MQAP_ISLAND_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string_view>
#include <vector>

#include "mqap/archive.hpp"
#include "mqap/clock.hpp"
#include "mqap/genetics.hpp"
#include "mqap/localsearch.hpp"

namespace mqap {

enum class Algorithm { Memetic, Nsga2Baseline };

std::string_view to_string(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view text);

/// Where the memetic local search starts each generation: the archive alone,
/// or the archive plus that generation's offspring.
enum class LocalSearchSeeds { Archive, ArchiveAndOffspring };

std::string_view to_string(LocalSearchSeeds seeds) noexcept;
LocalSearchSeeds parse_local_search_seeds(std::string_view text);

struct IslandConfig {
  std::size_t island_id = 0;
  std::size_t population_size = 20;
  std::size_t epoch = 5;
  std::size_t migrants = 2;
  std::size_t max_generations = 100;
  VariationParams variation;
  LocalSearchParams local_search;
  Algorithm algorithm = Algorithm::Memetic;
  std::uint64_t seed = 1;
  std::optional<Duration> time_budget;
  std::size_t archive_capacity = kDefaultArchiveCapacity;
  std::size_t tournament_size = kDefaultTournamentSize;
  LocalSearchSeeds local_search_seeds = LocalSearchSeeds::Archive;
  /// Invoked at the top of every generation (1-based); test instrumentation.
  std::function<void(std::size_t generation)> on_generation;

  /// Throws InvalidArgument unless n_p >= 2, e >= 1, 1 <= migrants <= capacity.
  void validate() const;
};

/// Population per island: ceil(100 / N)
/// below 16 islands, 13 from 16 islands upwards, never below 2.
std::size_t default_population_size(std::size_t island_count);

enum class TopologyKind { Complete };

struct Topology {
  std::vector<std::size_t> islands;
  /// edges[i] lists the destinations of island i.
  std::vector<std::vector<std::size_t>> edges;

  [[nodiscard]] std::size_t edge_count() const;
};

Topology build_topology(TopologyKind kind, std::size_t island_count);

struct MigrantBatch {
  std::size_t sender = 0;
  std::size_t generation = 0;
  std::vector<Solution> solutions;
};

/// Unbounded multi-producer queue feeding one island. Sends never block on
/// the receiver; once closed, sends are dropped.
class Channel {
 public:
  /// Returns false when the channel has been closed.
  bool send(MigrantBatch batch);
  /// Removes and returns everything queued right now.
  std::vector<MigrantBatch> drain();
  void close();

  [[nodiscard]] bool closed() const;
  [[nodiscard]] std::size_t batches_delivered() const;
  [[nodiscard]] std::size_t pending() const;

 private:
  mutable std::mutex mutex_;
  std::deque<MigrantBatch> queue_;
  std::size_t delivered_ = 0;
  bool closed_ = false;
};

struct IslandPorts {
  std::shared_ptr<Channel> inbox;
  std::vector<std::shared_ptr<Channel>> outboxes;
};

/// Non-blocking: flattens all currently queued batches.
std::vector<Solution> check_migrants(Channel& inbox, std::size_t* batches = nullptr);

/// Caps how many islands execute a generation at the same moment.
using ExecutionSlots = std::counting_semaphore<>;

struct IslandStats {
  std::size_t island_id = 0;
  std::size_t generations = 0;
  std::size_t send_events = 0;
  /// Solutions dispatched, counted once per destination.
  std::size_t migrants_sent = 0;
  /// Part of migrants_sent addressed to islands that had already finished.
  std::size_t migrants_dropped = 0;
  std::size_t migrants_received = 0;
  std::size_t batches_received = 0;
  double wall_seconds = 0.0;
};

struct IslandResult {
  Archive archive;
  IslandStats stats;
};

IslandResult run_memetic_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                                ExecutionSlots* slots = nullptr);
IslandResult run_nsga2_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                              ExecutionSlots* slots = nullptr);
IslandResult run_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                        ExecutionSlots* slots = nullptr);

using ClockFactory = std::function<std::unique_ptr<Clock>()>;

/// One thread per island wired by `topology`; joins all and returns the
/// per-island results in island order. `max_concurrent` of 0 means no cap.
std::vector<IslandResult> run_island_model(const Instance& instance, const std::vector<IslandConfig>& configs,
                                           const Topology& topology, const ClockFactory& make_clock = {},
                                           std::size_t max_concurrent = 0);

}  // namespace mqap

#endif  // MQAP_ISLAND_HPP
