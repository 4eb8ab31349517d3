#include "mqap/island.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "mqap/error.hpp"
#include "mqap/ranking.hpp"

namespace mqap {

std::string_view to_string(Algorithm algorithm) noexcept {
  return algorithm == Algorithm::Memetic ? "memetic" : "nsga2";
}

std::string_view to_string(LocalSearchSeeds seeds) noexcept {
  return seeds == LocalSearchSeeds::Archive ? "archive" : "archive+offspring";
}

LocalSearchSeeds parse_local_search_seeds(std::string_view text) {
  if (text == "archive") return LocalSearchSeeds::Archive;
  if (text == "archive+offspring") return LocalSearchSeeds::ArchiveAndOffspring;
  throw Error(ErrorCode::InvalidArgument, "unknown local search seeding '" + std::string(text) + "'");
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "memetic") return Algorithm::Memetic;
  if (text == "nsga2") return Algorithm::Nsga2Baseline;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(text) + "'");
}

void IslandConfig::validate() const {
  if (population_size < 2) throw Error(ErrorCode::InvalidArgument, "population size must be >= 2");
  if (epoch < 1) throw Error(ErrorCode::InvalidArgument, "epoch must be >= 1");
  if (migrants < 1 || migrants > archive_capacity) {
    throw Error(ErrorCode::InvalidArgument, "migrants must lie in [1, archive capacity]");
  }
  if (archive_capacity < 1) throw Error(ErrorCode::InvalidArgument, "archive capacity must be >= 1");
  if (tournament_size < 1) throw Error(ErrorCode::InvalidArgument, "tournament size must be >= 1");
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(variation.crossover_probability) || !unit(variation.mutation_probability)) {
    throw Error(ErrorCode::InvalidArgument, "variation probabilities must lie in [0, 1]");
  }
  if (local_search.time_budget <= Duration::zero()) {
    throw Error(ErrorCode::InvalidArgument, "local search budget must be positive");
  }
}

std::size_t default_population_size(std::size_t island_count) {
  if (island_count == 0) throw Error(ErrorCode::InvalidArgument, "island count must be >= 1");
  if (island_count >= 16) return 13;
  return std::max<std::size_t>(2, (100 + island_count - 1) / island_count);
}

std::size_t Topology::edge_count() const {
  std::size_t total = 0;
  for (const auto& out : edges) total += out.size();
  return total;
}

Topology build_topology(TopologyKind kind, std::size_t island_count) {
  if (island_count == 0) throw Error(ErrorCode::InvalidArgument, "island count must be >= 1");
  Topology topo;
  topo.edges.resize(island_count);
  for (std::size_t i = 0; i < island_count; ++i) {
    topo.islands.push_back(i);
    switch (kind) {
      case TopologyKind::Complete:
        for (std::size_t j = 0; j < island_count; ++j) {
          if (j != i) topo.edges[i].push_back(j);
        }
        break;
    }
  }
  return topo;
}

bool Channel::send(MigrantBatch batch) {
  std::lock_guard lock(mutex_);
  if (closed_) return false;
  queue_.push_back(std::move(batch));
  ++delivered_;
  return true;
}

std::vector<MigrantBatch> Channel::drain() {
  std::deque<MigrantBatch> taken;
  {
    std::lock_guard lock(mutex_);
    taken.swap(queue_);
  }
  return {std::make_move_iterator(taken.begin()), std::make_move_iterator(taken.end())};
}

void Channel::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  queue_.clear();
}

bool Channel::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

std::size_t Channel::batches_delivered() const {
  std::lock_guard lock(mutex_);
  return delivered_;
}

std::size_t Channel::pending() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::vector<Solution> check_migrants(Channel& inbox, std::size_t* batches) {
  auto drained = inbox.drain();
  if (batches) *batches = drained.size();
  std::vector<Solution> out;
  for (auto& batch : drained) {
    for (auto& sol : batch.solutions) out.push_back(std::move(sol));
  }
  return out;
}

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(ExecutionSlots* slots) : slots_(slots) {
    if (slots_) slots_->acquire();
  }
  ~SlotGuard() {
    if (slots_) slots_->release();
  }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  ExecutionSlots* slots_;
};

std::vector<Solution> random_population(const Instance& instance, std::size_t size, Rng& rng) {
  std::vector<Solution> pop;
  pop.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    auto perm = identity_permutation(instance.n());
    std::shuffle(perm.begin(), perm.end(), rng);
    pop.push_back(make_solution(instance, std::move(perm)));
  }
  return pop;
}

// Tournament-selected parent pairs, each recombined with probability pb_c
// and mutated; exactly n_p evaluated children.
std::vector<Solution> make_offspring(const std::vector<Solution>& parents, const IslandConfig& config,
                                     const Instance& instance, Rng& rng) {
  std::vector<Solution> offspring;
  offspring.reserve(config.population_size + 1);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution crossover(config.variation.crossover_probability);
  while (offspring.size() < config.population_size) {
    const Solution* a = &tournament_select(parents, config.tournament_size, fitness_then_diversity_better, rng);
    const Solution* b = &tournament_select(parents, config.tournament_size, fitness_then_diversity_better, rng);
    if (coin(rng)) std::swap(a, b);
    Permutation c1 = a->perm;
    Permutation c2 = b->perm;
    if (crossover(rng)) std::tie(c1, c2) = cycle_crossover(a->perm, b->perm);
    c1 = swap_mutation(std::move(c1), config.variation.mutation_probability, rng);
    c2 = swap_mutation(std::move(c2), config.variation.mutation_probability, rng);
    offspring.push_back(make_solution(instance, std::move(c1)));
    if (offspring.size() < config.population_size) offspring.push_back(make_solution(instance, std::move(c2)));
  }
  return offspring;
}

std::vector<Solution> truncate_by_fitness_then_diversity(std::vector<Solution> pop, std::size_t capacity) {
  auto ranked = rank_and_crowd(std::move(pop));
  auto& members = ranked.members;
  std::stable_sort(members.begin(), members.end(), fitness_then_diversity_better);
  if (members.size() > capacity) members.resize(capacity);
  return std::move(members);
}

void send_migrants(const Archive& archive, const IslandConfig& config, std::size_t generation, IslandPorts& ports,
                   Rng& rng, IslandStats& stats) {
  if (archive.empty()) return;
  const auto ranked = rank_and_crowd(archive.members());
  MigrantBatch batch;
  batch.sender = config.island_id;
  batch.generation = generation;
  for (std::size_t k = 0; k < config.migrants; ++k) {
    batch.solutions.push_back(
        tournament_select(ranked.members, config.tournament_size, fitness_then_diversity_better, rng));
  }
  ++stats.send_events;
  for (auto& out : ports.outboxes) {
    stats.migrants_sent += batch.solutions.size();
    if (!out->send(batch)) stats.migrants_dropped += batch.solutions.size();
  }
}

// Shared generation scaffolding for both algorithms: budget checks, slot
// acquisition, migration bookkeeping and teardown.
template <typename Evolve>
IslandResult run_loop(const IslandConfig& config, const Instance& instance, IslandPorts& ports, Clock& clock,
                      ExecutionSlots* slots, Evolve&& evolve) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  IslandResult result{Archive(config.archive_capacity), {}};
  result.stats.island_id = config.island_id;
  auto& archive = result.archive;
  auto& stats = result.stats;

  std::vector<Solution> population;
  {
    SlotGuard guard(slots);
    population = rank_and_crowd(random_population(instance, config.population_size, rng)).members;
    archive.insert(population);
  }

  const auto start = clock.now();
  for (std::size_t generation = 1; generation <= config.max_generations; ++generation) {
    if (config.time_budget && clock.now() - start >= *config.time_budget) break;
    if (config.on_generation) config.on_generation(generation);
    SlotGuard guard(slots);

    population = evolve(std::move(population), archive, rng);

    std::vector<Solution> migrants;
    if (ports.inbox) {
      std::size_t batches = 0;
      migrants = check_migrants(*ports.inbox, &batches);
      stats.batches_received += batches;
      stats.migrants_received += migrants.size();
    }
    archive.insert(population);
    archive.insert(migrants);
    if (generation % config.epoch == 0) send_migrants(archive, config, generation, ports, rng, stats);
    population = elitist_integration(std::move(population), migrants, config.population_size);
    stats.generations = generation;
  }

  if (ports.inbox) ports.inbox->close();
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace

IslandResult run_memetic_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                                ExecutionSlots* slots) {
  return run_loop(config, instance, ports, clock, slots,
                  [&](std::vector<Solution> population, Archive& archive, Rng& rng) {
                    auto offspring = make_offspring(population, config, instance, rng);
                    archive.insert(offspring);
                    if (config.local_search_seeds == LocalSearchSeeds::ArchiveAndOffspring) {
                      auto seeds = archive.members();
                      seeds.insert(seeds.end(), offspring.begin(), offspring.end());
                      population = dominance_based_local_search(seeds, config.local_search, instance, rng, clock);
                    } else {
                      population =
                          dominance_based_local_search(archive.members(), config.local_search, instance, rng, clock);
                    }
                    if (population.size() > config.population_size) {
                      return truncate_by_fitness_then_diversity(std::move(population), config.population_size);
                    }
                    return rank_and_crowd(std::move(population)).members;
                  });
}

IslandResult run_nsga2_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                              ExecutionSlots* slots) {
  return run_loop(config, instance, ports, clock, slots,
                  [&](std::vector<Solution> population, Archive& archive, Rng& rng) {
                    auto offspring = make_offspring(population, config, instance, rng);
                    archive.insert(offspring);
                    return elitist_integration(std::move(population), offspring, config.population_size);
                  });
}

IslandResult run_island(const IslandConfig& config, const Instance& instance, IslandPorts ports, Clock& clock,
                        ExecutionSlots* slots) {
  if (config.algorithm == Algorithm::Memetic) return run_memetic_island(config, instance, std::move(ports), clock, slots);
  return run_nsga2_island(config, instance, std::move(ports), clock, slots);
}

std::vector<IslandResult> run_island_model(const Instance& instance, const std::vector<IslandConfig>& configs,
                                           const Topology& topology, const ClockFactory& make_clock,
                                           std::size_t max_concurrent) {
  const auto count = configs.size();
  if (count == 0 || topology.edges.size() != count) {
    throw Error(ErrorCode::InvalidArgument, "island configs and topology disagree on the island count");
  }
  auto clock_for = [&]() -> std::unique_ptr<Clock> {
    if (make_clock) return make_clock();
    return std::make_unique<SteadyClock>();
  };

  std::vector<std::shared_ptr<Channel>> inboxes;
  for (std::size_t i = 0; i < count; ++i) inboxes.push_back(std::make_shared<Channel>());
  std::vector<IslandPorts> ports(count);
  for (std::size_t i = 0; i < count; ++i) {
    ports[i].inbox = inboxes[i];
    for (auto dest : topology.edges[i]) ports[i].outboxes.push_back(inboxes[dest]);
  }

  std::unique_ptr<ExecutionSlots> slots;
  if (max_concurrent > 0 && max_concurrent < count) {
    slots = std::make_unique<ExecutionSlots>(static_cast<std::ptrdiff_t>(max_concurrent));
  }

  std::vector<std::optional<IslandResult>> results(count);
  std::vector<std::exception_ptr> failures(count);
  auto body = [&](std::size_t i) {
    try {
      auto clock = clock_for();
      results[i] = run_island(configs[i], instance, ports[i], *clock, slots.get());
    } catch (...) {
      failures[i] = std::current_exception();
      inboxes[i]->close();
    }
  };

  if (count == 1) {
    body(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(count);
    for (std::size_t i = 0; i < count; ++i) threads.emplace_back(body, i);
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<IslandResult> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace mqap
