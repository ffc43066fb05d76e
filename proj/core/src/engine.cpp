#include "hhgso/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace hhgso {

std::vector<AlgorithmId> default_roster() {
    return {AlgorithmId::kJaya, AlgorithmId::kSootyTern, AlgorithmId::kOwl,
            AlgorithmId::kButterfly, AlgorithmId::kHenryGas};
}

void EngineConfig::validate() const {
    if (cluster_count == 0) {
        throw std::invalid_argument("engine config: cluster_count must be >= 1");
    }
    if (population_size < cluster_count) {
        throw std::invalid_argument("engine config: population_size (" +
                                    std::to_string(population_size) +
                                    ") must be >= cluster_count (" +
                                    std::to_string(cluster_count) + ")");
    }
    if (max_iterations == 0) {
        throw std::invalid_argument("engine config: max_iterations must be >= 1");
    }
    if (roster.empty()) {
        throw std::invalid_argument("engine config: roster must not be empty");
    }
    std::set<AlgorithmId> seen(roster.begin(), roster.end());
    if (seen.size() != roster.size()) {
        throw std::invalid_argument("engine config: roster ids must be unique");
    }
}

double adaptive_probability(std::size_t t, std::size_t max_iter) {
    if (max_iter == 0) {
        throw std::invalid_argument("adaptive_probability: max_iter must be >= 1");
    }
    if (t > max_iter) {
        throw std::invalid_argument("adaptive_probability: t must be <= max_iter");
    }
    const double p = kRemapProbMax + static_cast<double>(t) *
                                         (kRemapProbMin - kRemapProbMax) /
                                         static_cast<double>(max_iter);
    // Rounding must not push the endpoints outside [p_min, p_max].
    return std::min(kRemapProbMax, std::max(kRemapProbMin, p));
}

std::vector<std::pair<std::size_t, std::size_t>> partition(std::size_t population_size,
                                                           std::size_t cluster_count) {
    if (cluster_count == 0) {
        throw std::invalid_argument("partition: cluster_count must be >= 1");
    }
    if (population_size < cluster_count) {
        throw std::invalid_argument("partition: population smaller than cluster count");
    }
    const std::size_t base = population_size / cluster_count;
    const std::size_t extra = population_size % cluster_count;
    std::vector<std::pair<std::size_t, std::size_t>> slices;
    slices.reserve(cluster_count);
    std::size_t begin = 0;
    for (std::size_t c = 0; c < cluster_count; ++c) {
        const std::size_t size = base + (c < extra ? 1 : 0);
        slices.emplace_back(begin, size);
        begin += size;
    }
    return slices;
}

void MappingState::check_invariants(std::size_t cluster_count) const {
    if (assignment.size() != cluster_count) {
        throw InternalError("mapping: assignment size mismatch");
    }
    const std::size_t direct = std::min(cluster_count, roster.size());
    for (std::size_t c = 0; c < direct; ++c) {
        if (assignment[c] != roster[c]) {
            throw InternalError("mapping: assignment diverged from roster order");
        }
    }
    for (std::size_t c = roster.size(); c < cluster_count; ++c) {
        if (assignment[c] != AlgorithmId::kHenryGas) {
            throw InternalError("mapping: leftover cluster not mapped to HenryGas");
        }
    }
}

MappingState assign_algorithms(std::size_t cluster_count, std::vector<AlgorithmId> roster) {
    if (roster.empty()) {
        throw std::invalid_argument("assign_algorithms: roster must not be empty");
    }
    MappingState state;
    state.roster = std::move(roster);
    state.assignment.reserve(cluster_count);
    for (std::size_t c = 0; c < cluster_count; ++c) {
        state.assignment.push_back(c < state.roster.size() ? state.roster[c]
                                                           : AlgorithmId::kHenryGas);
    }
    return state;
}

bool maybe_remap(MappingState& state, bool improved, std::size_t t, std::size_t max_iter,
                 RngStream& rng) {
    if (improved) {
        return false;
    }
    const double u = rng.next_unit();
    if (u >= adaptive_probability(t, max_iter)) {
        return false;
    }
    shuffle(state.roster, rng);
    state = assign_algorithms(state.assignment.size(), std::move(state.roster));
    return true;
}

std::vector<std::size_t> select_worst(const Population& population, RngStream& rng) {
    const std::size_t n = population.size();
    if (n == 0) {
        throw std::invalid_argument("select_worst: empty population");
    }
    const double fraction =
        rng.next_unit() * (kWorstFractionHigh - kWorstFractionLow) + kWorstFractionLow;
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction)));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = population.agents[a].fitness;
        const double fb = population.agents[b].fitness;
        if (fa != fb) {
            return fa > fb; // worst first
        }
        return a < b;
    });
    order.resize(std::min(count, n));
    return order;
}

std::array<double, kAlgorithmCount> RunResult::execution_fractions() const {
    std::array<double, kAlgorithmCount> fractions{};
    const std::uint64_t total =
        std::accumulate(execution_counts.begin(), execution_counts.end(), std::uint64_t{0});
    if (total == 0) {
        return fractions;
    }
    for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
        fractions[i] =
            static_cast<double>(execution_counts[i]) / static_cast<double>(total);
    }
    return fractions;
}

namespace {

// Strictly-better replacement keeps retained snapshots monotone.
void offer(Agent& best, const Agent& candidate) {
    if (candidate.fitness < best.fitness) {
        best = candidate;
    }
}

std::size_t best_index_in(const Population& population, std::size_t begin,
                          std::size_t size) {
    std::size_t best = begin;
    for (std::size_t i = begin + 1; i < begin + size; ++i) {
        if (population.agents[i].fitness < population.agents[best].fitness) {
            best = i;
        }
    }
    return best;
}

Agent current_global_worst(const Population& population) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population.agents[i].fitness > population.agents[worst].fitness) {
            worst = i;
        }
    }
    return population.agents[worst];
}

[[noreturn]] void rethrow_with_context(const NumericError& error, std::size_t iteration,
                                       std::size_t cluster, AlgorithmId algorithm) {
    throw NumericError("iteration " + std::to_string(iteration) + ", cluster " +
                       std::to_string(cluster) + ", algorithm " +
                       std::string(to_string(algorithm)) + ": " + error.what());
}

} // namespace

RunResult run(const EngineConfig& config, const Objective& objective) {
    config.validate();
    if (objective.dimension() == 0) {
        throw std::invalid_argument("run: objective dimension must be >= 1");
    }
    const MinimizingView view(objective);
    const Bounds& bounds = objective.bounds();
    bounds.validate();

    Mt64Stream rng(config.seed);
    const auto slices = partition(config.population_size, config.cluster_count);

    // One updater instance per algorithm; leftover clusters may map to the
    // host algorithm even when it is not on the roster.
    std::array<std::unique_ptr<ClusterUpdater>, kAlgorithmCount> updaters;
    for (AlgorithmId id : kAllAlgorithms) {
        updaters[static_cast<std::size_t>(id)] = make_updater(id);
    }
    auto& hgso = static_cast<HgsoUpdater&>(
        *updaters[static_cast<std::size_t>(AlgorithmId::kHenryGas)]);

    // Parameter state is drawn before the population, in cluster order.
    std::vector<std::size_t> cluster_sizes;
    cluster_sizes.reserve(slices.size());
    for (const auto& [begin, size] : slices) {
        cluster_sizes.push_back(size);
    }
    hgso.init_state(cluster_sizes, rng);

    Population population = init_population(config.population_size, view, rng);

    std::vector<Agent> cluster_bests;
    cluster_bests.reserve(slices.size());
    for (const auto& [begin, size] : slices) {
        cluster_bests.push_back(population.agents[best_index_in(population, begin, size)]);
    }
    Agent global_best = cluster_bests.front();
    for (const Agent& candidate : cluster_bests) {
        offer(global_best, candidate);
    }

    MappingState mapping = assign_algorithms(config.cluster_count, config.roster);
    mapping.check_invariants(config.cluster_count);

    RunResult result;
    result.trace.push_back(global_best.fitness);

    bool stop = population.evaluation_count >= config.max_fitness_evaluations;
    std::size_t t = 0;

    while (!stop && t < config.max_iterations) {
        const double previous_best = global_best.fitness;
        // Operators see the global best selected at the end of the previous
        // iteration, not one refreshed mid-iteration.
        const Agent frozen_best = global_best;

        for (std::size_t c = 0; c < config.cluster_count && !stop; ++c) {
            const auto [begin, size] = slices[c];
            const AlgorithmId algorithm = mapping.assignment[c];
            const Agent global_worst = current_global_worst(population);
            ClusterView cluster{
                std::span<Agent>(population.agents.data() + begin, size),
                &cluster_bests[c], &bounds, c};

            try {
                updaters[static_cast<std::size_t>(algorithm)]->update(
                    cluster, frozen_best, global_worst, t, config.max_iterations, rng);
                ++result.execution_counts[static_cast<std::size_t>(algorithm)];
                for (std::size_t i = begin; i < begin + size; ++i) {
                    population.evaluate_agent(i, view);
                    offer(cluster_bests[c], population.agents[i]);
                }
            } catch (const NumericError& error) {
                rethrow_with_context(error, t, c, algorithm);
            }

            if (population.evaluation_count >= config.max_fitness_evaluations) {
                stop = true;
            }
        }

        if (!stop) {
            const auto worst_indices = select_worst(population, rng);
            for (const std::size_t index : worst_indices) {
                if (population.evaluation_count >= config.max_fitness_evaluations) {
                    stop = true;
                    break;
                }
                Agent& agent = population.agents[index];
                for (std::size_t d = 0; d < bounds.dimension(); ++d) {
                    const double r = rng.next_unit();
                    agent.position[d] =
                        bounds.lower[d] + r * (bounds.upper[d] - bounds.lower[d]);
                }
                population.evaluate_agent(index, view);
                // Replacements can improve a cluster's retained best too.
                for (std::size_t c = 0; c < slices.size(); ++c) {
                    if (index >= slices[c].first &&
                        index < slices[c].first + slices[c].second) {
                        offer(cluster_bests[c], agent);
                        break;
                    }
                }
            }
        }

        for (const Agent& candidate : cluster_bests) {
            offer(global_best, candidate);
        }

        if (!stop) {
            const bool improved = global_best.fitness < previous_best;
            maybe_remap(mapping, improved, t, config.max_iterations, rng);
            mapping.check_invariants(config.cluster_count);
        }

        ++t;
        result.trace.push_back(global_best.fitness);
        if (population.evaluation_count >= config.max_fitness_evaluations) {
            stop = true;
        }
    }

    result.best = global_best;
    result.best_cost = global_best.fitness;
    result.iterations_executed = t;
    result.evaluations_used = population.evaluation_count;
    return result;
}

} // namespace hhgso
