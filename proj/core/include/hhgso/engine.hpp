#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hhgso/metaheuristics.hpp"
#include "hhgso/search_core.hpp"

namespace hhgso {

/// Reshuffle-probability bounds of the penalized/reward model.
inline constexpr double kRemapProbMax = 0.8;
inline constexpr double kRemapProbMin = 0.2;

/// Worst-agent replacement fraction range.
inline constexpr double kWorstFractionLow = 0.1;
inline constexpr double kWorstFractionHigh = 0.2;

/// Roster order used when none is configured.
std::vector<AlgorithmId> default_roster();

struct EngineConfig {
    std::size_t population_size = 50;
    std::size_t max_iterations = 100;
    std::uint64_t max_fitness_evaluations = 2500;
    std::size_t cluster_count = 5;
    std::vector<AlgorithmId> roster = default_roster();
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument unless population_size >= cluster_count
    /// >= 1, max_iterations >= 1, and the roster is non-empty with unique ids.
    void validate() const;
};

/// Linearly decaying reshuffle probability:
///   p(t) = p_max + t * (p_min - p_max) / max_iter
/// so p(0) = 0.8 and p(max_iter) = 0.2. Throws when max_iter == 0 or
/// t > max_iter.
double adaptive_probability(std::size_t t, std::size_t max_iter);

/// Contiguous index-order slices: (begin, size) per cluster. The first
/// population_size % cluster_count clusters receive one extra agent.
std::vector<std::pair<std::size_t, std::size_t>> partition(std::size_t population_size,
                                                           std::size_t cluster_count);

/// The live algorithm-to-cluster mapping. When cluster_count equals the
/// roster length the assignment is a bijection; clusters beyond the roster
/// all map to the gas-solubility host algorithm.
struct MappingState {
    std::vector<AlgorithmId> roster;     // current (possibly reshuffled) order
    std::vector<AlgorithmId> assignment; // cluster index -> algorithm

    /// Checks the bijection / host-leftover invariants; throws InternalError.
    void check_invariants(std::size_t cluster_count) const;
};

/// Builds the assignment from the roster's current order: the first
/// cluster_count entries, then the host algorithm for any leftover clusters.
MappingState assign_algorithms(std::size_t cluster_count, std::vector<AlgorithmId> roster);

/// Penalized/reward step. An improving iteration keeps the mapping (reward).
/// Otherwise one unit draw decides: u < adaptive_probability(t, max_iter)
/// reshuffles the roster by a uniform permutation and rebuilds the
/// assignment (penalty). Returns true when the mapping was rebuilt.
bool maybe_remap(MappingState& state, bool improved, std::size_t t, std::size_t max_iter,
                 RngStream& rng);

/// Picks the indices of the N_w worst agents, worst first, ties broken by
/// lower index, with N_w = max(1, floor(N * (u * 0.1 + 0.1))) from one draw.
std::vector<std::size_t> select_worst(const Population& population, RngStream& rng);

/// Outcome of one engine run. Costs are in the engine's internal minimizing
/// scale (equal to the objective value for minimizing objectives, its
/// negation for maximizing ones).
struct RunResult {
    Agent best;
    double best_cost = 0.0;
    std::size_t iterations_executed = 0;
    std::uint64_t evaluations_used = 0;

    /// Cluster-update ticks per algorithm, indexed by AlgorithmId.
    std::array<std::uint64_t, kAlgorithmCount> execution_counts{};

    /// best_cost after initialization and after each executed iteration
    /// (iterations_executed + 1 entries); non-increasing.
    std::vector<double> trace;

    /// Tick fractions summing to 1 (all zero for a run that never updated a
    /// cluster, e.g. a zero-evaluation budget).
    std::array<double, kAlgorithmCount> execution_fractions() const;
};

/// Runs the hybrid loop: partition the population into clusters, update each
/// cluster with its mapped algorithm, re-randomize the worst agents, refresh
/// the retained cluster/global bests, and apply the penalized/reward remap on
/// non-improving iterations. Halts at max_iterations or as soon as the
/// evaluation budget is met, checked after every cluster update and between
/// worst-agent replacements, so the budget is never exceeded by more than one
/// cluster's worth of evaluations (beyond the mandatory initialization).
///
/// Numeric failures from operators or the objective abort the run as
/// NumericError with iteration/cluster/algorithm context.
RunResult run(const EngineConfig& config, const Objective& objective);

} // namespace hhgso
