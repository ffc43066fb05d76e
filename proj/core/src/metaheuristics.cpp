#include "hhgso/metaheuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hhgso {

namespace {

// Writes the staged positions back into the cluster, clamped, and marks the
// agents for re-evaluation.
void commit_positions(ClusterView& cluster, std::vector<std::vector<double>>& staged) {
    for (std::size_t i = 0; i < cluster.agents.size(); ++i) {
        clamp_in_place(staged[i], *cluster.bounds);
        cluster.agents[i].position = std::move(staged[i]);
        cluster.agents[i].evaluated = false;
    }
}

std::vector<std::vector<double>> snapshot_positions(const ClusterView& cluster) {
    std::vector<std::vector<double>> old_positions;
    old_positions.reserve(cluster.agents.size());
    for (const Agent& agent : cluster.agents) {
        old_positions.push_back(agent.position);
    }
    return old_positions;
}

std::vector<double> snapshot_fitnesses(const ClusterView& cluster) {
    std::vector<double> fitnesses;
    fitnesses.reserve(cluster.agents.size());
    for (const Agent& agent : cluster.agents) {
        fitnesses.push_back(agent.fitness);
    }
    return fitnesses;
}

void require_cluster(const ClusterView& cluster, const char* op) {
    if (cluster.agents.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty cluster");
    }
    if (cluster.bounds == nullptr) {
        throw std::invalid_argument(std::string(op) + ": cluster has no bounds");
    }
}

} // namespace

std::string_view to_string(AlgorithmId id) {
    switch (id) {
    case AlgorithmId::kHenryGas: return "HenryGas";
    case AlgorithmId::kJaya: return "Jaya";
    case AlgorithmId::kSootyTern: return "SootyTern";
    case AlgorithmId::kButterfly: return "Butterfly";
    case AlgorithmId::kOwl: return "Owl";
    }
    return "?";
}

std::optional<AlgorithmId> parse_algorithm_id(std::string_view name) {
    for (AlgorithmId id : kAllAlgorithms) {
        if (name == to_string(id)) {
            return id;
        }
    }
    return std::nullopt;
}

void JayaUpdater::update(ClusterView cluster, const Agent& global_best,
                         const Agent& global_worst, std::size_t /*t*/,
                         std::size_t /*max_iter*/, RngStream& rng) {
    require_cluster(cluster, "jaya_update");
    const std::size_t dim = cluster.bounds->dimension();
    auto staged = snapshot_positions(cluster);

    for (std::size_t i = 0; i < cluster.agents.size(); ++i) {
        std::vector<double>& x = staged[i];
        for (std::size_t d = 0; d < dim; ++d) {
            const double r1 = rng.next_unit();
            const double r2 = rng.next_unit();
            const double magnitude = std::abs(x[d]);
            x[d] = x[d] + r1 * (global_best.position[d] - magnitude) -
                   r2 * (global_worst.position[d] - magnitude);
        }
    }
    commit_positions(cluster, staged);
}

void StoaUpdater::update(ClusterView cluster, const Agent& global_best,
                         const Agent& /*global_worst*/, std::size_t t,
                         std::size_t max_iter, RngStream& rng) {
    require_cluster(cluster, "stoa_update");
    if (max_iter == 0) {
        throw std::invalid_argument("stoa_update: max_iter must be >= 1");
    }
    const std::size_t dim = cluster.bounds->dimension();
    const double control = params_.control_initial -
                           static_cast<double>(t) * (params_.control_initial /
                                                     static_cast<double>(max_iter));
    auto staged = snapshot_positions(cluster);

    for (std::size_t i = 0; i < cluster.agents.size(); ++i) {
        const double attack = 0.5 * rng.next_unit();
        const double angle = 2.0 * std::numbers::pi * rng.next_unit();
        const double radius = params_.spiral_u * std::exp(angle * params_.spiral_v);
        const double spiral =
            radius * std::sin(angle) + radius * std::cos(angle) + radius * angle;

        std::vector<double>& x = staged[i];
        for (std::size_t d = 0; d < dim; ++d) {
            const double drift = control * x[d];
            const double gap = attack * (global_best.position[d] - x[d]);
            x[d] = (drift * gap * spiral) * global_best.position[d];
        }
    }
    commit_positions(cluster, staged);
}

double boa_fragrance(double sensory_modality, double intensity, double exponent) {
    return sensory_modality * std::pow(intensity, exponent);
}

std::vector<double> boa_intensities(std::span<const double> fitnesses) {
    const std::size_t n = fitnesses.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fitnesses[a] < fitnesses[b];
    });
    std::vector<double> intensities(n, 1.0);
    if (n < 2) {
        return intensities;
    }
    for (std::size_t rank = 0; rank < n; ++rank) {
        const double normalized = static_cast<double>(rank) / static_cast<double>(n - 1);
        intensities[order[rank]] = 1.0 / (1.0 + normalized);
    }
    return intensities;
}

void BoaUpdater::update(ClusterView cluster, const Agent& global_best,
                        const Agent& /*global_worst*/, std::size_t t,
                        std::size_t max_iter, RngStream& rng) {
    require_cluster(cluster, "boa_update");
    const std::size_t dim = cluster.bounds->dimension();
    const std::size_t n = cluster.agents.size();
    const double progress =
        max_iter == 0 ? 0.0 : static_cast<double>(t) / static_cast<double>(max_iter);
    const double exponent = params_.exponent_start +
                            (params_.exponent_end - params_.exponent_start) * progress;

    const auto old_positions = snapshot_positions(cluster);
    const auto fitnesses = snapshot_fitnesses(cluster);
    const auto intensities = boa_intensities(fitnesses);

    std::vector<std::vector<double>> staged = old_positions;
    for (std::size_t i = 0; i < n; ++i) {
        const double fragrance =
            boa_fragrance(params_.sensory_modality, intensities[i], exponent);
        const double s = rng.next_unit();
        std::vector<double>& x = staged[i];

        if (s < params_.switch_probability || n < 2) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r = rng.next_unit();
                x[d] = x[d] + (r * r * global_best.position[d] - x[d]) * fragrance;
            }
        } else {
            const std::size_t j = rng.next_int(n);
            const std::size_t k = rng.next_int(n);
            for (std::size_t d = 0; d < dim; ++d) {
                const double r = rng.next_unit();
                x[d] = x[d] + (r * r * old_positions[j][d] - old_positions[k][d]) * fragrance;
            }
        }
    }
    commit_positions(cluster, staged);
}

std::vector<double> osa_intensities(std::span<const double> fitnesses) {
    const auto [min_it, max_it] = std::minmax_element(fitnesses.begin(), fitnesses.end());
    const double spread = *max_it - *min_it;
    std::vector<double> intensities(fitnesses.size(), 0.0);
    if (spread <= 0.0) {
        return intensities;
    }
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        intensities[i] = (fitnesses[i] - *min_it) / spread;
    }
    return intensities;
}

void OsaUpdater::update(ClusterView cluster, const Agent& global_best,
                        const Agent& /*global_worst*/, std::size_t t,
                        std::size_t max_iter, RngStream& rng) {
    require_cluster(cluster, "osa_update");
    const std::size_t dim = cluster.bounds->dimension();
    const double beta =
        params_.beta_start *
        (1.0 - (max_iter == 0 ? 1.0
                              : static_cast<double>(t) / static_cast<double>(max_iter)));

    const auto fitnesses = snapshot_fitnesses(cluster);
    const auto intensities = osa_intensities(fitnesses);
    auto staged = snapshot_positions(cluster);

    for (std::size_t i = 0; i < cluster.agents.size(); ++i) {
        std::vector<double>& x = staged[i];
        double distance_sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = x[d] - global_best.position[d];
            distance_sq += diff * diff;
        }
        const double noise = rng.next_unit();
        // The singular 1/R^2 term is dropped when the agent sits on the prey.
        const double intensity_change =
            distance_sq > 0.0 ? intensities[i] / distance_sq + noise : noise;
        const double alpha = 0.5 * rng.next_unit();
        const double vole = rng.next_unit();
        const double sign = vole < 0.5 ? 1.0 : -1.0;

        for (std::size_t d = 0; d < dim; ++d) {
            const double pull = std::abs(alpha * global_best.position[d] - x[d]);
            x[d] = x[d] + sign * beta * intensity_change * pull;
        }
    }
    commit_positions(cluster, staged);
}

void HgsoUpdater::init_state(std::span<const std::size_t> cluster_sizes, RngStream& rng) {
    states_.clear();
    states_.reserve(cluster_sizes.size());
    for (const std::size_t size : cluster_sizes) {
        HgsoClusterState state;
        state.henry = params_.init_henry * (1.0 - rng.next_unit());
        state.dissolution = params_.init_dissolution * rng.next_unit();
        state.pressure.resize(size);
        for (double& p : state.pressure) {
            p = params_.init_pressure * rng.next_unit();
        }
        states_.push_back(std::move(state));
    }
}

void HgsoUpdater::set_state(std::size_t cluster_index, HgsoClusterState state) {
    if (states_.size() <= cluster_index) {
        states_.resize(cluster_index + 1);
    }
    states_[cluster_index] = std::move(state);
}

const HgsoClusterState& HgsoUpdater::state(std::size_t cluster_index) const {
    return states_.at(cluster_index);
}

void HgsoUpdater::update(ClusterView cluster, const Agent& global_best,
                         const Agent& /*global_worst*/, std::size_t t,
                         std::size_t max_iter, RngStream& rng) {
    require_cluster(cluster, "hgso_update");
    if (cluster.local_best == nullptr) {
        throw std::invalid_argument("hgso_update: cluster has no local best");
    }
    if (states_.size() <= cluster.index || states_[cluster.index].pressure.size() <
                                               cluster.agents.size()) {
        throw InternalError("hgso_update: state not initialized for cluster " +
                            std::to_string(cluster.index));
    }
    const std::size_t dim = cluster.bounds->dimension();
    HgsoClusterState& state = states_[cluster.index];

    const double temperature =
        std::exp(-static_cast<double>(t) /
                 static_cast<double>(std::max<std::size_t>(max_iter, 1)));
    state.henry *= std::exp(-state.dissolution *
                            (1.0 / temperature - 1.0 / params_.reference_temp));

    auto staged = snapshot_positions(cluster);
    for (std::size_t i = 0; i < cluster.agents.size(); ++i) {
        const double solubility =
            params_.henry_pressure_k * state.henry * state.pressure[i];
        const double denom = cluster.agents[i].fitness + params_.epsilon;
        if (denom == 0.0) {
            throw NumericError("hgso_update: zero fitness offset for agent " +
                               std::to_string(i) + " in cluster " +
                               std::to_string(cluster.index));
        }
        const double gamma = params_.interaction_beta *
                             std::exp(-(global_best.fitness + params_.epsilon) / denom);
        const double flag = rng.next_unit() < 0.5 ? 1.0 : -1.0;

        std::vector<double>& x = staged[i];
        for (std::size_t d = 0; d < dim; ++d) {
            const double r = rng.next_unit();
            const double toward_cluster_best =
                flag * r * gamma * (cluster.local_best->position[d] - x[d]);
            const double toward_global_best =
                flag * r * params_.global_influence *
                (solubility * global_best.position[d] - x[d]);
            x[d] = x[d] + toward_cluster_best + toward_global_best;
        }
    }
    commit_positions(cluster, staged);
}

std::unique_ptr<ClusterUpdater> make_updater(AlgorithmId id) {
    switch (id) {
    case AlgorithmId::kHenryGas: return std::make_unique<HgsoUpdater>();
    case AlgorithmId::kJaya: return std::make_unique<JayaUpdater>();
    case AlgorithmId::kSootyTern: return std::make_unique<StoaUpdater>();
    case AlgorithmId::kButterfly: return std::make_unique<BoaUpdater>();
    case AlgorithmId::kOwl: return std::make_unique<OsaUpdater>();
    }
    throw std::invalid_argument("make_updater: unknown algorithm id");
}

} // namespace hhgso
