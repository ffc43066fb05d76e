#include "hhgso/search_core.hpp"

#include <algorithm>
#include <cmath>

namespace hhgso {

void Bounds::validate() const {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("bounds: lower/upper length mismatch (" +
                                    std::to_string(lower.size()) + " vs " +
                                    std::to_string(upper.size()) + ")");
    }
    for (std::size_t d = 0; d < lower.size(); ++d) {
        if (!(lower[d] <= upper[d])) {
            throw std::invalid_argument("bounds: lower > upper at dimension " +
                                        std::to_string(d));
        }
    }
}

Bounds Bounds::uniform(std::size_t dimension, double lo, double hi) {
    Bounds b{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
    b.validate();
    return b;
}

void clamp_in_place(std::span<double> position, const Bounds& bounds) {
    if (position.size() != bounds.dimension()) {
        throw std::invalid_argument("clamp: position length " +
                                    std::to_string(position.size()) +
                                    " does not match bounds dimension " +
                                    std::to_string(bounds.dimension()));
    }
    for (std::size_t d = 0; d < position.size(); ++d) {
        double x = position[d];
        if (std::isnan(x)) {
            x = bounds.lower[d];
        }
        position[d] = std::min(bounds.upper[d], std::max(bounds.lower[d], x));
    }
}

std::vector<double> clamp(std::vector<double> position, const Bounds& bounds) {
    clamp_in_place(position, bounds);
    return position;
}

double Population::evaluate_agent(std::size_t index, const Objective& objective) {
    Agent& agent = agents.at(index);
    const double value = objective.evaluate(agent.position);
    ++evaluation_count;
    if (!std::isfinite(value)) {
        throw NumericError("objective returned non-finite value for agent " +
                           std::to_string(index));
    }
    agent.fitness = value;
    agent.evaluated = true;
    return value;
}

Population init_population(std::size_t n, const Objective& objective, RngStream& rng) {
    if (n == 0) {
        throw std::invalid_argument("init_population: population size must be >= 1");
    }
    const Bounds& bounds = objective.bounds();
    bounds.validate();
    if (bounds.dimension() != objective.dimension()) {
        throw std::invalid_argument("init_population: bounds dimension mismatch");
    }

    Population population;
    population.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Agent& agent = population.agents[i];
        agent.position.resize(bounds.dimension());
        for (std::size_t d = 0; d < bounds.dimension(); ++d) {
            const double r = rng.next_unit();
            agent.position[d] = bounds.lower[d] + r * (bounds.upper[d] - bounds.lower[d]);
        }
        population.evaluate_agent(i, objective);
    }
    return population;
}

} // namespace hhgso
