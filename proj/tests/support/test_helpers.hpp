#pragma once

#include <deque>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "hhgso/search_core.hpp"

namespace hhgso::testing {

/// Replays a recorded unit-draw sequence; draws past the end are a test bug.
/// Values may include the closed endpoint 1.0 when a formula case needs it.
class ScriptedRng final : public RngStream {
  public:
    ScriptedRng(std::initializer_list<double> values) : values_(values) {}
    explicit ScriptedRng(std::vector<double> values)
        : values_(values.begin(), values.end()) {}

    double next_unit() override {
        if (values_.empty()) {
            throw std::logic_error("ScriptedRng: sequence exhausted");
        }
        const double value = values_.front();
        values_.pop_front();
        return value;
    }

    std::size_t remaining() const { return values_.size(); }

  private:
    std::deque<double> values_;
};

/// Sum of squared components; minimum 0 at the origin.
class SphereObjective final : public Objective {
  public:
    SphereObjective(std::size_t dimension, double lo = -10.0, double hi = 10.0)
        : bounds_(Bounds::uniform(dimension, lo, hi)) {}

    std::size_t dimension() const override { return bounds_.dimension(); }
    const Bounds& bounds() const override { return bounds_; }
    Direction direction() const override { return Direction::kMinimize; }
    double evaluate(std::span<const double> position) const override {
        double sum = 0.0;
        for (const double x : position) {
            sum += x * x;
        }
        return sum;
    }

  private:
    Bounds bounds_;
};

inline Agent make_agent(std::vector<double> position, double fitness) {
    Agent agent;
    agent.position = std::move(position);
    agent.fitness = fitness;
    agent.evaluated = true;
    return agent;
}

} // namespace hhgso::testing
