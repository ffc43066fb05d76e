#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhgso/rng.hpp"

namespace hhgso {

/// Raised when an objective produces a non-finite value or a formula hits a
/// genuine singularity that cannot be sanitized away.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by text-format readers (dataset files, covering-array specs).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when an input would exceed a configured resource cap.
class ResourceLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised on broken internal invariants; indicates a bug, not bad input.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

enum class Direction { kMinimize, kMaximize };

/// Per-dimension box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dimension() const { return lower.size(); }

    /// Throws std::invalid_argument unless lengths match and
    /// lower[d] <= upper[d] for every dimension.
    void validate() const;

    static Bounds uniform(std::size_t dimension, double lo, double hi);
};

/// Saturating projection onto the box. NaN components are replaced with the
/// lower bound, +/-infinity with the nearest bound, before projecting.
void clamp_in_place(std::span<double> position, const Bounds& bounds);

/// Copying variant of clamp_in_place. Throws std::invalid_argument on a
/// length mismatch; in-bounds input is returned unchanged.
std::vector<double> clamp(std::vector<double> position, const Bounds& bounds);

/// A black-box objective over a box-bounded real vector space.
///
/// evaluate() must be pure and deterministic for a fixed position. The engine
/// works internally in minimization; maximizing objectives are adapted by
/// negation (see MinimizingView).
class Objective {
  public:
    virtual ~Objective() = default;

    virtual std::size_t dimension() const = 0;
    virtual const Bounds& bounds() const = 0;
    virtual Direction direction() const = 0;
    virtual double evaluate(std::span<const double> position) const = 0;
};

/// Negation adapter: presents any Objective as a minimizing one. Agents store
/// the adapted (internal) cost, so all operator math can assume minimization.
class MinimizingView final : public Objective {
  public:
    explicit MinimizingView(const Objective& inner)
        : inner_(&inner),
          sign_(inner.direction() == Direction::kMaximize ? -1.0 : 1.0) {}

    std::size_t dimension() const override { return inner_->dimension(); }
    const Bounds& bounds() const override { return inner_->bounds(); }
    Direction direction() const override { return Direction::kMinimize; }
    double evaluate(std::span<const double> position) const override {
        return sign_ * inner_->evaluate(position);
    }

    /// Converts an internal cost back to the wrapped objective's scale.
    double to_outer(double internal_cost) const { return sign_ * internal_cost; }

  private:
    const Objective* inner_;
    double sign_;
};

/// One search agent: a position with its cached (internal, minimized) cost.
struct Agent {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
    bool evaluated = false;
};

/// The ordered agent list plus the run's objective-evaluation counter. The
/// counter increases by exactly one per evaluate_agent call and is never
/// decremented; it is the quantity the engine's evaluation budget caps.
struct Population {
    std::vector<Agent> agents;
    std::uint64_t evaluation_count = 0;

    std::size_t size() const { return agents.size(); }

    /// Evaluates agent `index` against `objective` (normally a
    /// MinimizingView), caches the cost, and bumps the counter. Throws
    /// NumericError, tagged with the agent index, if the value is not finite.
    double evaluate_agent(std::size_t index, const Objective& objective);
};

/// Uniform initialization: each component is lower + r * (upper - lower) with
/// a fresh draw per component, agents in index order. All agents are
/// evaluated, so evaluation_count == n afterwards. Throws
/// std::invalid_argument when n == 0 or the bounds are invalid.
Population init_population(std::size_t n, const Objective& objective, RngStream& rng);

} // namespace hhgso
