#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hhgso {

/// Source of uniform randomness for every stochastic operation in the library.
///
/// All operators, the engine, and the problem adapters draw exclusively from
/// an injected stream, in a documented fixed order (agents in index order,
/// dimensions in index order, per-agent scalars before per-dimension draws).
/// That makes runs reproducible from a seed and lets tests replay recorded
/// sequences.
class RngStream {
  public:
    virtual ~RngStream() = default;

    /// Uniform draw in [0, 1).
    virtual double next_unit() = 0;

    /// Uniform integer in [0, n). Consumes exactly one next_unit() draw:
    /// floor(next_unit() * n), saturated at n - 1. Requires n >= 1.
    std::size_t next_int(std::size_t n);
};

/// Default stream backed by std::mt19937_64. Identical seeds yield identical
/// sequences on every platform: the unit draw is (x >> 11) * 2^-53.
class Mt64Stream final : public RngStream {
  public:
    explicit Mt64Stream(std::uint64_t seed) : engine_(seed) {}

    double next_unit() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

/// In-place Fisher-Yates shuffle driven by the stream (n - 1 draws).
template <typename T>
void shuffle(std::vector<T>& items, RngStream& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = rng.next_int(i);
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace hhgso
