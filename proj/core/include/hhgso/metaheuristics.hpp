#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhgso/rng.hpp"
#include "hhgso/search_core.hpp"

namespace hhgso {

/// The five constituent update algorithms.
enum class AlgorithmId : std::uint8_t {
    kHenryGas = 0,
    kJaya = 1,
    kSootyTern = 2,
    kButterfly = 3,
    kOwl = 4,
};

inline constexpr std::size_t kAlgorithmCount = 5;
inline constexpr std::array<AlgorithmId, kAlgorithmCount> kAllAlgorithms = {
    AlgorithmId::kHenryGas, AlgorithmId::kJaya, AlgorithmId::kSootyTern,
    AlgorithmId::kButterfly, AlgorithmId::kOwl};

std::string_view to_string(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm_id(std::string_view name);

/// A contiguous slice of the population, with the cluster's retained best
/// snapshot and the problem bounds. `index` keys per-cluster operator state
/// (the gas-solubility operator persists state per cluster across remaps).
struct ClusterView {
    std::span<Agent> agents;
    const Agent* local_best = nullptr;
    const Bounds* bounds = nullptr;
    std::size_t index = 0;
};

/// Common interface for the per-cluster position-update operators.
///
/// Contract:
///  - updates are computed from a snapshot of the cluster's current positions
///    and fitnesses, then written back clamped to the bounds; agents outside
///    the slice are never read or written, and global_best is never mutated;
///  - updated agents are marked unevaluated (the engine re-evaluates them);
///  - randomness is consumed in a fixed order: agents in slice order,
///    per-agent scalar draws before per-dimension draws, dimensions in index
///    order. Each concrete operator documents its exact draw sequence so that
///    tests can replay it.
class ClusterUpdater {
  public:
    virtual ~ClusterUpdater() = default;

    virtual AlgorithmId id() const = 0;

    virtual void update(ClusterView cluster, const Agent& global_best,
                        const Agent& global_worst, std::size_t t, std::size_t max_iter,
                        RngStream& rng) = 0;
};

/// Moves agents toward the best solution and away from the worst:
///   x'[d] = x[d] + r1 * (best[d] - |x[d]|) - r2 * (worst[d] - |x[d]|)
/// with fresh r1, r2 per dimension (drawn in that order). Parameter free.
class JayaUpdater final : public ClusterUpdater {
  public:
    AlgorithmId id() const override { return AlgorithmId::kJaya; }
    void update(ClusterView cluster, const Agent& global_best, const Agent& global_worst,
                std::size_t t, std::size_t max_iter, RngStream& rng) override;
};

struct StoaParams {
    double control_initial = 2.0; // decays linearly to 0 over the run
    double spiral_u = 1.0;
    double spiral_v = 1.0;
};

/// Sea-bird migration/attack operator. Per agent (draw order: u_cb, u_k):
///   S_A = Cf - t * Cf / max_iter
///   C_B = 0.5 * u_cb
///   D[d] = (S_A * x[d]) * (C_B * (best[d] - x[d]))
///   k = 2*pi*u_k, radius = u * e^(k*v)
///   spiral = radius*sin(k) + radius*cos(k) + radius*k
///   x'[d] = D[d] * spiral * best[d]
class StoaUpdater final : public ClusterUpdater {
  public:
    explicit StoaUpdater(StoaParams params = {}) : params_(params) {}
    AlgorithmId id() const override { return AlgorithmId::kSootyTern; }
    void update(ClusterView cluster, const Agent& global_best, const Agent& global_worst,
                std::size_t t, std::size_t max_iter, RngStream& rng) override;

  private:
    StoaParams params_;
};

struct BoaParams {
    double sensory_modality = 0.01;   // c
    double exponent_start = 0.1;      // a at t = 0
    double exponent_end = 0.2;        // a at t = max_iter
    double switch_probability = 0.8;  // chance of the toward-best move
};

/// Fragrance emitted for stimulus intensity `intensity` and exponent `a`:
/// c * intensity^a. Non-decreasing in the intensity for a >= 0.
double boa_fragrance(double sensory_modality, double intensity, double exponent);

/// Stimulus intensity per agent, derived from the fitness ranking inside the
/// cluster: 1 / (1 + rank / (n - 1)) with rank 0 for the best agent (ties
/// broken by lower slice index), so intensities fall in [1/2, 1] and the
/// cluster best has intensity exactly 1. A single agent has intensity 1.
std::vector<double> boa_intensities(std::span<const double> fitnesses);

/// Butterfly foraging operator. Per agent i (draw order: s, then branch):
///   f_i = c * I_i^a, a interpolated exponent_start -> exponent_end by t/max_iter
///   s < switch_probability:  x'[d] = x[d] + (r^2 * best[d] - x[d]) * f_i
///   otherwise:               x'[d] = x[d] + (r^2 * x_j[d] - x_k[d]) * f_i
/// with fresh r per dimension; j, k are cluster indices drawn once per agent
/// (local branch requires >= 2 agents, otherwise the best-directed branch is
/// used without consuming the j/k draws).
class BoaUpdater final : public ClusterUpdater {
  public:
    explicit BoaUpdater(BoaParams params = {}) : params_(params) {}
    AlgorithmId id() const override { return AlgorithmId::kButterfly; }
    void update(ClusterView cluster, const Agent& global_best, const Agent& global_worst,
                std::size_t t, std::size_t max_iter, RngStream& rng) override;

  private:
    BoaParams params_;
};

struct OsaParams {
    double beta_start = 1.9; // decays linearly to 0 over the run
};

/// Normalized sound intensities: (f_i - min) / (max - min), all zero when the
/// cluster's fitness spread is degenerate.
std::vector<double> osa_intensities(std::span<const double> fitnesses);

/// Owl hunting operator. Per agent (draw order: u_ic, u_alpha, u_pvm):
///   I_i from osa_intensities, R_i = ||x_i - V||_2 with V the global best
///   Ic_i = I_i / R_i^2 + u_ic   (just u_ic when R_i == 0)
///   beta = beta_start * (1 - t / max_iter), alpha = 0.5 * u_alpha
///   x'[d] = x[d] +/- beta * Ic_i * |alpha * V[d] - x[d]|
/// with + when u_pvm < 0.5 and - otherwise.
class OsaUpdater final : public ClusterUpdater {
  public:
    explicit OsaUpdater(OsaParams params = {}) : params_(params) {}
    AlgorithmId id() const override { return AlgorithmId::kOwl; }
    void update(ClusterView cluster, const Agent& global_best, const Agent& global_worst,
                std::size_t t, std::size_t max_iter, RngStream& rng) override;

  private:
    OsaParams params_;
};

struct HgsoParams {
    double init_henry = 5e-2;       // l1
    double init_pressure = 100.0;   // l2
    double init_dissolution = 1e-2; // l3
    double reference_temp = 298.15; // T_theta
    double henry_pressure_k = 1.0;  // K
    double global_influence = 1.0;  // alpha
    double interaction_beta = 1.0;  // beta
    double epsilon = 0.05;
};

/// Per-cluster gas state. henry > 0 and dissolution, pressure[i] >= 0 at
/// initialization; henry decays multiplicatively as the run cools.
struct HgsoClusterState {
    double henry = 0.0;
    double dissolution = 0.0;
    std::vector<double> pressure;
};

/// Gas-solubility operator (the host algorithm). Owns one HgsoClusterState
/// per cluster, keyed by cluster index, persisting across remaps.
///
/// One update of cluster j at iteration t:
///   T(t) = exp(-t / max_iter)
///   H_j <- H_j * exp(-C_j * (1/T(t) - 1/T_ref))
///   S_i  = K * H_j * P_i
///   gamma_i = beta * exp(-(F_best + eps) / (F_i + eps))
///   x'[d] = x[d] + F*r*gamma_i*(cluster_best[d] - x[d])
///               + F*r*alpha*(S_i*global_best[d] - x[d])
/// with flag F in {-1,+1} drawn once per agent (u < 0.5 gives +1) and one r
/// per dimension shared by both terms. Throws NumericError when F_i + eps is
/// exactly zero.
class HgsoUpdater final : public ClusterUpdater {
  public:
    explicit HgsoUpdater(HgsoParams params = {}) : params_(params) {}

    AlgorithmId id() const override { return AlgorithmId::kHenryGas; }

    /// Draws the initial state for every cluster: per cluster, henry =
    /// l1 * (1 - u) (strictly positive), dissolution = l3 * u, then one
    /// pressure draw l2 * u per agent slot. Call once at run start.
    void init_state(std::span<const std::size_t> cluster_sizes, RngStream& rng);

    /// Injects a hand-built state (used by tests and by state inspection).
    void set_state(std::size_t cluster_index, HgsoClusterState state);
    const HgsoClusterState& state(std::size_t cluster_index) const;

    void update(ClusterView cluster, const Agent& global_best, const Agent& global_worst,
                std::size_t t, std::size_t max_iter, RngStream& rng) override;

  private:
    HgsoParams params_;
    std::vector<HgsoClusterState> states_;
};

/// Factory used by the engine to build a roster instance per run.
std::unique_ptr<ClusterUpdater> make_updater(AlgorithmId id);

} // namespace hhgso
