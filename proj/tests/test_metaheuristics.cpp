#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hhgso/metaheuristics.hpp"
#include "support/test_helpers.hpp"

using namespace hhgso;
using hhgso::testing::make_agent;
using hhgso::testing::ScriptedRng;

namespace {

constexpr double kTol = 1e-12;

struct ClusterFixture {
    std::vector<Agent> agents;
    Bounds bounds;
    Agent local_best;
    std::size_t index = 0;

    ClusterView view() {
        return ClusterView{std::span<Agent>(agents), &local_best, &bounds, index};
    }
};

ClusterFixture make_cluster(std::vector<std::pair<std::vector<double>, double>> rows,
                            double lo = -100.0, double hi = 100.0) {
    ClusterFixture fixture;
    fixture.bounds = Bounds::uniform(rows.front().first.size(), lo, hi);
    for (auto& [position, fitness] : rows) {
        fixture.agents.push_back(make_agent(std::move(position), fitness));
    }
    fixture.local_best = *std::min_element(
        fixture.agents.begin(), fixture.agents.end(),
        [](const Agent& a, const Agent& b) { return a.fitness < b.fitness; });
    return fixture;
}

} // namespace

// ---------------------------------------------------------------------------
// Hand oracles with injected draw sequences.
// ---------------------------------------------------------------------------

TEST_CASE("jaya hand cases") {
    JayaUpdater jaya;
    const Agent best = make_agent({5.0}, 0.0);
    const Agent worst = make_agent({0.0}, 9.0);

    SUBCASE("moves toward best and away from worst") {
        auto cluster = make_cluster({{{2.0}, 1.0}});
        ScriptedRng rng({0.5, 0.5});
        jaya.update(cluster.view(), best, worst, 0, 10, rng);
        // 2 + 0.5*(5 - 2) - 0.5*(0 - 2)
        CHECK(cluster.agents[0].position[0] == doctest::Approx(4.5).epsilon(kTol));
        CHECK_FALSE(cluster.agents[0].evaluated);
    }
    SUBCASE("zero draws leave the position unchanged") {
        auto cluster = make_cluster({{{7.0}, 1.0}});
        ScriptedRng rng({0.0, 0.0});
        jaya.update(cluster.view(), make_agent({9.0}, 0.0), make_agent({1.0}, 5.0), 0, 10,
                    rng);
        CHECK(cluster.agents[0].position[0] == 7.0);
    }
    SUBCASE("negative position uses its magnitude") {
        auto cluster = make_cluster({{{-3.0}, 1.0}});
        ScriptedRng rng({0.25, 0.5});
        jaya.update(cluster.view(), make_agent({5.0}, 0.0), make_agent({1.0}, 5.0), 0, 10,
                    rng);
        // -3 + 0.25*(5 - 3) - 0.5*(1 - 3)
        CHECK(cluster.agents[0].position[0] == doctest::Approx(-1.5).epsilon(kTol));
    }
    SUBCASE("best = worst = x cancels for equal draws") {
        auto cluster = make_cluster({{{4.0}, 1.0}});
        ScriptedRng rng({0.3, 0.3});
        jaya.update(cluster.view(), make_agent({4.0}, 1.0), make_agent({4.0}, 1.0), 0, 10,
                    rng);
        CHECK(cluster.agents[0].position[0] == doctest::Approx(4.0).epsilon(kTol));
    }
    SUBCASE("three dimensions draw fresh r1, r2 per dimension") {
        auto cluster = make_cluster({{{1.0, -2.0, 0.0}, 1.0}});
        const Agent best3 = make_agent({2.0, 2.0, 2.0}, 0.0);
        const Agent worst3 = make_agent({-1.0, -1.0, -1.0}, 9.0);
        ScriptedRng rng({0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
        jaya.update(cluster.view(), best3, worst3, 0, 10, rng);
        CHECK(cluster.agents[0].position[0] == doctest::Approx(1.5).epsilon(kTol));
        CHECK(cluster.agents[0].position[1] == doctest::Approx(-0.8).epsilon(kTol));
        CHECK(cluster.agents[0].position[2] == doctest::Approx(1.6).epsilon(kTol));
    }
    SUBCASE("clamping keeps the result inside the box") {
        auto cluster = make_cluster({{{2.0}, 1.0}}, 0.0, 4.0);
        ScriptedRng rng({1.0, 0.0});
        jaya.update(cluster.view(), make_agent({4.0}, 0.0), make_agent({0.0}, 9.0), 0, 10,
                    rng);
        CHECK(cluster.agents[0].position[0] <= 4.0);
    }
}

TEST_CASE("sooty-tern hand cases") {
    StoaUpdater stoa;

    SUBCASE("t = max_iter collapses the drift to zero") {
        auto cluster = make_cluster({{{7.0, -4.0}, 1.0}});
        const Agent best = make_agent({3.0, 3.0}, 0.0);
        ScriptedRng rng({0.3, 0.7});
        stoa.update(cluster.view(), best, best, 10, 10, rng);
        CHECK(cluster.agents[0].position[0] == 0.0);
        CHECK(cluster.agents[0].position[1] == 0.0);
    }
    SUBCASE("t = 0 with a zero angle") {
        auto cluster = make_cluster({{{1.0}, 1.0}});
        const Agent best = make_agent({3.0}, 0.0);
        // u_cb = 0.5 -> C_B = 0.25; u_k = 0 -> angle 0, radius 1, spiral 1.
        ScriptedRng rng({0.5, 0.0});
        stoa.update(cluster.view(), best, best, 0, 10, rng);
        // D = (2*1) * (0.25*(3-1)) = 1; position = 1 * 1 * 3.
        CHECK(cluster.agents[0].position[0] == doctest::Approx(3.0).epsilon(kTol));
    }
    SUBCASE("mid-run spiral case") {
        auto cluster = make_cluster({{{2.0}, 1.0}});
        const Agent best = make_agent({4.0}, 0.0);
        // u_cb = 0.8 -> C_B = 0.4; u_k = 0.25 -> angle pi/2.
        ScriptedRng rng({0.8, 0.25});
        stoa.update(cluster.view(), best, best, 1, 2, rng);
        const double angle = std::numbers::pi / 2.0;
        const double spiral =
            std::exp(angle) * (std::sin(angle) + std::cos(angle) + angle);
        // S_A = 1; D = (1*2) * (0.4*(4-2)) = 1.6; position = D * spiral * 4.
        CHECK(cluster.agents[0].position[0] ==
              doctest::Approx(1.6 * spiral * 4.0).epsilon(kTol));
    }
    SUBCASE("max_iter = 0 is rejected") {
        auto cluster = make_cluster({{{1.0}, 1.0}});
        ScriptedRng rng({0.1, 0.1});
        CHECK_THROWS_AS(
            stoa.update(cluster.view(), make_agent({0.0}, 0.0), make_agent({0.0}, 0.0), 0,
                        0, rng),
            std::invalid_argument);
    }
}

TEST_CASE("butterfly fragrance and intensities") {
    CHECK(boa_fragrance(0.01, 1.0, 0.1) == doctest::Approx(0.01).epsilon(kTol));
    CHECK(boa_fragrance(0.0, 0.7, 0.15) == 0.0);

    SUBCASE("fragrance is non-decreasing in the intensity") {
        for (const double a : {0.1, 0.15, 0.2}) {
            double previous = -1.0;
            for (double intensity = 0.0; intensity <= 1.0; intensity += 0.01) {
                const double f = boa_fragrance(0.01, intensity, a);
                CHECK(f >= previous);
                previous = f;
            }
        }
    }
    SUBCASE("rank-derived intensities") {
        const std::vector<double> fitnesses{3.0, 1.0, 2.0};
        const auto intensities = boa_intensities(fitnesses);
        CHECK(intensities[1] == 1.0);  // best
        CHECK(intensities[2] == doctest::Approx(1.0 / 1.5).epsilon(kTol));
        CHECK(intensities[0] == 0.5);  // worst
        CHECK(boa_intensities(std::vector<double>{7.0}) == std::vector<double>{1.0});
    }
}

TEST_CASE("butterfly hand cases") {
    SUBCASE("unit fragrance and r = 1 jump exactly to the best") {
        BoaParams params;
        params.sensory_modality = 1.0; // cluster-best intensity 1 -> fragrance 1
        BoaUpdater boa(params);
        auto cluster = make_cluster({{{2.0}, 1.0}});
        const Agent best = make_agent({9.0}, 0.0);
        ScriptedRng rng({0.0, 1.0}); // s -> toward-best branch, then r
        boa.update(cluster.view(), best, best, 0, 10, rng);
        CHECK(cluster.agents[0].position[0] == doctest::Approx(9.0).epsilon(kTol));
    }
    SUBCASE("zero fragrance freezes both branches") {
        BoaParams params;
        params.sensory_modality = 0.0;
        BoaUpdater boa(params);
        auto cluster = make_cluster({{{2.0}, 1.0}, {{5.0}, 2.0}});
        const Agent best = make_agent({9.0}, 0.0);
        ScriptedRng rng({0.0, 0.7,       // agent 0: global branch
                         0.9, 0.6, 0.0, 0.5}); // agent 1: local branch j,k,r
        boa.update(cluster.view(), best, best, 0, 10, rng);
        CHECK(cluster.agents[0].position[0] == 2.0);
        CHECK(cluster.agents[1].position[0] == 5.0);
    }
    SUBCASE("local branch recombines snapshot positions") {
        BoaUpdater boa;
        auto cluster = make_cluster({{{1.0}, 1.0}, {{3.0}, 2.0}});
        const Agent best = make_agent({9.0}, 0.0);
        ScriptedRng rng({0.9, 0.6, 0.0, 0.5,   // agent 0: local, j=1, k=0, r=0.5
                         0.9, 0.0, 0.9, 1.0}); // agent 1: local, j=0, k=1, r=1
        boa.update(cluster.view(), best, best, 0, 10, rng);
        // agent 0: I=1, f=0.01: 1 + (0.25*3 - 1)*0.01
        CHECK(cluster.agents[0].position[0] == doctest::Approx(0.9975).epsilon(kTol));
        // agent 1: I=0.5, f=0.01*0.5^0.1: 3 + (1*1 - 3)*f
        const double fragrance = 0.01 * std::pow(0.5, 0.1);
        CHECK(cluster.agents[1].position[0] ==
              doctest::Approx(3.0 - 2.0 * fragrance).epsilon(kTol));
    }
    SUBCASE("single agent falls back to the toward-best branch") {
        BoaUpdater boa;
        auto cluster = make_cluster({{{2.0}, 1.0}});
        const Agent best = make_agent({4.0}, 0.0);
        ScriptedRng rng({0.95, 0.5}); // s beyond switch_p, then only the r draw
        boa.update(cluster.view(), best, best, 0, 10, rng);
        CHECK(rng.remaining() == 0);
        CHECK(cluster.agents[0].position[0] ==
              doctest::Approx(2.0 + (0.25 * 4.0 - 2.0) * 0.01).epsilon(kTol));
    }
}

TEST_CASE("owl intensities") {
    const std::vector<double> fitnesses{1.0, 3.0, 2.0};
    const auto intensities = osa_intensities(fitnesses);
    CHECK(intensities[0] == 0.0);
    CHECK(intensities[1] == 1.0);
    CHECK(intensities[2] == 0.5);
    // Degenerate spread maps everyone to zero.
    CHECK(osa_intensities(std::vector<double>{4.0, 4.0}) ==
          std::vector<double>{0.0, 0.0});
}

TEST_CASE("owl hand cases") {
    OsaUpdater osa;

    SUBCASE("beta = 0 at the final iteration freezes positions") {
        auto cluster = make_cluster({{{1.0}, 1.0}, {{2.0}, 3.0}});
        const Agent best = make_agent({0.0}, 0.5);
        ScriptedRng rng({0.2, 0.4, 0.6, 0.1, 0.3, 0.9});
        osa.update(cluster.view(), best, best, 5, 5, rng);
        CHECK(cluster.agents[0].position[0] == 1.0);
        CHECK(cluster.agents[1].position[0] == 2.0);
        CHECK(rng.remaining() == 0);
    }
    SUBCASE("two-agent pull toward and away from the prey") {
        auto cluster = make_cluster({{{0.0}, 1.0}, {{2.0}, 3.0}});
        const Agent best = make_agent({1.0}, 0.5);
        ScriptedRng rng({0.25, 0.8, 0.3,   // agent 0: u_ic, u_alpha, u_pvm (+)
                         0.5, 0.0, 0.9});  // agent 1: u_ic, u_alpha, u_pvm (-)
        osa.update(cluster.view(), best, best, 0, 1, rng);
        // agent 0: I=0, R^2=1, Ic=0.25, alpha=0.4: 0 + 1.9*0.25*|0.4 - 0|
        CHECK(cluster.agents[0].position[0] == doctest::Approx(0.19).epsilon(kTol));
        // agent 1: I=1, R^2=1, Ic=1.5, alpha=0: 2 - 1.9*1.5*|0 - 2|
        CHECK(cluster.agents[1].position[0] == doctest::Approx(-3.7).epsilon(kTol));
    }
    SUBCASE("sitting on the prey drops the singular term") {
        auto cluster = make_cluster({{{1.0}, 1.0}});
        const Agent best = make_agent({1.0}, 0.5);
        ScriptedRng rng({0.5, 1.0, 0.0}); // Ic = 0.5, alpha = 0.5, sign +
        osa.update(cluster.view(), best, best, 0, 2, rng);
        // beta = 1.9*(1 - 0) = 1.9: 1 + 1.9*0.5*|0.5 - 1|
        CHECK(cluster.agents[0].position[0] == doctest::Approx(1.475).epsilon(kTol));
    }
}

TEST_CASE("gas-solubility hand cases") {
    SUBCASE("zero dissolution keeps the coefficient") {
        HgsoUpdater hgso;
        hgso.set_state(0, HgsoClusterState{0.03, 0.0, {50.0}});
        auto cluster = make_cluster({{{0.0}, 1.0}});
        const Agent best = make_agent({1.0}, 1.0);
        ScriptedRng rng({0.3, 1.0}); // flag +1, r = 1
        cluster.local_best = make_agent({0.0}, 1.0);
        hgso.update(cluster.view(), best, best, 3, 10, rng);
        CHECK(hgso.state(0).henry == doctest::Approx(0.03).epsilon(kTol));
        // Solubility = 1 * 0.03 * 50 = 1.5 lands the agent on S * best.
        CHECK(cluster.agents[0].position[0] == doctest::Approx(1.5).epsilon(kTol));
    }
    SUBCASE("r = 0 leaves positions unchanged") {
        HgsoUpdater hgso;
        hgso.set_state(0, HgsoClusterState{0.04, 0.005, {20.0}});
        auto cluster = make_cluster({{{2.5}, 2.0}});
        ScriptedRng rng({0.7, 0.0}); // flag -1, r = 0
        hgso.update(cluster.view(), make_agent({1.0}, 0.5), make_agent({9.0}, 9.0), 1, 4,
                    rng);
        CHECK(cluster.agents[0].position[0] == 2.5);
    }
    SUBCASE("full two-term displacement") {
        HgsoUpdater hgso;
        hgso.set_state(0, HgsoClusterState{0.04, 0.01, {10.0}});
        auto cluster = make_cluster({{{2.0}, 2.0}});
        cluster.local_best = make_agent({5.0}, 2.0);
        const Agent best = make_agent({1.0}, 0.5);
        ScriptedRng rng({0.7, 0.5}); // flag -1, r = 0.5
        hgso.update(cluster.view(), best, best, 1, 2, rng);

        const double temperature = std::exp(-0.5);
        const double henry =
            0.04 * std::exp(-0.01 * (1.0 / temperature - 1.0 / 298.15));
        const double solubility = henry * 10.0;
        const double gamma = std::exp(-(0.5 + 0.05) / (2.0 + 0.05));
        const double expected = 2.0 + (-1.0) * 0.5 * gamma * (5.0 - 2.0) +
                                (-1.0) * 0.5 * (solubility * 1.0 - 2.0);
        CHECK(hgso.state(0).henry == doctest::Approx(henry).epsilon(kTol));
        CHECK(cluster.agents[0].position[0] == doctest::Approx(expected).epsilon(kTol));
    }
    SUBCASE("state initialization ranges") {
        HgsoUpdater hgso;
        Mt64Stream rng(11);
        const std::vector<std::size_t> sizes{3, 2};
        hgso.init_state(sizes, rng);
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            const auto& state = hgso.state(c);
            CHECK(state.henry > 0.0);
            CHECK(state.henry <= 5e-2);
            CHECK(state.dissolution >= 0.0);
            CHECK(state.dissolution < 1e-2);
            CHECK(state.pressure.size() == sizes[c]);
            for (const double p : state.pressure) {
                CHECK(p >= 0.0);
                CHECK(p < 100.0);
            }
        }
    }
    SUBCASE("missing state is an internal error") {
        HgsoUpdater hgso;
        auto cluster = make_cluster({{{0.0}, 1.0}});
        ScriptedRng rng({0.1});
        CHECK_THROWS_AS(hgso.update(cluster.view(), make_agent({0.0}, 0.0),
                                    make_agent({0.0}, 0.0), 0, 1, rng),
                        InternalError);
    }
}

// ---------------------------------------------------------------------------
// Straight-line oracle equivalence on random inputs.
// ---------------------------------------------------------------------------

namespace {

struct RandomCase {
    std::vector<std::vector<double>> positions;
    std::vector<double> fitnesses;
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> worst_position;
    double worst_fitness = 0.0;
    std::size_t t = 0;
    std::size_t max_iter = 1;
};

RandomCase draw_case(std::mt19937_64& meta) {
    std::uniform_int_distribution<std::size_t> dim_dist(1, 4);
    std::uniform_int_distribution<std::size_t> size_dist(1, 5);
    std::uniform_real_distribution<double> pos_dist(-20.0, 20.0);
    std::uniform_real_distribution<double> fit_dist(0.1, 10.0);

    RandomCase random_case;
    const std::size_t dim = dim_dist(meta);
    const std::size_t size = size_dist(meta);
    for (std::size_t i = 0; i < size; ++i) {
        std::vector<double> position(dim);
        for (double& x : position) {
            x = pos_dist(meta);
        }
        random_case.positions.push_back(std::move(position));
        random_case.fitnesses.push_back(fit_dist(meta));
    }
    random_case.best_position.resize(dim);
    random_case.worst_position.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        random_case.best_position[d] = pos_dist(meta);
        random_case.worst_position[d] = pos_dist(meta);
    }
    random_case.best_fitness = 0.05;
    random_case.worst_fitness = 20.0;
    random_case.max_iter = 1 + meta() % 50;
    random_case.t = meta() % (random_case.max_iter + 1);
    return random_case;
}

ClusterFixture to_fixture(const RandomCase& random_case) {
    std::vector<std::pair<std::vector<double>, double>> rows;
    for (std::size_t i = 0; i < random_case.positions.size(); ++i) {
        rows.emplace_back(random_case.positions[i], random_case.fitnesses[i]);
    }
    // Effectively unbounded so results stay pre-clamp.
    return make_cluster(std::move(rows), -1e18, 1e18);
}

void check_close(const std::vector<double>& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t d = 0; d < got.size(); ++d) {
        CHECK(got[d] == doctest::Approx(want[d]).epsilon(kTol));
    }
}

} // namespace

TEST_CASE("jaya matches a straight-line oracle on 1000 random cases") {
    std::mt19937_64 meta(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomCase random_case = draw_case(meta);
        auto fixture = to_fixture(random_case);
        const Agent best = make_agent(random_case.best_position, random_case.best_fitness);
        const Agent worst =
            make_agent(random_case.worst_position, random_case.worst_fitness);

        JayaUpdater jaya;
        Mt64Stream impl_rng(trial);
        jaya.update(fixture.view(), best, worst, random_case.t, random_case.max_iter,
                    impl_rng);

        Mt64Stream oracle_rng(trial);
        for (std::size_t i = 0; i < random_case.positions.size(); ++i) {
            std::vector<double> expected = random_case.positions[i];
            for (std::size_t d = 0; d < expected.size(); ++d) {
                const double r1 = oracle_rng.next_unit();
                const double r2 = oracle_rng.next_unit();
                const double x = expected[d];
                expected[d] = x + r1 * (best.position[d] - std::fabs(x)) -
                              r2 * (worst.position[d] - std::fabs(x));
            }
            check_close(fixture.agents[i].position, expected);
        }
    }
}

TEST_CASE("sooty-tern matches a straight-line oracle on 1000 random cases") {
    std::mt19937_64 meta(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomCase random_case = draw_case(meta);
        auto fixture = to_fixture(random_case);
        const Agent best = make_agent(random_case.best_position, random_case.best_fitness);

        StoaUpdater stoa;
        Mt64Stream impl_rng(trial);
        stoa.update(fixture.view(), best, best, random_case.t, random_case.max_iter,
                    impl_rng);

        Mt64Stream oracle_rng(trial);
        const double s_a = 2.0 - static_cast<double>(random_case.t) *
                                     (2.0 / static_cast<double>(random_case.max_iter));
        for (std::size_t i = 0; i < random_case.positions.size(); ++i) {
            const double c_b = 0.5 * oracle_rng.next_unit();
            const double k = 2.0 * std::numbers::pi * oracle_rng.next_unit();
            const double radius = std::exp(k);
            const double spiral = radius * std::sin(k) + radius * std::cos(k) + radius * k;
            std::vector<double> expected(random_case.positions[i].size());
            for (std::size_t d = 0; d < expected.size(); ++d) {
                const double x = random_case.positions[i][d];
                expected[d] = (s_a * x) * (c_b * (best.position[d] - x)) * spiral *
                              best.position[d];
            }
            check_close(fixture.agents[i].position, expected);
        }
    }
}

TEST_CASE("butterfly matches a straight-line oracle on 1000 random cases") {
    std::mt19937_64 meta(4096);
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomCase random_case = draw_case(meta);
        auto fixture = to_fixture(random_case);
        const Agent best = make_agent(random_case.best_position, random_case.best_fitness);
        const std::size_t n = random_case.positions.size();

        BoaUpdater boa;
        Mt64Stream impl_rng(trial);
        boa.update(fixture.view(), best, best, random_case.t, random_case.max_iter,
                   impl_rng);

        // Straight-line re-derivation, including the rank intensities.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return random_case.fitnesses[a] < random_case.fitnesses[b];
        });
        std::vector<double> intensity(n, 1.0);
        for (std::size_t rank = 0; rank < n && n > 1; ++rank) {
            intensity[order[rank]] =
                1.0 / (1.0 + static_cast<double>(rank) / static_cast<double>(n - 1));
        }
        const double exponent = 0.1 + 0.1 * static_cast<double>(random_case.t) /
                                          static_cast<double>(random_case.max_iter);

        Mt64Stream oracle_rng(trial);
        for (std::size_t i = 0; i < n; ++i) {
            const double fragrance = 0.01 * std::pow(intensity[i], exponent);
            const double s = oracle_rng.next_unit();
            std::vector<double> expected = random_case.positions[i];
            if (s < 0.8 || n < 2) {
                for (std::size_t d = 0; d < expected.size(); ++d) {
                    const double r = oracle_rng.next_unit();
                    expected[d] += (r * r * best.position[d] - expected[d]) * fragrance;
                }
            } else {
                const std::size_t j = oracle_rng.next_int(n);
                const std::size_t k = oracle_rng.next_int(n);
                for (std::size_t d = 0; d < expected.size(); ++d) {
                    const double r = oracle_rng.next_unit();
                    expected[d] += (r * r * random_case.positions[j][d] -
                                    random_case.positions[k][d]) *
                                   fragrance;
                }
            }
            check_close(fixture.agents[i].position, expected);
        }
    }
}

TEST_CASE("owl matches a straight-line oracle on 1000 random cases") {
    std::mt19937_64 meta(555);
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomCase random_case = draw_case(meta);
        auto fixture = to_fixture(random_case);
        const Agent best = make_agent(random_case.best_position, random_case.best_fitness);
        const std::size_t n = random_case.positions.size();

        OsaUpdater osa;
        Mt64Stream impl_rng(trial);
        osa.update(fixture.view(), best, best, random_case.t, random_case.max_iter,
                   impl_rng);

        const double w =
            *std::min_element(random_case.fitnesses.begin(), random_case.fitnesses.end());
        const double b =
            *std::max_element(random_case.fitnesses.begin(), random_case.fitnesses.end());
        const double beta = 1.9 * (1.0 - static_cast<double>(random_case.t) /
                                             static_cast<double>(random_case.max_iter));

        Mt64Stream oracle_rng(trial);
        for (std::size_t i = 0; i < n; ++i) {
            const double intensity =
                b > w ? (random_case.fitnesses[i] - w) / (b - w) : 0.0;
            double r_sq = 0.0;
            for (std::size_t d = 0; d < best.position.size(); ++d) {
                const double diff = random_case.positions[i][d] - best.position[d];
                r_sq += diff * diff;
            }
            const double noise = oracle_rng.next_unit();
            const double ic = r_sq > 0.0 ? intensity / r_sq + noise : noise;
            const double alpha = 0.5 * oracle_rng.next_unit();
            const double sign = oracle_rng.next_unit() < 0.5 ? 1.0 : -1.0;
            std::vector<double> expected = random_case.positions[i];
            for (std::size_t d = 0; d < expected.size(); ++d) {
                expected[d] += sign * beta * ic *
                               std::fabs(alpha * best.position[d] - expected[d]);
            }
            check_close(fixture.agents[i].position, expected);
        }
    }
}

TEST_CASE("gas-solubility matches a straight-line oracle on 1000 random cases") {
    std::mt19937_64 meta(31337);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomCase random_case = draw_case(meta);
        auto fixture = to_fixture(random_case);
        const Agent best = make_agent(random_case.best_position, random_case.best_fitness);
        const std::size_t n = random_case.positions.size();

        HgsoClusterState state;
        state.henry = 0.05 * unit(meta) + 1e-6;
        state.dissolution = 0.01 * unit(meta);
        for (std::size_t i = 0; i < n; ++i) {
            state.pressure.push_back(100.0 * unit(meta));
        }

        HgsoUpdater hgso;
        hgso.set_state(0, state);
        Mt64Stream impl_rng(trial);
        hgso.update(fixture.view(), best, best, random_case.t, random_case.max_iter,
                    impl_rng);

        const double temperature = std::exp(-static_cast<double>(random_case.t) /
                                            static_cast<double>(random_case.max_iter));
        const double henry =
            state.henry *
            std::exp(-state.dissolution * (1.0 / temperature - 1.0 / 298.15));
        CHECK(hgso.state(0).henry == doctest::Approx(henry).epsilon(kTol));

        Mt64Stream oracle_rng(trial);
        for (std::size_t i = 0; i < n; ++i) {
            const double solubility = henry * state.pressure[i];
            const double gamma = std::exp(-(best.fitness + 0.05) /
                                          (random_case.fitnesses[i] + 0.05));
            const double flag = oracle_rng.next_unit() < 0.5 ? 1.0 : -1.0;
            std::vector<double> expected = random_case.positions[i];
            for (std::size_t d = 0; d < expected.size(); ++d) {
                const double r = oracle_rng.next_unit();
                expected[d] += flag * r * gamma *
                                   (fixture.local_best.position[d] - expected[d]) +
                               flag * r * (solubility * best.position[d] - expected[d]);
            }
            check_close(fixture.agents[i].position, expected);
        }
    }
}

// ---------------------------------------------------------------------------
// Structural properties.
// ---------------------------------------------------------------------------

TEST_CASE("operators never touch agents outside their slice") {
    std::mt19937_64 meta(8);
    std::uniform_real_distribution<double> pos_dist(-5.0, 5.0);

    for (AlgorithmId id : kAllAlgorithms) {
        std::vector<Agent> population;
        for (int i = 0; i < 9; ++i) {
            population.push_back(make_agent({pos_dist(meta), pos_dist(meta)},
                                            static_cast<double>(i) + 0.5));
        }
        const std::vector<Agent> before = population;
        const Bounds bounds = Bounds::uniform(2, -50.0, 50.0);
        Agent local_best = population[4];

        auto updater = make_updater(id);
        if (id == AlgorithmId::kHenryGas) {
            static_cast<HgsoUpdater&>(*updater).set_state(
                0, HgsoClusterState{0.02, 0.005, {10.0, 20.0, 30.0}});
        }
        ClusterView middle{std::span<Agent>(population.data() + 3, 3), &local_best,
                           &bounds, 0};
        Mt64Stream rng(99);
        updater->update(middle, before[0], before[8], 1, 10, rng);

        for (std::size_t i = 0; i < population.size(); ++i) {
            if (i >= 3 && i < 6) {
                continue;
            }
            CHECK(population[i].position == before[i].position);
            CHECK(population[i].fitness == before[i].fitness);
        }
    }
}

TEST_CASE("operators clamp results into the bounds") {
    std::mt19937_64 meta(21);
    std::uniform_real_distribution<double> pos_dist(-2.0, 2.0);
    const Bounds bounds = Bounds::uniform(3, -2.0, 2.0);

    for (AlgorithmId id : kAllAlgorithms) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::pair<std::vector<double>, double>> rows;
            for (int i = 0; i < 4; ++i) {
                rows.push_back({{pos_dist(meta), pos_dist(meta), pos_dist(meta)},
                                0.1 + static_cast<double>(i)});
            }
            auto fixture = make_cluster(std::move(rows), -2.0, 2.0);
            auto updater = make_updater(id);
            if (id == AlgorithmId::kHenryGas) {
                static_cast<HgsoUpdater&>(*updater).set_state(
                    0, HgsoClusterState{0.02, 0.005, {10.0, 20.0, 30.0, 40.0}});
            }
            Mt64Stream rng(static_cast<std::uint64_t>(trial) + 1);
            updater->update(fixture.view(), make_agent({1.0, 1.0, 1.0}, 0.05),
                            make_agent({-1.0, -1.0, -1.0}, 50.0), trial % 10, 10, rng);
            for (const Agent& agent : fixture.agents) {
                for (std::size_t d = 0; d < 3; ++d) {
                    CHECK(agent.position[d] >= bounds.lower[d]);
                    CHECK(agent.position[d] <= bounds.upper[d]);
                }
                CHECK_FALSE(agent.evaluated);
            }
        }
    }
}

TEST_CASE("algorithm id round trips") {
    for (AlgorithmId id : kAllAlgorithms) {
        CHECK(parse_algorithm_id(to_string(id)) == id);
    }
    CHECK_FALSE(parse_algorithm_id("NotAnAlgorithm").has_value());
}
