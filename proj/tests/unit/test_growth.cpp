#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pacp/error.hpp"
#include "pacp/growth.hpp"
#include "pacp/model.hpp"

using namespace pacp;

namespace {

std::uint64_t sum_of(const std::vector<std::uint32_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

// Every (old degrees, sub-step) pair reachable before sub-step (t, i) for t <= max_t.
std::set<std::pair<std::vector<std::uint32_t>, int>> reachable_states(int m, std::int64_t max_t) {
    std::set<std::pair<std::vector<std::uint32_t>, int>> states;
    auto walk = [&](auto&& self, std::vector<std::uint32_t> degrees, std::int64_t t, int i) -> void {
        if (t > max_t) return;
        if (!states.insert({degrees, i}).second) return;
        for (std::size_t v = 0; v < degrees.size(); ++v) {
            auto next = degrees;
            ++next[v];
            if (i < m) {
                self(self, std::move(next), t, i + 1);
            } else {
                next.push_back(static_cast<std::uint32_t>(m));
                self(self, std::move(next), t + 1, 1);
            }
        }
    };
    walk(walk, {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m)}, 2, 1);
    return states;
}

}  // namespace

TEST_CASE("n = 1 returns the seed graph") {
    for (int m : {1, 3, 5}) {
        const auto g = grow(ModelConfig::null_model(m, 0.0, 1), 11, {.keep_edges = true});
        CHECK(g.degrees == std::vector<std::uint32_t>{static_cast<std::uint32_t>(m),
                                                      static_cast<std::uint32_t>(m)});
        REQUIRE(g.edges);
        CHECK(g.edges->size() == static_cast<std::size_t>(m));
        for (const auto& e : *g.edges) CHECK(e == Edge{0, 1});
    }
}

TEST_CASE("conservation invariants after growth") {
    for (double delta : {-4.5, -1.0, 0.0, 2.5}) {
        const auto g = grow(ModelConfig::late_change(5, delta, 0.5, 1.0, 0.75, 100), 3,
                            {.keep_edges = true});
        CHECK(g.degrees.size() == 101);
        CHECK(sum_of(g.degrees) == 1000);
        CHECK(*std::min_element(g.degrees.begin(), g.degrees.end()) == 5);
        REQUIRE(g.edges);
        CHECK(g.edges->size() == 500);
        std::vector<std::uint32_t> from_edges(101, 0);
        for (const auto& e : *g.edges) {
            CHECK(e.u < e.v);  // no self-loops, older endpoint first
            ++from_edges[e.u];
            ++from_edges[e.v];
        }
        CHECK(from_edges == g.degrees);
        // v_t attaches exactly m edges at its own step.
        for (std::size_t k = 0; k < g.edges->size(); ++k) {
            CHECK((*g.edges)[k].v == (k < 5 ? 1u : static_cast<std::uint32_t>(k / 5 + 1)));
        }
    }
}

TEST_CASE("growth is deterministic in the seed") {
    const auto config = ModelConfig::late_change(3, 0.5, -1.0, 1.0, 0.75, 5000);
    const auto a = grow(config, 123);
    const auto b = grow(config, 123);
    const auto c = grow(config, 124);
    CHECK(a.degrees == b.degrees);
    CHECK(a.degrees != c.degrees);
}

TEST_CASE("delta1 == delta0 is bit-identical to the explicit null model") {
    const auto scaled = ModelConfig::late_change(4, 1.5, 1.5, 1.0, 0.75, 3000);
    const auto null = ModelConfig::null_model(4, 1.5, 3000);
    CHECK(grow(scaled, 77).degrees == grow(null, 77).degrees);
}

TEST_CASE("intermediate state invariants") {
    GrowthState state(3, 5);
    for (std::int64_t t = 2; t <= 60; ++t) {
        for (int i = 1; i <= 3; ++i) {
            CHECK(state.t() == t);
            CHECK(state.sub_step() == i);
            CHECK(state.old_degree_sum() == static_cast<std::uint64_t>(2 * (t - 1) * 3 + (i - 1)));
            state.attach_next(t < 30 ? 0.0 : -2.0);
        }
        const auto degrees = state.degrees();
        for (std::int64_t v = 0; v < state.t(); ++v) CHECK(degrees[static_cast<std::size_t>(v)] >= 3);
    }
}

TEST_CASE("attach_distribution_oracle on small states") {
    const std::vector<std::uint32_t> seed{1, 1};
    CHECK(attach_distribution_oracle(seed, 2, 1, 0.0)[0] == doctest::Approx(0.5));
    CHECK(attach_distribution_oracle(seed, 2, 1, 1.0)[0] == doctest::Approx(0.5));

    const std::vector<std::uint32_t> three{2, 1, 1};
    const auto p = attach_distribution_oracle(three, 3, 1, 0.0);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p[2] == doctest::Approx(0.25).epsilon(1e-15));

    const std::vector<std::uint32_t> uniform(6, 4);
    for (const double q : attach_distribution_oracle(uniform, 6, 1, -2.0)) {
        CHECK(q == doctest::Approx(1.0 / 6).epsilon(1e-14));
    }
    const auto large = attach_distribution_oracle(three, 3, 1, 1e9);
    for (const double q : large) CHECK(q == doctest::Approx(1.0 / 3).epsilon(1e-8));

    CHECK_THROWS_AS(attach_distribution_oracle(three, 4, 1, 0.0), Error);
}

TEST_CASE("normalizer identity on every reachable small state") {
    for (int m : {1, 2, 3}) {
        for (const auto& [degrees, i] : reachable_states(m, 5)) {
            const auto t = static_cast<std::int64_t>(degrees.size());
            for (double delta : {-0.9 * m, 0.0, 1.3}) {
                double direct = 0.0;
                for (const auto d : degrees) direct += d + delta;
                CHECK(std::abs(direct - attachment_normalizer(t, i, delta, m)) < 1e-9);
                const auto p = attach_distribution_oracle(degrees, t, i, delta);
                CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("rejection sampler matches the oracle on every reachable state (t <= 5, m <= 2)") {
    // 1375 goodness-of-fit tests: each p-value is held to a Bonferroni level,
    // and the pooled statistic catches small biases shared across states.
    constexpr std::uint64_t draws = 100000;
    constexpr double family_level = 1e-3;
    std::uint64_t seed = 1;
    struct Result {
        double statistic, dof, p;
        std::string label;
    };
    std::vector<Result> results;
    for (int m : {1, 2}) {
        for (const auto& [degrees, i] : reachable_states(m, 5)) {
            const auto t = static_cast<std::int64_t>(degrees.size());
            for (double delta : {-0.9 * m, -0.3, 0.0, 0.7, 4.0}) {
                const auto probs = attach_distribution_oracle(degrees, t, i, delta);
                auto state = GrowthState::from_old_degrees(degrees, m, i, seed++);
                std::vector<std::uint64_t> counts(degrees.size(), 0);
                for (std::uint64_t d = 0; d < draws; ++d) ++counts[state.sample_target(delta)];
                const double stat = oracle::chi_square_statistic(counts, probs, draws);
                const auto dof = static_cast<double>(t - 1);
                results.push_back({stat, dof, oracle::chi_square_p_value(stat, dof),
                                   "m=" + std::to_string(m) + " t=" + std::to_string(t) +
                                       " i=" + std::to_string(i) + " delta=" + std::to_string(delta)});
            }
        }
    }
    double pooled = 0.0, pooled_dof = 0.0, worst_p = 1.0;
    for (const auto& r : results) {
        CHECK_MESSAGE(r.p > family_level / static_cast<double>(results.size()), r.label);
        pooled += r.statistic;
        pooled_dof += r.dof;
        worst_p = std::min(worst_p, r.p);
    }
    const double pooled_p = oracle::chi_square_p_value(pooled, pooled_dof);
    MESSAGE("states checked: ", results.size(), ", smallest p-value: ", worst_p, ", pooled p-value: ", pooled_p);
    CHECK(pooled_p > family_level);
}

TEST_CASE("empirical law of grown graphs matches exact enumeration (n=4, m=1, delta=0.5)") {
    const auto exact = oracle::enumerate_degree_sequences(4, 1, 0.5);
    double total = 0.0;
    for (const auto& [seq, p] : exact) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    constexpr int runs = 100000;
    std::map<std::vector<std::uint32_t>, int> observed;
    const auto config = ModelConfig::null_model(1, 0.5, 4);
    for (int r = 0; r < runs; ++r) ++observed[grow(config, replicate_seed(9, 4, r)).degrees];

    double tv = 0.0;
    for (const auto& [seq, p] : exact) {
        const auto it = observed.find(seq);
        tv += std::abs((it == observed.end() ? 0.0 : it->second / double(runs)) - p);
    }
    for (const auto& [seq, count] : observed) CHECK(exact.count(seq) == 1);
    tv *= 0.5;
    MESSAGE("TV distance: ", tv);
    CHECK(tv < 0.02);
}

TEST_CASE("from_old_degrees rejects inconsistent states") {
    const std::vector<std::uint32_t> bad{2, 2, 1};
    CHECK_THROWS_AS(GrowthState::from_old_degrees(bad, 1, 1, 0), Error);
    const std::vector<std::uint32_t> below_m{3, 1};
    CHECK_THROWS_AS(GrowthState::from_old_degrees(below_m, 2, 1, 0), Error);
}
