#pragma once

// Sequential growth of the preferential-attachment graph.
//
// Step t adds vertex v_t and then, for i = 1..m, joins it to an old vertex
// v in {v_0, ..., v_{t-1}} chosen with probability
//
//     (D_v + delta(t)) / (2(t-1)m + t delta(t) + (i-1)),
//
// where D_v already counts the edges added in sub-steps 1..i-1. The new
// vertex never attaches to itself, so there are no self-loops, but it may
// attach to the same old vertex more than once.
//
// Targets are drawn by rejection from the degree-proportional proposal
// "uniform entry of the endpoint list", accepting candidate v with probability
// (D_v + delta) / (M D_v). Since every old vertex has D_v >= m, the ratio
// (D + delta) / D is bounded by M = (m + delta) / m when delta >= 0 and by
// M = 1 when delta < 0. The accepted draw has exactly the target law.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pacp/model.hpp"
#include "pacp/rng.hpp"

namespace pacp {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u = 0;  // smaller id (the older vertex)
    VertexId v = 0;  // larger id

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct FinalGraph {
    ModelConfig config;
    std::vector<std::uint32_t> degrees;  // length n + 1
    std::optional<std::vector<Edge>> edges;
    std::uint64_t seed = 0;
    std::int64_t tau = 1;
    bool tau_clamped = false;
};

struct GrowOptions {
    bool keep_edges = false;
};

class GrowthState {
public:
    // Seed graph G_1: v_0 and v_1 joined by m parallel edges. The state is
    // positioned before sub-step (t = 2, i = 1).
    GrowthState(int m, std::uint64_t seed);

    // Arbitrary intermediate state before sub-step (t, i), where
    // t = old_degrees.size() and the new vertex v_t already holds i - 1 edges.
    // The sum of old_degrees must equal 2(t-1)m + (i-1) and each entry must be
    // at least m. Mainly useful for checking the sampler on small states.
    static GrowthState from_old_degrees(std::span<const std::uint32_t> old_degrees, int m, int i,
                                        std::uint64_t seed);

    // Draws a target for the current sub-step without changing the graph.
    VertexId sample_target(double delta);

    // Performs the current sub-step: samples a target, adds the edge, and
    // advances to the next sub-step (closing step t after sub-step m).
    VertexId attach_next(double delta);

    [[nodiscard]] std::int64_t t() const noexcept { return t_; }
    [[nodiscard]] int sub_step() const noexcept { return i_; }
    [[nodiscard]] int m() const noexcept { return m_; }

    // Degrees of v_0..v_t; the entry for v_t is its in-progress degree i - 1.
    [[nodiscard]] std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

    // Total degree of the old vertices, equal to the endpoint-list length.
    [[nodiscard]] std::uint64_t old_degree_sum() const noexcept { return endpoints_.size(); }

    // Number of proposals rejected so far.
    [[nodiscard]] std::uint64_t rejections() const noexcept { return rejections_; }

    std::vector<std::uint32_t> release_degrees() &&;

private:
    friend FinalGraph grow(const ModelConfig& config, std::uint64_t seed, GrowOptions options);

    GrowthState(int m, Xoshiro256ss rng) : m_(m), rng_(rng) {}
    void record(VertexId target);

    int m_;
    std::int64_t t_ = 2;
    int i_ = 1;
    std::vector<std::uint32_t> degrees_;
    std::vector<VertexId> endpoints_;  // each old vertex once per incident edge end
    Xoshiro256ss rng_;
    std::uint64_t rejections_ = 0;
};

// Runs steps 2..n from the seed graph. Equal (config, seed) gives
// bit-identical output on every platform.
FinalGraph grow(const ModelConfig& config, std::uint64_t seed, GrowOptions options = {});

// Reference law of a single sub-step by direct normalization of
// (D_v + delta) over the old vertices. Sums to one.
std::vector<double> attach_distribution_oracle(std::span<const std::uint32_t> old_degrees,
                                               std::int64_t t, int i, double delta);

}  // namespace pacp
