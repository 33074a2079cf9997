#include "pacp/growth.hpp"

#include <numeric>
#include <utility>

#include "pacp/error.hpp"

namespace pacp {

GrowthState::GrowthState(int m, std::uint64_t seed) : m_(m), rng_(seed) {
    if (m < 1) throw_invalid("m must be a positive integer");
    degrees_ = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m), 0};
    endpoints_.reserve(static_cast<std::size_t>(4 * m));
    endpoints_.assign(static_cast<std::size_t>(m), 0);
    endpoints_.insert(endpoints_.end(), static_cast<std::size_t>(m), 1);
}

GrowthState GrowthState::from_old_degrees(std::span<const std::uint32_t> old_degrees, int m,
                                          int i, std::uint64_t seed) {
    const auto t = static_cast<std::int64_t>(old_degrees.size());
    if (m < 1) throw_invalid("m must be a positive integer");
    if (t < 2) throw_invalid("a growth state needs at least two old vertices");
    if (i < 1 || i > m) throw_invalid("sub-step i must satisfy 1 <= i <= m");
    const std::uint64_t sum = std::accumulate(old_degrees.begin(), old_degrees.end(),
                                              std::uint64_t{0});
    if (sum != static_cast<std::uint64_t>(2 * (t - 1) * m + (i - 1))) {
        throw_invalid("old degrees must sum to 2(t-1)m + (i-1)");
    }
    GrowthState state(m, Xoshiro256ss(seed));
    state.t_ = t;
    state.i_ = i;
    state.degrees_.assign(old_degrees.begin(), old_degrees.end());
    state.degrees_.push_back(static_cast<std::uint32_t>(i - 1));
    state.endpoints_.reserve(sum);
    for (std::size_t v = 0; v < old_degrees.size(); ++v) {
        if (old_degrees[v] < static_cast<std::uint32_t>(m)) {
            throw_invalid("every old vertex has degree at least m");
        }
        state.endpoints_.insert(state.endpoints_.end(), old_degrees[v],
                                static_cast<VertexId>(v));
    }
    return state;
}

VertexId GrowthState::sample_target(double delta) {
    const std::uint64_t size = endpoints_.size();
    if (delta == 0.0) return endpoints_[rng_.below(size)];

    // Accept v when u * M * D_v < D_v + delta, with M = (m + delta)/m for
    // delta > 0 and M = 1 for delta < 0. The delta > 0 case is scaled by m
    // to keep the comparison free of divisions.
    const double m = static_cast<double>(m_);
    const double bound_scale = delta > 0.0 ? (m + delta) : m;
    for (;;) {
        const VertexId v = endpoints_[rng_.below(size)];
        const double degree = static_cast<double>(degrees_[v]);
        const double u = rng_.uniform01();
        if (u * bound_scale * degree < m * (degree + delta)) return v;
        ++rejections_;
    }
}

void GrowthState::record(VertexId target) {
    ++degrees_[target];
    endpoints_.push_back(target);
    if (i_ < m_) {
        ++i_;
        ++degrees_.back();
        return;
    }
    // Close step t: v_t now has degree m and joins the proposal structure.
    const auto new_vertex = static_cast<VertexId>(t_);
    degrees_.back() = static_cast<std::uint32_t>(m_);
    endpoints_.insert(endpoints_.end(), static_cast<std::size_t>(m_), new_vertex);
    degrees_.push_back(0);
    ++t_;
    i_ = 1;
}

VertexId GrowthState::attach_next(double delta) {
    const VertexId target = sample_target(delta);
    record(target);
    return target;
}

std::vector<std::uint32_t> GrowthState::release_degrees() && {
    // Drop the entry reserved for the not-yet-started vertex when the state
    // sits at the beginning of a step.
    if (i_ == 1 && !degrees_.empty() && degrees_.back() == 0) degrees_.pop_back();
    return std::move(degrees_);
}

FinalGraph grow(const ModelConfig& config, std::uint64_t seed, GrowOptions options) {
    config.validate();
    const OffsetSchedule schedule(config);
    const auto n = config.n;
    const int m = config.m;

    GrowthState state(m, seed);
    state.degrees_.reserve(static_cast<std::size_t>(n + 2));
    state.endpoints_.reserve(static_cast<std::size_t>(2 * n * m));

    std::optional<std::vector<Edge>> edges;
    if (options.keep_edges) {
        edges.emplace();
        edges->reserve(static_cast<std::size_t>(n * m));
        edges->insert(edges->end(), static_cast<std::size_t>(m), Edge{0, 1});
    }

    for (std::int64_t t = 2; t <= n; ++t) {
        const double delta = schedule.at(t);
        for (int i = 1; i <= m; ++i) {
            const VertexId target = state.attach_next(delta);
            if (edges) edges->push_back(Edge{target, static_cast<VertexId>(t)});
        }
    }

    FinalGraph graph;
    graph.config = config;
    graph.degrees = std::move(state).release_degrees();
    graph.edges = std::move(edges);
    graph.seed = seed;
    graph.tau = schedule.tau();
    graph.tau_clamped = schedule.clamped();
    return graph;
}

std::vector<double> attach_distribution_oracle(std::span<const std::uint32_t> old_degrees,
                                               std::int64_t t, int i, double delta) {
    if (static_cast<std::int64_t>(old_degrees.size()) != t) {
        throw_invalid("oracle expects exactly t old vertices");
    }
    if (i < 1) throw_invalid("sub-step i must be positive");
    std::vector<double> weights(old_degrees.size());
    double total = 0.0;
    for (std::size_t v = 0; v < old_degrees.size(); ++v) {
        weights[v] = static_cast<double>(old_degrees[v]) + delta;
        if (!(weights[v] > 0.0)) throw_invalid("attachment weight must be positive");
        total += weights[v];
    }
    for (auto& w : weights) w /= total;
    return weights;
}

}  // namespace pacp
