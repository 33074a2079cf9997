#include "pacp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pacp/error.hpp"

namespace pacp {

ModelConfig ModelConfig::null_model(int m, double delta0, std::int64_t n) {
    return ModelConfig{m, delta0, delta0, ExplicitTau{n}, n};
}

ModelConfig ModelConfig::late_change(int m, double delta0, double delta1, double c, double gamma,
                                     std::int64_t n) {
    return ModelConfig{m, delta0, delta1, ScaledTau{c, gamma}, n};
}

void ModelConfig::validate() const {
    if (m < 1) throw_invalid("m must be a positive integer");
    if (n < 1) throw_invalid("n must be at least 1");
    if (!std::isfinite(delta0) || delta0 <= -m) throw_invalid("delta0 must be finite and > -m");
    if (!std::isfinite(delta1) || delta1 <= -m) throw_invalid("delta1 must be finite and > -m");
    if (const auto* scaled = std::get_if<ScaledTau>(&changepoint)) {
        if (!(scaled->c > 0.0) || !std::isfinite(scaled->c)) throw_invalid("c must be > 0");
        if (!(scaled->gamma > 0.0 && scaled->gamma < 1.0)) throw_invalid("gamma must lie in (0, 1)");
    } else {
        const auto tau = std::get<ExplicitTau>(changepoint).tau;
        if (tau < 1 || tau > n) throw_invalid("tau must satisfy 1 <= tau <= n");
    }
}

namespace {

// floor(x), except that values within 1e-9 (relative) of an integer snap to it,
// so that e.g. 10000^0.75 computed as 999.9999999999 still yields 1000.
std::int64_t snapped_floor(double x) {
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::floor(x));
}

}  // namespace

ResolvedTau resolve_tau(const ModelConfig& config) {
    if (const auto* explicit_tau = std::get_if<ExplicitTau>(&config.changepoint)) {
        return {explicit_tau->tau, false};
    }
    const auto& scaled = std::get<ScaledTau>(config.changepoint);
    const double late = scaled.c * std::pow(static_cast<double>(config.n), scaled.gamma);
    const std::int64_t tau = config.n - snapped_floor(late);
    if (tau < 1) return {1, true};
    if (tau > config.n) return {config.n, true};
    return {tau, false};
}

bool is_null_model(const ModelConfig& config) {
    return config.delta1 == config.delta0 || resolve_tau(config).tau == config.n;
}

OffsetSchedule::OffsetSchedule(const ModelConfig& config)
    : delta0_(config.delta0), delta1_(config.delta1), tau_(0), clamped_(false) {
    const auto resolved = resolve_tau(config);
    tau_ = resolved.tau;
    clamped_ = resolved.clamped;
}

double delta_at(const ModelConfig& config, std::int64_t t) {
    if (t < 1 || t > config.n) throw_invalid("delta_at: t must satisfy 1 <= t <= n");
    return OffsetSchedule(config).at(t);
}

std::string describe(const Changepoint& changepoint) {
    std::ostringstream out;
    if (const auto* explicit_tau = std::get_if<ExplicitTau>(&changepoint)) {
        out << "tau=" << explicit_tau->tau;
    } else {
        const auto& scaled = std::get<ScaledTau>(changepoint);
        out << "c=" << scaled.c << ",gamma=" << scaled.gamma;
    }
    return out.str();
}

}  // namespace pacp
