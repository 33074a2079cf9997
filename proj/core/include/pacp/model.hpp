#pragma once

// Parameterization of the affine preferential-attachment process with a
// single changepoint in the attachment offset.

#include <cstdint>
#include <string>
#include <variant>

namespace pacp {

// Changepoint given directly as a time step.
struct ExplicitTau {
    std::int64_t tau = 1;
};

// Late changepoint tau = n - floor(c * n^gamma).
struct ScaledTau {
    double c = 1.0;
    double gamma = 0.75;
};

using Changepoint = std::variant<ExplicitTau, ScaledTau>;

struct ModelConfig {
    int m = 1;            // edges added per new vertex
    double delta0 = 0.0;  // offset up to and including tau
    double delta1 = 0.0;  // offset after tau
    Changepoint changepoint = ExplicitTau{1};
    std::int64_t n = 1;   // final time; the graph has n + 1 vertices

    // Constant-offset model (tau = n).
    static ModelConfig null_model(int m, double delta0, std::int64_t n);
    // delta0 until n - floor(c n^gamma), delta1 afterwards.
    static ModelConfig late_change(int m, double delta0, double delta1, double c, double gamma,
                                   std::int64_t n);

    // Throws Error(invalid_argument) naming the first violated constraint.
    void validate() const;
};

struct ResolvedTau {
    std::int64_t tau = 1;
    bool clamped = false;  // floor(c n^gamma) fell outside [0, n - 1]
};

ResolvedTau resolve_tau(const ModelConfig& config);

// True when the run is indistinguishable from the constant-offset model.
bool is_null_model(const ModelConfig& config);

// Step function delta(t), resolved once.
class OffsetSchedule {
public:
    explicit OffsetSchedule(const ModelConfig& config);

    [[nodiscard]] double at(std::int64_t t) const noexcept {
        return t <= tau_ ? delta0_ : delta1_;
    }
    [[nodiscard]] std::int64_t tau() const noexcept { return tau_; }
    [[nodiscard]] bool clamped() const noexcept { return clamped_; }

private:
    double delta0_;
    double delta1_;
    std::int64_t tau_;
    bool clamped_;
};

// delta(t) for 1 <= t <= n; throws on t out of range.
double delta_at(const ModelConfig& config, std::int64_t t);

// Attachment normalizer before sub-step i of step t:
//   S_{t,i-1}(delta) = t delta + 2m(t - 1) + (i - 1),
// the total weight sum_{v < t} (D_v + delta) over the old vertices.
constexpr double attachment_normalizer(std::int64_t t, int i, double delta, int m) noexcept {
    return static_cast<double>(t) * delta + 2.0 * m * static_cast<double>(t - 1) +
           static_cast<double>(i - 1);
}

std::string describe(const Changepoint& changepoint);

}  // namespace pacp
