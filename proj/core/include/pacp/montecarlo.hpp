#pragma once

// Monte Carlo replication of the changepoint tests: for every graph size n and
// replicate b a graph is grown from replicate_seed(master_seed, n, b), its
// census is taken once, and every requested statistic and test is evaluated.
//
// Per-replicate outcomes land in a slot indexed by (n, b) and are reduced in
// index order afterwards, so the result does not depend on the number of
// worker threads or on scheduling.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pacp/estimator.hpp"
#include "pacp/hypothesis.hpp"
#include "pacp/model.hpp"

namespace pacp {

struct ExperimentSpec {
    int m = 5;
    double delta0 = 0.0;
    double delta1 = 0.0;
    double c = 1.0;
    double gamma = 0.75;
    std::optional<std::int64_t> tau;  // overrides (c, gamma) when set
    std::vector<std::int64_t> sizes;
    int replicates = 2000;
    double alpha = 0.05;
    std::vector<TestMode> tests = {TestMode::psi, TestMode::phi, TestMode::psi_cal,
                                   TestMode::phi_cal};
    ParameterBounds bounds{-4.0, 10.0, 5};
    ThresholdPolicy phi_policy;
    std::uint64_t master_seed = 20240101;
    bool keep_samples = false;

    void validate() const;
    [[nodiscard]] ModelConfig model_for(std::int64_t n) const;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct PowerEstimate {
    std::int64_t n = 0;
    TestMode test = TestMode::psi;
    std::int64_t rejections = 0;
    std::int64_t trials = 0;
    double power = 0.0;
    Interval ci;
    std::optional<double> predicted;  // psi_cal and phi_cal only
};

struct SizeSummary {
    std::int64_t n = 0;
    std::int64_t tau = 0;
    double mean_T = 0.0;
    double mean_Q = 0.0;
    double var_T = 0.0;  // 1/B convention
    double var_Q = 0.0;
    double mean_delta_hat = 0.0;
    double var_delta_hat = 0.0;
    std::int64_t boundary_hits = 0;
    std::vector<double> samples_T;  // kept when keep_samples
    std::vector<double> samples_Q;
    std::vector<double> samples_delta_hat;
    std::vector<double> p_values_psi_cal;
};

struct ExperimentResult {
    std::vector<PowerEstimate> power;  // ordered by (size, test)
    std::vector<SizeSummary> sizes;

    // FNV-1a over every numeric field, for determinism checks.
    [[nodiscard]] std::uint64_t digest() const;
};

// threads = 0 uses std::thread::hardware_concurrency().
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = 0);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // divides by B, not B - 1
};
Moments empirical_moments(const std::vector<double>& samples);

// Exact (Clopper-Pearson) binomial interval at confidence `level`.
Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double level = 0.95);

// Normal QQ pairs (theoretical, empirical) of the standardized, sorted samples;
// the i-th theoretical quantile is Phi^{-1}((i - 0.5)/B).
std::vector<std::pair<double, double>> qq_data(const std::vector<double>& samples);

// sup_x |F_B(x) - Phi(x)| of the standardized samples.
double ks_distance_to_normal(const std::vector<double>& samples, bool standardize = true);

}  // namespace pacp
