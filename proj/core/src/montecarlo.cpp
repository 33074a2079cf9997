#include "pacp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "pacp/degree_stats.hpp"
#include "pacp/error.hpp"
#include "pacp/growth.hpp"
#include "pacp/normal.hpp"
#include "pacp/rng.hpp"

namespace pacp {

namespace {

struct ReplicateOutcome {
    double T = 0.0;
    double Q = 0.0;
    double delta_hat = 0.0;
    double p_psi_cal = 1.0;
    bool boundary_hit = false;
    std::uint8_t rejects = 0;  // bit per TestMode
};

std::uint8_t mode_bit(TestMode mode) { return static_cast<std::uint8_t>(1u << static_cast<int>(mode)); }

ReplicateOutcome run_replicate(const ExperimentSpec& spec, const ModelConfig& model,
                               std::uint64_t seed) {
    const auto graph = grow(model, seed);
    const auto observed = census(graph);

    ReplicateOutcome out;
    const auto q = statistic_Q(observed, spec.bounds);
    out.Q = q.value;
    out.delta_hat = q.mle.delta_hat;
    out.boundary_hit = q.mle.boundary_hit;

    const auto psi_cal = test_psi_cal(observed, spec.delta0, spec.alpha);
    out.T = psi_cal.statistic;
    out.p_psi_cal = psi_cal.p_value.value_or(1.0);

    for (const auto mode : spec.tests) {
        bool reject = false;
        switch (mode) {
            case TestMode::psi: reject = test_psi(observed, spec.delta0, spec.alpha).reject; break;
            case TestMode::phi: reject = test_phi(observed, q, spec.phi_policy).reject; break;
            case TestMode::psi_cal: reject = psi_cal.reject; break;
            case TestMode::phi_cal: reject = test_phi_cal(observed, q, spec.alpha).reject; break;
        }
        if (reject) out.rejects |= mode_bit(mode);
    }
    return out;
}

// Upper endpoint x with I_x(a, b) = target, by bisection on [0, 1].
double beta_quantile(double a, double b, double target) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (boost::math::ibeta(a, b, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void ExperimentSpec::validate() const {
    if (replicates < 1) throw_invalid("replicates must be at least 1");
    if (sizes.empty()) throw_invalid("sizes must be non-empty");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2) throw_invalid("every size must be at least 2");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw_invalid("sizes must be increasing");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw_invalid("alpha must lie in (0, 1)");
    if (tests.empty()) throw_invalid("at least one test is required");
    if (bounds.m != m) throw_invalid("bounds.m must equal m");
    bounds.validate();
    for (const auto n : sizes) model_for(n).validate();
}

ModelConfig ExperimentSpec::model_for(std::int64_t n) const {
    if (tau) return ModelConfig{m, delta0, delta1, ExplicitTau{std::min(*tau, n)}, n};
    return ModelConfig::late_change(m, delta0, delta1, c, gamma, n);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
    spec.validate();
    const auto replicates = static_cast<std::size_t>(spec.replicates);
    const std::size_t total = spec.sizes.size() * replicates;
    std::vector<ReplicateOutcome> outcomes(total);
    std::vector<ModelConfig> models;
    for (const auto n : spec.sizes) models.push_back(spec.model_for(n));

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1, std::memory_order_relaxed);
            if (task >= total) return;
            const std::size_t size_index = task / replicates;
            const std::size_t b = task % replicates;
            try {
                const auto n = static_cast<std::uint64_t>(spec.sizes[size_index]);
                outcomes[task] = run_replicate(spec, models[size_index],
                                               replicate_seed(spec.master_seed, n, b));
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const auto n = spec.sizes[s];
        const auto first = outcomes.begin() + static_cast<std::ptrdiff_t>(s * replicates);
        const auto last = first + static_cast<std::ptrdiff_t>(replicates);

        SizeSummary summary;
        summary.n = n;
        summary.tau = resolve_tau(models[s]).tau;
        std::vector<double> t_samples, q_samples, d_samples, p_samples;
        for (auto it = first; it != last; ++it) {
            t_samples.push_back(it->T);
            q_samples.push_back(it->Q);
            d_samples.push_back(it->delta_hat);
            p_samples.push_back(it->p_psi_cal);
            if (it->boundary_hit) ++summary.boundary_hits;
        }
        const auto mt = empirical_moments(t_samples);
        const auto mq = empirical_moments(q_samples);
        const auto md = empirical_moments(d_samples);
        summary.mean_T = mt.mean;
        summary.var_T = mt.variance;
        summary.mean_Q = mq.mean;
        summary.var_Q = mq.variance;
        summary.mean_delta_hat = md.mean;
        summary.var_delta_hat = md.variance;
        if (spec.keep_samples) {
            summary.samples_T = std::move(t_samples);
            summary.samples_Q = std::move(q_samples);
            summary.samples_delta_hat = std::move(d_samples);
            summary.p_values_psi_cal = std::move(p_samples);
        }
        result.sizes.push_back(std::move(summary));

        for (const auto mode : spec.tests) {
            PowerEstimate estimate;
            estimate.n = n;
            estimate.test = mode;
            estimate.trials = spec.replicates;
            estimate.rejections = std::count_if(
                first, last, [bit = mode_bit(mode)](const auto& o) { return (o.rejects & bit) != 0; });
            estimate.power =
                static_cast<double>(estimate.rejections) / static_cast<double>(estimate.trials);
            estimate.ci = clopper_pearson(estimate.rejections, estimate.trials, 0.95);
            if (mode == TestMode::psi_cal || mode == TestMode::phi_cal) {
                // An explicit tau is mapped onto the equivalent c = (n - tau) / n^gamma.
                const double c = spec.tau ? static_cast<double>(n - result.sizes.back().tau) /
                                                std::pow(static_cast<double>(n), spec.gamma)
                                          : spec.c;
                estimate.predicted = predicted_power(mode, spec.delta0, spec.delta1, c,
                                                     spec.gamma, spec.m, n, spec.alpha);
            }
            result.power.push_back(estimate);
        }
    }
    return result;
}

std::uint64_t ExperimentResult::digest() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto feed_bits = [&h](std::uint64_t bits) {
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    auto feed = [&](double x) { feed_bits(std::bit_cast<std::uint64_t>(x)); };
    auto feed_int = [&](std::int64_t x) { feed_bits(static_cast<std::uint64_t>(x)); };
    for (const auto& p : power) {
        feed_int(p.n);
        feed_int(static_cast<std::int64_t>(p.test));
        feed_int(p.rejections);
        feed_int(p.trials);
        feed(p.power);
        feed(p.ci.lo);
        feed(p.ci.hi);
        feed(p.predicted.value_or(-1.0));
    }
    for (const auto& s : sizes) {
        feed_int(s.n);
        feed_int(s.tau);
        for (const double x : {s.mean_T, s.mean_Q, s.var_T, s.var_Q, s.mean_delta_hat,
                               s.var_delta_hat}) {
            feed(x);
        }
        feed_int(s.boundary_hits);
        for (const auto* v : {&s.samples_T, &s.samples_Q, &s.samples_delta_hat,
                              &s.p_values_psi_cal}) {
            for (const double x : *v) feed(x);
        }
    }
    return h;
}

Moments empirical_moments(const std::vector<double>& samples) {
    if (samples.empty()) throw_invalid("empirical_moments of an empty sample");
    const double count = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
    double squares = 0.0;
    for (const double x : samples) squares += (x - mean) * (x - mean);
    return {mean, squares / count};
}

Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double level) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw_invalid("clopper_pearson needs 0 <= successes <= trials and trials >= 1");
    }
    if (!(level > 0.0 && level < 1.0)) throw_invalid("confidence level must lie in (0, 1)");
    const double tail = 0.5 * (1.0 - level);
    const auto x = static_cast<double>(successes);
    const auto n = static_cast<double>(trials);
    Interval out;
    out.lo = successes == 0 ? 0.0 : beta_quantile(x, n - x + 1.0, tail);
    out.hi = successes == trials ? 1.0 : beta_quantile(x + 1.0, n - x, 1.0 - tail);
    return out;
}

std::vector<std::pair<double, double>> qq_data(const std::vector<double>& samples) {
    if (samples.size() < 2) throw_invalid("qq_data needs at least two samples");
    const auto moments = empirical_moments(samples);
    if (!(moments.variance > 0.0)) throw_invalid("qq_data of a zero-variance sample");
    const double sd = std::sqrt(moments.variance);
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double count = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double theoretical = normal_quantile((static_cast<double>(i) + 0.5) / count);
        out.emplace_back(theoretical, (sorted[i] - moments.mean) / sd);
    }
    return out;
}

double ks_distance_to_normal(const std::vector<double>& samples, bool standardize) {
    if (samples.empty()) throw_invalid("ks_distance_to_normal of an empty sample");
    std::vector<double> sorted = samples;
    if (standardize) {
        const auto moments = empirical_moments(samples);
        if (!(moments.variance > 0.0)) throw_invalid("cannot standardize a zero-variance sample");
        const double sd = std::sqrt(moments.variance);
        for (auto& x : sorted) x = (x - moments.mean) / sd;
    }
    std::sort(sorted.begin(), sorted.end());
    const double count = static_cast<double>(sorted.size());
    double distance = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf(sorted[i]);
        distance = std::max({distance, static_cast<double>(i + 1) / count - cdf,
                             cdf - static_cast<double>(i) / count});
    }
    return distance;
}

}  // namespace pacp
