#include "pacp/estimator.hpp"

#include <cmath>
#include <utility>

#include "pacp/error.hpp"
#include "pacp/model.hpp"

namespace pacp {

namespace {

void require_delta(const DegreeCensus& census, double delta) {
    if (!(delta > -census.m())) throw_invalid("delta must exceed -m");
}

struct ScoreParts {
    double score = 0.0;
    double derivative = 0.0;
};

// Data part of the score and its derivative: sums over k of N_{>k}/(k+d)^p.
ScoreParts census_sums(const DegreeCensus& census, double delta) {
    ScoreParts out;
    const int max_degree = census.max_degree();
    for (int k = census.m(); k < max_degree; ++k) {
        const double tail = static_cast<double>(census.tail(k));
        const double inv = 1.0 / (k + delta);
        out.score += tail * inv;
        out.derivative -= tail * inv * inv;
    }
    return out;
}

// Deterministic part: sum_{t,i} t/S and sum_{t,i} t^2/S^2.
ScoreParts normalizer_sums(std::int64_t n, int m, double delta) {
    double first = 0.0;
    double second = 0.0;
    for (std::int64_t t = 2; t <= n; ++t) {
        const double td = static_cast<double>(t);
        const double base = td * delta + 2.0 * m * static_cast<double>(t - 1);
        double step_first = 0.0;
        double step_second = 0.0;
        for (int i = 0; i < m; ++i) {
            const double ratio = td / (base + i);
            step_first += ratio;
            step_second += ratio * ratio;
        }
        first += step_first;
        second += step_second;
    }
    return {first, second};
}

ScoreParts score_and_derivative(const DegreeCensus& census, double delta) {
    const auto data = census_sums(census, delta);
    const auto model = normalizer_sums(census.n(), census.m(), delta);
    const double scale = 1.0 / static_cast<double>(census.n() + 1);
    return {scale * (data.score - model.score), scale * (data.derivative + model.derivative)};
}

}  // namespace

void ParameterBounds::validate() const {
    if (m < 1) throw_invalid("m must be a positive integer");
    if (!(delta_min > -m)) throw_invalid("delta_min must exceed -m");
    if (!(delta_min <= delta_max)) throw_invalid("delta_min must not exceed delta_max");
    if (!std::isfinite(delta_max)) throw_invalid("delta_max must be finite");
}

double s_norm(std::int64_t t, int i, double delta, int m) {
    return attachment_normalizer(t, i, delta, m);
}

double log_likelihood(const DegreeCensus& census, double delta) {
    require_delta(census, delta);
    double data = 0.0;
    for (int k = census.m(); k < census.max_degree(); ++k) {
        data += std::log(k + delta) * static_cast<double>(census.tail(k));
    }
    double model = 0.0;
    const int m = census.m();
    for (std::int64_t t = 2; t <= census.n(); ++t) {
        for (int i = 1; i <= m; ++i) model += std::log(s_norm(t, i, delta, m));
    }
    return (data - model) / static_cast<double>(census.n() + 1);
}

double score(const DegreeCensus& census, double delta) {
    require_delta(census, delta);
    return score_and_derivative(census, delta).score;
}

double score_derivative(const DegreeCensus& census, double delta) {
    require_delta(census, delta);
    return score_and_derivative(census, delta).derivative;
}

MleResult mle(const DegreeCensus& census, const ParameterBounds& bounds) {
    bounds.validate();
    if (bounds.m != census.m()) throw_invalid("bounds and census disagree on m");

    double lo = bounds.delta_min;
    double hi = bounds.delta_max;
    const double f_lo = score(census, lo);
    if (lo == hi) return {lo, f_lo, 0, true};
    const double f_hi = score(census, hi);

    if (f_lo == 0.0) return {lo, f_lo, 0, false};
    if (f_hi == 0.0) return {hi, f_hi, 0, false};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        const bool take_lo = log_likelihood(census, lo) >= log_likelihood(census, hi);
        return take_lo ? MleResult{lo, f_lo, 0, true} : MleResult{hi, f_hi, 0, true};
    }

    // Keep f(lo) > 0 > f(hi) orientation-free by tracking the sign at lo.
    const bool positive_at_lo = f_lo > 0.0;
    double x = 0.5 * (lo + hi);
    double f_x = 0.0;
    int iterations = 0;
    for (; iterations < 200; ++iterations) {
        const auto parts = score_and_derivative(census, x);
        f_x = parts.score;
        if (f_x == 0.0) break;
        if ((f_x > 0.0) == positive_at_lo) {
            lo = x;
        } else {
            hi = x;
        }
        double next = x - f_x / parts.derivative;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step < kMleTolerance || hi - lo < kMleTolerance) {
            f_x = score(census, x);
            ++iterations;
            break;
        }
    }
    return {x, f_x, iterations, false};
}

double limit_score(double delta, double delta0, int m) {
    if (!(delta > -m) || !(delta0 > -m)) throw_invalid("limit_score needs delta, delta0 > -m");
    const double series = inverse_moment(delta0, m, delta, 1);
    return (1.0 + (delta0 - delta) * series) / (2.0 + delta0 / m) - 1.0 / (2.0 + delta / m);
}

double limit_score_derivative_at_truth(double delta0, int m) {
    if (m < 1 || !(delta0 > -m)) throw_invalid("need m >= 1 and delta0 > -m");
    const double delta_over_m = delta0 / m;
    const double tail_scale = 1.0 / (2.0 + delta_over_m);
    // sum_{k>K} p_{>k}/(k+d)^2 <= p_{>K} sum_{k>K} 1/(k+d)^2 <= p_{>K}/(K+d).
    double pk = p_m_value(delta0, m);
    double sum = 0.0;
    double carry = 0.0;
    for (std::int64_t k = m; k < m + 100'000'000; ++k) {
        const double kd = static_cast<double>(k);
        const double tail = (kd + delta0) * tail_scale * pk;
        const double term = tail / ((kd + delta0) * (kd + delta0));
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if (tail / (kd + delta0) < kSeriesTolerance) {
            const double two_m = 2.0 * m + delta0;
            return m / (two_m * two_m) - sum;
        }
        pk *= (kd + delta0) / (kd + 3.0 + delta0 + delta_over_m);
    }
    throw_numeric("limit_score_derivative_at_truth: series did not converge");
}

}  // namespace pacp
