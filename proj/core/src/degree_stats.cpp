#include "pacp/degree_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pacp/error.hpp"
#include "pacp/growth.hpp"

namespace pacp {

namespace {

constexpr int kLogSpaceThreshold = 1'000'000;
constexpr std::int64_t kMaxSeriesTerms = 100'000'000;

void require_delta(double delta, int m) {
    if (m < 1) throw_invalid("m must be a positive integer");
    if (!(delta > -m)) throw_invalid("delta must exceed -m");
}

// Ratio p_k / p_{k-1} = (k - 1 + delta) / (k + 2 + delta + delta/m).
inline double step_ratio(double delta, double delta_over_m, int k) {
    return (k - 1 + delta) / (k + 2 + delta + delta_over_m);
}

}  // namespace

DegreeCensus DegreeCensus::from_counts(int m, std::vector<std::uint64_t> counts) {
    if (m < 1) throw_invalid("m must be a positive integer");
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total < 2) throw_invalid("a census needs at least two vertices");

    DegreeCensus out;
    out.m_ = m;
    out.n_ = static_cast<std::int64_t>(total) - 1;
    out.counts_ = std::move(counts);
    out.tails_.assign(out.counts_.size(), 0);
    std::uint64_t above = 0;
    for (std::size_t k = out.counts_.size(); k-- > 0;) {
        out.tails_[k] = above;
        above += out.counts_[k];
    }
    return out;
}

std::uint64_t DegreeCensus::count(int k) const noexcept {
    if (k < 0 || k >= static_cast<int>(counts_.size())) return 0;
    return counts_[static_cast<std::size_t>(k)];
}

std::uint64_t DegreeCensus::tail(int k) const noexcept {
    if (k >= static_cast<int>(tails_.size())) return 0;
    if (k < 0) return static_cast<std::uint64_t>(n_ + 1);
    return tails_[static_cast<std::size_t>(k)];
}

std::vector<std::string> DegreeCensus::invariant_violations() const {
    std::vector<std::string> out;
    std::uint64_t vertices = 0;
    std::uint64_t degree_sum = 0;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        vertices += counts_[k];
        degree_sum += k * counts_[k];
        if (static_cast<int>(k) < m_ && counts_[k] != 0) {
            out.push_back("vertex with degree " + std::to_string(k) + " below m");
        }
    }
    if (vertices != static_cast<std::uint64_t>(n_ + 1)) out.push_back("sum of counts != n + 1");
    if (degree_sum != static_cast<std::uint64_t>(2 * n_ * m_)) {
        out.push_back("sum of k N_k != 2nm");
    }
    if (count(m_) == 0) out.push_back("no vertex of minimal degree m");
    return out;
}

DegreeCensus census(std::span<const std::uint32_t> degrees, int m) {
    if (degrees.empty()) throw_invalid("census of an empty degree sequence");
    const auto max_degree = *std::max_element(degrees.begin(), degrees.end());
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_degree) + 1, 0);
    for (const auto d : degrees) ++counts[d];
    return DegreeCensus::from_counts(m, std::move(counts));
}

DegreeCensus census(const FinalGraph& graph) { return census(graph.degrees, graph.config.m); }

double p_m_value(double delta, int m) {
    require_delta(delta, m);
    const double a = 2.0 + delta / m;
    return a / (m + delta + a);
}

double p_k_value(double delta, int m, int k) {
    require_delta(delta, m);
    if (k < m) throw_invalid("p_k is defined for k >= m");
    const double delta_over_m = delta / m;
    if (k > kLogSpaceThreshold) {
        const double log_p = std::log(2.0 + delta_over_m) + std::lgamma(k + delta) +
                             std::lgamma(m + 2.0 + delta + delta_over_m) - std::lgamma(m + delta) -
                             std::lgamma(k + 3.0 + delta + delta_over_m);
        return std::exp(log_p);
    }
    double p = p_m_value(delta, m);
    for (int j = m + 1; j <= k; ++j) p *= step_ratio(delta, delta_over_m, j);
    return p;
}

double p_tail(double delta, int m, int k) {
    const double pk = p_k_value(delta, m, k);
    return (k + delta) / (2.0 + delta / m) * pk;
}

double p_m_prime_closed(double delta, int m) {
    require_delta(delta, m);
    const double denom = m + delta + 2.0 + delta / m;
    return -1.0 / (denom * denom);
}

double p_m_prime_fd(double delta, int m, double h) {
    require_delta(delta - h, m);
    return (p_m_value(delta + h, m) - p_m_value(delta - h, m)) / (2.0 * h);
}

std::vector<double> degree_distribution(double delta, int m, int max_k) {
    require_delta(delta, m);
    if (max_k < m) return {};
    std::vector<double> p(static_cast<std::size_t>(max_k - m + 1));
    const double delta_over_m = delta / m;
    p[0] = p_m_value(delta, m);
    for (int k = m + 1; k <= max_k; ++k) {
        const auto idx = static_cast<std::size_t>(k - m);
        p[idx] = p[idx - 1] * step_ratio(delta, delta_over_m, k);
    }
    return p;
}

double inverse_moment(double delta0, int m, double shift, int power) {
    require_delta(delta0, m);
    require_delta(shift, m);
    if (power < 1) throw_invalid("inverse_moment needs power >= 1");
    const double delta_over_m = delta0 / m;
    const double tail_scale = 1.0 / (2.0 + delta_over_m);

    double pk = p_m_value(delta0, m);
    // Kahan summation: up to ~1e6 small terms of decreasing size.
    double sum = 0.0;
    double carry = 0.0;
    for (std::int64_t k = m; k < m + kMaxSeriesTerms; ++k) {
        const double kd = static_cast<double>(k);
        const double term = pk / std::pow(kd + shift, power);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;

        const double remainder = (kd + delta0) * tail_scale * pk / std::pow(kd + 1.0 + shift, power);
        if (remainder < kSeriesTolerance) return sum;
        pk *= (kd + delta0) / (kd + 3.0 + delta0 + delta_over_m);
    }
    throw_numeric("inverse_moment: series did not reach the truncation tolerance");
}

}  // namespace pacp
