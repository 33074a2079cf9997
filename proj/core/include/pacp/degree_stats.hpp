#pragma once

// Degree census of a final graph and the limiting degree law p_k(delta) of the
// constant-offset model,
//
//     p_k(delta) = (2 + delta/m) Gamma(k + delta) Gamma(m + 2 + delta + delta/m)
//                  / (Gamma(m + delta) Gamma(k + 3 + delta + delta/m)),   k >= m.
//
// p_k is evaluated through the product form
//     p_k = p_m prod_{j=m+1..k} (j - 1 + delta) / (j + 2 + delta + delta/m),
// which needs no special functions and does not overflow.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pacp {

struct FinalGraph;

class DegreeCensus {
public:
    DegreeCensus() = default;

    // counts[k] = number of vertices of degree k. n is taken as sum(counts) - 1.
    static DegreeCensus from_counts(int m, std::vector<std::uint64_t> counts);

    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] int max_degree() const noexcept {
        return counts_.empty() ? 0 : static_cast<int>(counts_.size()) - 1;
    }
    // N_k(n); zero outside [0, max_degree].
    [[nodiscard]] std::uint64_t count(int k) const noexcept;
    // N_{>k}(n).
    [[nodiscard]] std::uint64_t tail(int k) const noexcept;
    [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    [[nodiscard]] std::span<const std::uint64_t> tails() const noexcept { return tails_; }

    // Human-readable list of violated census invariants (empty when the census
    // could have come from a grown graph with this n and m).
    [[nodiscard]] std::vector<std::string> invariant_violations() const;

    friend bool operator==(const DegreeCensus&, const DegreeCensus&) = default;

private:
    std::int64_t n_ = 0;
    int m_ = 1;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> tails_;
};

DegreeCensus census(std::span<const std::uint32_t> degrees, int m);
DegreeCensus census(const FinalGraph& graph);

double p_m_value(double delta, int m);
double p_k_value(double delta, int m, int k);
// p_{>k}(delta) = (k + delta) / (2 + delta/m) * p_k(delta).
double p_tail(double delta, int m, int k);

// dp_m/ddelta = -1 / (m + delta + 2 + delta/m)^2. This closed form is the exact
// derivative of p_m; p_m_prime_fd is the central-difference counterpart kept
// for cross-checking.
double p_m_prime_closed(double delta, int m);
double p_m_prime_fd(double delta, int m, double h = 1e-6);

// p_m, ..., p_K as a vector indexed by k - m.
std::vector<double> degree_distribution(double delta, int m, int max_k);

// Absolute tolerance every infinite series over k >= m is summed to.
inline constexpr double kSeriesTolerance = 1e-12;

// sum_{k>=m} p_k(delta0) / (k + shift)^power for power >= 1 and shift > -m.
// Stops at the first K whose remainder bound p_{>K}(delta0) / (K + 1 + shift)^power
// is below kSeriesTolerance. Throws Error(numeric) if that takes over 1e8 terms.
double inverse_moment(double delta0, int m, double shift, int power);

}  // namespace pacp
