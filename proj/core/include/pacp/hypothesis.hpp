#pragma once

// Minimal-degree changepoint tests.
//
// Statistics (N_m = number of degree-m vertices):
//   T = N_m - n p_m(delta0)           known delta0
//   Q = N_m - n p_m(delta_hat)        delta0 replaced by the MLE
//
// Decision rules, all of the form "reject when |statistic| >= threshold":
//   psi      m sqrt(8 n log(2/alpha))                 (Azuma bound, conservative)
//   phi      a_n, default sqrt(n) (log n)^{3/2}
//   psi_cal  sqrt(n w(delta0, m)) z_{alpha/2}
//   phi_cal  sqrt(n (w + u)(delta_hat, m)) z_{alpha/2}
//
// Naming: `alpha` is always the significance level. The mean shift of Q under
// the late-change alternative is called alpha_shift.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pacp/degree_stats.hpp"
#include "pacp/estimator.hpp"

namespace pacp {

enum class TestMode { psi, phi, psi_cal, phi_cal };

std::string_view to_string(TestMode mode);
// Accepts "psi", "phi", "psi_cal"/"psi-cal", "phi_cal"/"phi-cal".
TestMode parse_test_mode(std::string_view text);

struct TestReport {
    TestMode mode = TestMode::psi;
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
    std::optional<double> alpha;    // absent for phi, which has no nominal level
    std::optional<double> p_value;  // calibrated modes only
    double delta_used = 0.0;        // delta0 or delta_hat
    std::int64_t n = 0;
    int m = 0;
    std::optional<MleResult> mle;   // unknown-delta modes
};

// Threshold sequence a_n = sqrt(n) (log n)^exponent for the phi test.
// Any exponent > 1 satisfies both growth conditions of the test.
struct ThresholdPolicy {
    double log_exponent = 1.5;

    [[nodiscard]] double operator()(std::int64_t n) const;
};

double statistic_T(const DegreeCensus& census, double delta0);

struct QStatistic {
    double value = 0.0;
    MleResult mle;
};
QStatistic statistic_Q(const DegreeCensus& census, const ParameterBounds& bounds);

TestReport test_psi(const DegreeCensus& census, double delta0, double alpha);
TestReport test_phi(const DegreeCensus& census, const ParameterBounds& bounds,
                    ThresholdPolicy policy = {});
TestReport test_psi_cal(const DegreeCensus& census, double delta0, double alpha);
TestReport test_phi_cal(const DegreeCensus& census, const ParameterBounds& bounds, double alpha);

// Variants reusing an already computed Q (and its MLE).
TestReport test_phi(const DegreeCensus& census, const QStatistic& q, ThresholdPolicy policy = {});
TestReport test_phi_cal(const DegreeCensus& census, const QStatistic& q, double alpha);

// Variance and covariance constants of the limiting normal laws.
double w_var(double delta, int m);
double v_var(double delta, int m);  // Fisher information, equals -l''(delta)
double u_var(double delta, int m);
double b_cov(double delta, int m);
// Asymptotic covariance of (T, sqrt(n)(delta_hat - delta0)) scaled by n:
// [[w, -b/v], [-b/v, 1/v]].
std::array<std::array<double, 2>, 2> sigma_cov(double delta, int m);

// Mean shift of T per n^gamma: eta = c (1 - p_m(delta0)/p_m(delta1)).
double mean_shift_T(double delta0, double delta1, double c, int m);
// Equivalent rational form c (delta0 - delta1) / ((2 + delta1/m)(m + delta0 + 2 + delta0/m)).
double mean_shift_T_rational(double delta0, double delta1, double c, int m);
// Mean shift of Q per n^gamma:
// c (delta0 - delta1) (m + delta0) / ((2 + delta1/m)(m + delta0 + 2 + delta0/m)^2).
double mean_shift_Q(double delta0, double delta1, double c, int m);

// Drift of (n+1) E[l_n'(delta)] per n^gamma caused by the changepoint:
// (delta1 - delta0) c m / ((2m + delta1)(2m + delta0)) * (-1 + sum_k (2m+delta)/(k+delta) p_k(delta0)).
double kappa(double delta1, double delta0, double delta, double c, int m);

// Leading-order probability that an old vertex of degree k gains an edge
// after the changepoint: c n^{gamma-1} m (k + delta)/(2m + delta).
// Meaningful for k = o(n^{1-gamma}).
double attach_increase_prob(int k, double delta, double c, double gamma, std::int64_t n, int m);

struct ShiftConstants {
    double eta = 0.0;
    double alpha_shift = 0.0;
};
ShiftConstants shift_constants(double delta0, double delta1, double c, int m);

// Normal-approximation power of psi_cal or phi_cal:
// s = shift n^gamma / sqrt(n var); power = Phi(s - z) + Phi(-s - z), z = z_{alpha/2}.
double predicted_power(TestMode mode, double delta0, double delta1, double c, double gamma, int m,
                       std::int64_t n, double alpha);

}  // namespace pacp
