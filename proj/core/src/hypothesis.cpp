#include "pacp/hypothesis.hpp"

#include <cmath>

#include "pacp/error.hpp"
#include "pacp/normal.hpp"

namespace pacp {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw_invalid("alpha must lie in (0, 1)");
}

void require_delta(double delta, int m) {
    if (m < 1) throw_invalid("m must be a positive integer");
    if (!(delta > -m)) throw_invalid("delta must exceed -m");
}

// delta + m(2 + m + delta) = m (m + delta + 2 + delta/m).
double scaled_pm_denominator(double delta, int m) { return delta + m * (2.0 + m + delta); }

TestReport finish(TestReport report) {
    report.reject = std::abs(report.statistic) >= report.threshold;
    return report;
}

}  // namespace

std::string_view to_string(TestMode mode) {
    switch (mode) {
        case TestMode::psi: return "psi";
        case TestMode::phi: return "phi";
        case TestMode::psi_cal: return "psi_cal";
        case TestMode::phi_cal: return "phi_cal";
    }
    return "unknown";
}

TestMode parse_test_mode(std::string_view text) {
    if (text == "psi") return TestMode::psi;
    if (text == "phi") return TestMode::phi;
    if (text == "psi_cal" || text == "psi-cal") return TestMode::psi_cal;
    if (text == "phi_cal" || text == "phi-cal") return TestMode::phi_cal;
    throw_invalid("unknown test mode '" + std::string(text) + "'");
}

double ThresholdPolicy::operator()(std::int64_t n) const {
    if (n < 2) throw_invalid("a_n needs n >= 2");
    const double nd = static_cast<double>(n);
    return std::sqrt(nd) * std::pow(std::log(nd), log_exponent);
}

double statistic_T(const DegreeCensus& census, double delta0) {
    return static_cast<double>(census.count(census.m())) -
           static_cast<double>(census.n()) * p_m_value(delta0, census.m());
}

QStatistic statistic_Q(const DegreeCensus& census, const ParameterBounds& bounds) {
    QStatistic out;
    out.mle = mle(census, bounds);
    out.value = static_cast<double>(census.count(census.m())) -
                static_cast<double>(census.n()) * p_m_value(out.mle.delta_hat, census.m());
    return out;
}

TestReport test_psi(const DegreeCensus& census, double delta0, double alpha) {
    require_alpha(alpha);
    TestReport report;
    report.mode = TestMode::psi;
    report.n = census.n();
    report.m = census.m();
    report.alpha = alpha;
    report.delta_used = delta0;
    report.statistic = statistic_T(census, delta0);
    report.threshold =
        census.m() * std::sqrt(8.0 * static_cast<double>(census.n()) * std::log(2.0 / alpha));
    return finish(report);
}

TestReport test_phi(const DegreeCensus& census, const ParameterBounds& bounds,
                    ThresholdPolicy policy) {
    return test_phi(census, statistic_Q(census, bounds), policy);
}

TestReport test_phi(const DegreeCensus& census, const QStatistic& q, ThresholdPolicy policy) {
    TestReport report;
    report.mode = TestMode::phi;
    report.n = census.n();
    report.m = census.m();
    report.delta_used = q.mle.delta_hat;
    report.statistic = q.value;
    report.threshold = policy(census.n());
    report.mle = q.mle;
    return finish(report);
}

TestReport test_psi_cal(const DegreeCensus& census, double delta0, double alpha) {
    require_alpha(alpha);
    TestReport report;
    report.mode = TestMode::psi_cal;
    report.n = census.n();
    report.m = census.m();
    report.alpha = alpha;
    report.delta_used = delta0;
    report.statistic = statistic_T(census, delta0);
    const double scale = std::sqrt(static_cast<double>(census.n()) * w_var(delta0, census.m()));
    report.threshold = scale * z_quantile(alpha / 2.0);
    report.p_value = 2.0 * normal_sf(std::abs(report.statistic) / scale);
    return finish(report);
}

TestReport test_phi_cal(const DegreeCensus& census, const ParameterBounds& bounds, double alpha) {
    require_alpha(alpha);
    return test_phi_cal(census, statistic_Q(census, bounds), alpha);
}

TestReport test_phi_cal(const DegreeCensus& census, const QStatistic& q, double alpha) {
    require_alpha(alpha);
    const double delta_hat = q.mle.delta_hat;
    const int m = census.m();
    TestReport report;
    report.mode = TestMode::phi_cal;
    report.n = census.n();
    report.m = m;
    report.alpha = alpha;
    report.delta_used = delta_hat;
    report.statistic = q.value;
    report.mle = q.mle;
    const double variance = w_var(delta_hat, m) + u_var(delta_hat, m);
    if (!(variance > 0.0)) throw_numeric("w + u is not positive at delta_hat");
    const double scale = std::sqrt(static_cast<double>(census.n()) * variance);
    report.threshold = scale * z_quantile(alpha / 2.0);
    report.p_value = 2.0 * normal_sf(std::abs(report.statistic) / scale);
    return finish(report);
}

double w_var(double delta, int m) {
    require_delta(delta, m);
    const double md = m;
    const double numerator = md * md * (md + delta) * (1.0 + md + delta) * (2.0 * md + delta);
    const double first = delta + 2.0 * md * (1.0 + md + delta);
    const double second = scaled_pm_denominator(delta, m);
    return numerator / (first * second * second);
}

double v_var(double delta, int m) {
    require_delta(delta, m);
    const double two_m = 2.0 * m + delta;
    return m * inverse_moment(delta, m, delta, 1) / two_m - m / (two_m * two_m);
}

double u_var(double delta, int m) {
    const double v = v_var(delta, m);
    const double md = m;
    const double d = scaled_pm_denominator(delta, m);
    return -(md * md * md * md) / (v * d * d * d * d);
}

double b_cov(double delta, int m) {
    require_delta(delta, m);
    const double d = scaled_pm_denominator(delta, m);
    return static_cast<double>(m) * m / (d * d);
}

std::array<std::array<double, 2>, 2> sigma_cov(double delta, int m) {
    const double w = w_var(delta, m);
    const double v = v_var(delta, m);
    const double off = -b_cov(delta, m) / v;
    return {{{w, off}, {off, 1.0 / v}}};
}

double mean_shift_T(double delta0, double delta1, double c, int m) {
    return c * (1.0 - p_m_value(delta0, m) / p_m_value(delta1, m));
}

double mean_shift_T_rational(double delta0, double delta1, double c, int m) {
    require_delta(delta0, m);
    require_delta(delta1, m);
    return c * (delta0 - delta1) / ((2.0 + delta1 / m) * (m + delta0 + 2.0 + delta0 / m));
}

double mean_shift_Q(double delta0, double delta1, double c, int m) {
    require_delta(delta0, m);
    require_delta(delta1, m);
    const double d = m + delta0 + 2.0 + delta0 / m;
    return c * (delta0 - delta1) * (m + delta0) / ((2.0 + delta1 / m) * d * d);
}

double kappa(double delta1, double delta0, double delta, double c, int m) {
    require_delta(delta1, m);
    require_delta(delta0, m);
    require_delta(delta, m);
    if (delta1 == delta0) return 0.0;
    const double two_m = 2.0 * m;
    const double series = (two_m + delta) * inverse_moment(delta0, m, delta, 1);
    return (delta1 - delta0) * c * m / ((two_m + delta1) * (two_m + delta0)) * (-1.0 + series);
}

double attach_increase_prob(int k, double delta, double c, double gamma, std::int64_t n, int m) {
    require_delta(delta, m);
    if (k < m) throw_invalid("k must be at least m");
    return c * std::pow(static_cast<double>(n), gamma - 1.0) * m * (k + delta) /
           (2.0 * m + delta);
}

ShiftConstants shift_constants(double delta0, double delta1, double c, int m) {
    return {mean_shift_T(delta0, delta1, c, m), mean_shift_Q(delta0, delta1, c, m)};
}

double predicted_power(TestMode mode, double delta0, double delta1, double c, double gamma, int m,
                       std::int64_t n, double alpha) {
    require_alpha(alpha);
    double shift = 0.0;
    double variance = 0.0;
    switch (mode) {
        case TestMode::psi_cal:
            shift = mean_shift_T(delta0, delta1, c, m);
            variance = w_var(delta0, m);
            break;
        case TestMode::phi_cal:
            shift = mean_shift_Q(delta0, delta1, c, m);
            variance = w_var(delta0, m) + u_var(delta0, m);
            break;
        default:
            throw_invalid("predicted power is defined for psi_cal and phi_cal only");
    }
    const double nd = static_cast<double>(n);
    const double s = shift * std::pow(nd, gamma) / std::sqrt(nd * variance);
    const double z = z_quantile(alpha / 2.0);
    return normal_cdf(s - z) + normal_cdf(-s - z);
}

}  // namespace pacp
