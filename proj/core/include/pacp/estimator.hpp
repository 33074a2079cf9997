#pragma once

// Maximum-likelihood estimation of the attachment offset from a final degree
// census, for the constant-offset model. With S_{t,i-1}(d) = t d + 2m(t-1) + (i-1)
// the normalized log-likelihood and its derivatives are
//
//   l_n(d)   = 1/(n+1) [ sum_{k>=m} log(k+d) N_{>k}  - sum_{t=2}^n sum_{i=1}^m log S_{t,i-1}(d) ]
//   l_n'(d)  = 1/(n+1) [ sum_{k>=m} N_{>k} / (k+d)   - sum_{t,i} t / S_{t,i-1}(d) ]
//   l_n''(d) = 1/(n+1) [ -sum_{k>=m} N_{>k}/(k+d)^2  + sum_{t,i} t^2 / S_{t,i-1}(d)^2 ]
//
// The (t, i) double sums do not depend on the data and are evaluated exactly,
// term by term, in O(nm).

#include <cstdint>

#include "pacp/degree_stats.hpp"

namespace pacp {

struct ParameterBounds {
    double delta_min = -0.5;
    double delta_max = 10.0;
    int m = 1;

    // Requires -m < delta_min <= delta_max.
    void validate() const;
};

struct MleResult {
    double delta_hat = 0.0;
    double score_at_hat = 0.0;
    int iterations = 0;
    bool boundary_hit = false;
};

inline constexpr double kMleTolerance = 1e-10;

// S_{t,i-1}(delta); same function as the attachment normalizer of the generator.
double s_norm(std::int64_t t, int i, double delta, int m);

double log_likelihood(const DegreeCensus& census, double delta);
double score(const DegreeCensus& census, double delta);
double score_derivative(const DegreeCensus& census, double delta);

// Root of the score on [delta_min, delta_max] when the score changes sign
// there, otherwise the endpoint with the larger log-likelihood (boundary_hit).
MleResult mle(const DegreeCensus& census, const ParameterBounds& bounds);

// Large-n limit of the score when the data follow the constant model with
// offset delta0:
//   l'(d) = sum_{k>=m} p_{>k}(delta0)/(k+d) - 1/(2 + d/m)
// evaluated as [1 + (delta0 - d) sum_k p_k(delta0)/(k+d)] / (2 + delta0/m) - 1/(2 + d/m),
// which uses sum_k p_k = 1 and converges much faster near delta0 = -m.
double limit_score(double delta, double delta0, int m);

// l''(delta0) = m/(2m+delta0)^2 - sum_{k>=m} p_{>k}(delta0)/(k+delta0)^2, summed
// directly over the tail masses.
double limit_score_derivative_at_truth(double delta0, int m);

}  // namespace pacp
