#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cattaneo {

enum class RateVariant {
    Solution,                // optimal rate of the solution norm
    ProfileError,            // the error is o(t^{rate}) with the Solution rate
    ImprovedError,           // linear L^{1,1} improvement (alpha < 1/2)
    ImprovedErrorNonlinear,  // nonlinear improvement stated for the profile with B0
    KernelData2              // data (0, 0, phi2) without L^1 assumption
};

const char* variant_name(RateVariant v);
RateVariant parse_variant(const std::string& s);

// sigma is the order of the homogeneous Sobolev norm of d_t^j psi, i.e.
// sigma = s0 + 2 - j in the theorem notation (sigma = s for the j = 3 row of KernelData2).
struct RateQuery {
    double alpha = 0.0;
    int n = 2;
    int j = 0;
    double sigma = 0.0;
    RateVariant variant = RateVariant::Solution;
};

struct RateResult {
    double exponent = 0.0;
    bool within_hypotheses = true;
    std::string note;
};

// Exponent tables written over a generic field so that the threshold continuity
// can be checked on exact rationals.
namespace table {

template <class T>
T anomalous(T alpha, T n, T j, T sigma) {
    // -(j+1) - (2 s0 + n - 2 j) / (2 (2 - 2 alpha)) with s0 = sigma - 2 + j
    const T s0 = sigma - T(2) + j;
    return -(j + T(1)) - (T(2) * s0 + n - T(2) * j) / (T(2) * (T(2) - T(2) * alpha));
}

template <class T>
T diffusion_wave(T alpha, T n, T j, T sigma) {
    // -(2 s0 + n + 2) / (4 alpha) with s0 = sigma - 2 + j
    const T s0 = sigma - T(2) + j;
    return -(T(2) * s0 + n + T(2)) / (T(4) * alpha);
}

template <class T>
T critical(T n, T j, T sigma) {
    // -(s0 + 1) - n/2
    const T s0 = sigma - T(2) + j;
    return -(s0 + T(1)) - n / T(2);
}

template <class T>
T improvement_linear(T alpha) {
    const T a = alpha < T(1) - T(2) * alpha ? alpha : T(1) - T(2) * alpha;
    return -a / (T(1) - alpha);
}

template <class T>
T improvement_nonlinear(T alpha) {
    const T two_a = T(2) * alpha;
    const T a = two_a < T(1) - two_a ? two_a : T(1) - two_a;
    return -a / (T(2) * (T(1) - alpha));
}

}  // namespace table

RateResult theoretical_rate(const RateQuery& q);

struct SeriesPoint {
    double t;
    double value;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int n_points = 0;
};

// Least squares of log(value) against log(t) over points with t in [t_min, t_max].
RateFit fit_decay_rate(const std::vector<SeriesPoint>& series, double t_min, double t_max);

// For oscillating series: keeps the maximum over each sliding window [t, t*(1+period/t)]
// of one oscillation period and fits those maxima.
RateFit fit_envelope_rate(const std::vector<SeriesPoint>& series, double t_min, double t_max,
                          double period);

struct Band {
    double m = 0.0;
    double M = 0.0;
    double ratio() const { return M / m; }
};

// min and max of value * t^{-exponent} over the window.
Band optimality_band(const std::vector<SeriesPoint>& series, double exponent, double t_min,
                     double t_max);

std::vector<double> log_spaced(double a, double b, int count);

// CSV rows "alpha,n,j,sigma,variant,exponent,within_hypotheses" for a grid of queries.
std::string rate_table_csv(const std::vector<RateQuery>& queries);

}  // namespace cattaneo
