#include "cattaneo/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cattaneo/errors.hpp"
#include "cattaneo/format.hpp"

namespace cattaneo {

const char* variant_name(RateVariant v) {
    switch (v) {
        case RateVariant::Solution: return "solution";
        case RateVariant::ProfileError: return "profile-error";
        case RateVariant::ImprovedError: return "improved-error";
        case RateVariant::ImprovedErrorNonlinear: return "improved-error-nonlinear";
        case RateVariant::KernelData2: return "kernel-data2";
    }
    return "?";
}

RateVariant parse_variant(const std::string& s) {
    for (auto v : {RateVariant::Solution, RateVariant::ProfileError, RateVariant::ImprovedError,
                   RateVariant::ImprovedErrorNonlinear, RateVariant::KernelData2}) {
        if (s == variant_name(v)) return v;
    }
    throw DomainError("unknown rate variant '" + s + "'");
}

namespace {

double solution_exponent(double alpha, int n, int j, double sigma) {
    if (alpha < 0.5) return table::anomalous<double>(alpha, n, j, sigma);
    if (alpha > 0.5) return table::diffusion_wave<double>(alpha, n, j, sigma);
    return table::critical<double>(n, j, sigma);
}

double kernel_data2_exponent(double alpha, int n, int j, double sigma) {
    if (j <= 2) {
        if (alpha < 0.5) return -(j + 1.0) + j / (2.0 - 2.0 * alpha);
        if (alpha > 0.5) return -1.0 / (2.0 * alpha);
        return -1.0;
    }
    if (alpha < 0.5) return -3.0 - (2.0 * sigma + n - 4.0 * alpha) / (2.0 * (2.0 - 2.0 * alpha));
    if (alpha > 0.5) return -(2.0 * sigma + n + 4.0) / (4.0 * alpha);
    return -(sigma + 2.0) - 0.5 * n;
}

}  // namespace

RateResult theoretical_rate(const RateQuery& q) {
    if (!(q.alpha >= 0.0 && q.alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
    if (q.n < 1) throw DomainError("n must be >= 1");
    const int jmax = q.variant == RateVariant::KernelData2 ? 3 : 2;
    if (q.j < 0 || q.j > jmax) throw DomainError("j out of range for this variant");
    if (!(2.0 * q.sigma + q.n > 0.0)) throw DomainError("norm needs 2 sigma + n > 0");

    RateResult res;
    std::ostringstream note;
    const int n_min = q.alpha > 0.5 ? 3 : 2;
    if (q.n < n_min) {
        res.within_hypotheses = false;
        note << "n = " << q.n << " is below the theorem's n >= " << n_min << "; ";
    }
    if (q.variant != RateVariant::KernelData2) {
        const bool lower_row = q.sigma == 0.0;
        const bool upper_row = q.sigma >= 2.0 - q.j;
        if (!lower_row && !upper_row) {
            res.within_hypotheses = false;
            note << "sigma = " << q.sigma << " is neither 0 nor >= 2 - j; ";
        }
    }

    switch (q.variant) {
        case RateVariant::Solution:
        case RateVariant::ProfileError:
            res.exponent = solution_exponent(q.alpha, q.n, q.j, q.sigma);
            break;
        case RateVariant::ImprovedError:
            if (!(q.alpha < 0.5)) throw DomainError("the L^{1,1} improvement is stated for alpha < 1/2");
            res.exponent = solution_exponent(q.alpha, q.n, q.j, q.sigma) +
                           table::improvement_linear<double>(q.alpha);
            break;
        case RateVariant::ImprovedErrorNonlinear:
            if (!(q.alpha < 0.5)) throw DomainError("the L^{1,1} improvement is stated for alpha < 1/2");
            res.exponent = solution_exponent(q.alpha, q.n, q.j, q.sigma) +
                           table::improvement_nonlinear<double>(q.alpha);
            break;
        case RateVariant::KernelData2:
            res.exponent = kernel_data2_exponent(q.alpha, q.n, q.j, q.sigma);
            break;
    }
    res.note = note.str();
    return res;
}

RateFit fit_decay_rate(const std::vector<SeriesPoint>& series, double t_min, double t_max) {
    if (!(t_min < t_max)) throw DomainError("fit window needs t_min < t_max");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int k = 0;
    for (const auto& pt : series) {
        if (pt.t < t_min || pt.t > t_max) continue;
        if (!(pt.value > 0.0) || !(pt.t > 0.0)) {
            throw DomainError("fit_decay_rate needs positive t and values in the window");
        }
        const double x = std::log(pt.t), y = std::log(pt.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++k;
    }
    if (k < 8) throw DomainError("fit_decay_rate needs at least 8 points in the window");
    const double mx = sx / k, my = sy / k;
    const double vxx = sxx / k - mx * mx;
    const double vxy = sxy / k - mx * my;
    const double vyy = syy / k - my * my;
    RateFit f;
    f.slope = vxy / vxx;
    f.intercept = my - f.slope * mx;
    f.r2 = vyy > 1e-300 * std::max(1.0, my * my) ? std::clamp(vxy * vxy / (vxx * vyy), 0.0, 1.0)
                                                  : 1.0;
    f.t_min = t_min;
    f.t_max = t_max;
    f.n_points = k;
    return f;
}

RateFit fit_envelope_rate(const std::vector<SeriesPoint>& series, double t_min, double t_max,
                          double period) {
    if (!(period > 0.0)) throw DomainError("envelope fit needs a positive period");
    std::vector<SeriesPoint> peaks;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t0 = series[i].t;
        if (t0 < t_min || t0 > t_max) continue;
        double best = series[i].value;
        double best_t = t0;
        for (std::size_t k = i; k < series.size() && series[k].t <= t0 + period; ++k) {
            if (series[k].value > best) {
                best = series[k].value;
                best_t = series[k].t;
            }
        }
        if (peaks.empty() || peaks.back().t != best_t) peaks.push_back({best_t, best});
    }
    return fit_decay_rate(peaks, t_min, t_max + period);
}

Band optimality_band(const std::vector<SeriesPoint>& series, double exponent, double t_min,
                     double t_max) {
    Band b{std::numeric_limits<double>::infinity(), 0.0};
    int k = 0;
    for (const auto& pt : series) {
        if (pt.t < t_min || pt.t > t_max) continue;
        if (!(pt.value > 0.0)) throw DomainError("optimality_band needs positive values");
        const double v = pt.value * std::pow(pt.t, -exponent);
        b.m = std::min(b.m, v);
        b.M = std::max(b.M, v);
        ++k;
    }
    if (k < 8) throw DomainError("optimality_band needs at least 8 points in the window");
    return b;
}

std::vector<double> log_spaced(double a, double b, int count) {
    if (!(a > 0.0 && b > a) || count < 2) throw DomainError("log_spaced needs 0 < a < b, count >= 2");
    std::vector<double> v(count);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < count; ++i) v[i] = std::exp(la + (lb - la) * i / (count - 1));
    v.front() = a;
    v.back() = b;
    return v;
}

std::string rate_table_csv(const std::vector<RateQuery>& queries) {
    std::ostringstream os;
    os << "alpha[1],n[1],j[1],sigma[1],variant,exponent[1],within_hypotheses\n";
    for (const auto& q : queries) {
        const auto r = theoretical_rate(q);
        os << fmt17(q.alpha) << ',' << q.n << ',' << q.j << ',' << fmt17(q.sigma) << ','
           << variant_name(q.variant) << ',' << fmt17(r.exponent) << ','
           << (r.within_hypotheses ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace cattaneo
