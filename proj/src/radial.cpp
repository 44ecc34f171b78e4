#include "cattaneo/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cattaneo/errors.hpp"
#include "cattaneo/kernels.hpp"

namespace cattaneo {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kScanLo = 1e-10;
constexpr double kQuadLo = 1e-30;
constexpr double kScanHi = 1e4;
constexpr double kScanRatio = 1.02;
constexpr double kEnvelopeFloor = 1e-18;

// Non-adaptive 15-point Gauss-Kronrod on [lo, hi]. Boost reports the |K15 - G7| estimate
// in reference-interval units, so it is rescaled here.
double gk15(const std::function<double(double)>& h, double lo, double hi, double* err) {
    double e = 0.0;
    const double v = gauss_kronrod<double, 15>::integrate(h, lo, hi, 0, 0.0, &e);
    *err = e * 0.5 * (hi - lo);
    return v;
}

double gk15_split(const std::function<double(double)>& h, double lo, double hi, int pieces,
                  double* err) {
    double v = 0.0, e = 0.0;
    const double w = (hi - lo) / pieces;
    for (int k = 0; k < pieces; ++k) {
        double ek = 0.0;
        v += gk15(h, lo + k * w, k + 1 == pieces ? hi : lo + (k + 1) * w, &ek);
        e += ek;
    }
    *err = e;
    return v;
}

double norm_const(int n) { return unit_sphere_area(n) / std::pow(2.0 * std::numbers::pi, n); }

}  // namespace

RadialDatum zero_datum() { return RadialDatum{}; }

RadialDatum gaussian_datum(double eps, double w, int n) {
    if (!(w > 0.0) || n < 1) throw DomainError("gaussian_datum needs w > 0 and n >= 1");
    RadialDatum d;
    std::ostringstream os;
    os << "gaussian(eps=" << eps << ",w=" << w << ")";
    d.label = os.str();
    const double amp = eps * std::pow(2.0 * std::numbers::pi, 0.5 * n) * std::pow(w, n);
    d.fhat = [amp, w](double r) { return amp * std::exp(-0.5 * w * w * r * r); };
    d.P = amp;
    d.M1 = std::abs(eps) * unit_sphere_area(n) * std::pow(w, n + 1) *
           std::pow(2.0, 0.5 * (n - 1)) * std::tgamma(0.5 * (n + 1));
    return d;
}

RadialDatum laplacian_gaussian_datum(double eps, double w, int n) {
    if (!(w > 0.0) || n < 1) throw DomainError("laplacian_gaussian_datum needs w > 0 and n >= 1");
    RadialDatum d;
    std::ostringstream os;
    os << "laplacian-gaussian(eps=" << eps << ",w=" << w << ")";
    d.label = os.str();
    const double amp = eps * std::pow(2.0 * std::numbers::pi, 0.5 * n) * std::pow(w, n);
    d.fhat = [amp, w](double r) {
        const double x = w * r;
        return amp * x * x * std::exp(-0.5 * x * x);
    };
    d.P = 0.0;
    // f(x) = eps (n - rho^2) e^{-rho^2/2}, rho = |x| / w.
    const double nn = n;
    auto g = [nn](double rho) {
        return std::pow(rho, nn) * std::abs(nn - rho * rho) * std::exp(-0.5 * rho * rho);
    };
    const double knee = std::sqrt(nn);
    const double m = gauss_kronrod<double, 31>::integrate(g, 0.0, knee, 15, 1e-14) +
                     gauss_kronrod<double, 31>::integrate(g, knee, 40.0, 15, 1e-14);
    d.M1 = std::abs(eps) * unit_sphere_area(n) * std::pow(w, n + 1) * m;
    return d;
}

void SobolevSpec::validate() const {
    if (n < 1 || n > 3) throw DomainError("dimension must be 1, 2 or 3");
    if (j < 0 || j > 3) throw DomainError("time-derivative order must be in 0..3");
    if (!(2.0 * sigma + n > 0.0)) throw DomainError("norm order needs 2 sigma + n > 0");
}

RadialIntegral radial_integrate(const std::function<double(double)>& h, double osc_rate,
                                const QuadOptions& opt) {
    if (opt.density < 1) throw DomainError("quadrature density must be >= 1");
    std::vector<double> rs, hs;
    for (double r = kScanLo; r <= kScanHi; r *= kScanRatio) {
        rs.push_back(r);
        hs.push_back(h(r));
    }
    double peak = 0.0;
    for (double v : hs) {
        if (!std::isfinite(v)) throw QuadratureError("non-finite integrand", INFINITY);
        peak = std::max(peak, v);
    }
    RadialIntegral out;
    if (peak == 0.0) return out;
    std::size_t last = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hs[i] > kEnvelopeFloor * peak) last = i;
    }
    if (last + 1 == hs.size()) {
        throw QuadratureError("integrand does not decay below the envelope floor by r = 1e4",
                              INFINITY);
    }
    const double r_lo = kQuadLo;
    const double r_hi = 1.5 * rs[last];

    // Tail on [0, r_lo] assuming h ~ r^q there.
    double tail = 0.0;
    {
        const double h1 = h(r_lo), h2 = h(2.0 * r_lo);
        if (h1 > 0.0 && h2 > 0.0) {
            const double q = std::log2(h2 / h1);
            if (!(q > -1.0)) throw QuadratureError("integrand not integrable at r = 0", INFINITY);
            tail = h1 * r_lo / (q + 1.0);
        }
    }

    const double cap = osc_rate > 0.0 ? std::numbers::pi / (8.0 * osc_rate) : INFINITY;
    const double growth = std::exp(0.5);
    struct Panel {
        double lo, hi, value, err;
    };
    std::vector<Panel> panels;
    for (double a = r_lo; a < r_hi;) {
        const double b = std::min(a * growth, r_hi);
        int pieces = opt.density;
        if (std::isfinite(cap)) {
            pieces = std::max(pieces, static_cast<int>(std::ceil(opt.density * (b - a) / cap)));
        }
        const double width = (b - a) / pieces;
        for (int k = 0; k < pieces; ++k) {
            const double lo = a + k * width;
            const double hi = k + 1 == pieces ? b : lo + width;
            double e = 0.0;
            const double v = gk15(h, lo, hi, &e);
            panels.push_back({lo, hi, v, e});
        }
        a = b;
    }
    double value = tail;
    for (const auto& pn : panels) value += pn.value;
    // Second pass: refine only panels whose error exceeds their share of the budget.
    const double share = 0.1 * opt.rel_tol * std::abs(value) / static_cast<double>(panels.size());
    double err = 0.0;
    value = tail;
    for (auto& pn : panels) {
        for (int pieces = 4; pn.err > share && pieces <= 256; pieces *= 4) {
            double e = 0.0;
            const double v = gk15_split(h, pn.lo, pn.hi, pieces, &e);
            if (e >= pn.err) break;
            pn.value = v;
            pn.err = e;
        }
        value += pn.value;
        err += pn.err;
    }
    out.value = value;
    out.error_estimate = err;
    out.panels = static_cast<int>(panels.size());
    if (!std::isfinite(value) || err > opt.rel_tol * std::abs(value) + 1e-300) {
        const double achieved = value != 0.0 ? err / std::abs(value) : INFINITY;
        std::ostringstream os;
        os << "radial quadrature reached relative error " << achieved << " > " << opt.rel_tol;
        throw QuadratureError(os.str(), achieved);
    }
    return out;
}

double radial_norm(const std::function<double(double)>& abs_multiplier, double sigma, int n,
                   double osc_rate, const QuadOptions& opt) {
    if (!(2.0 * sigma + n > 0.0)) throw DomainError("norm order needs 2 sigma + n > 0");
    const double q = 2.0 * sigma + n - 1.0;
    auto h = [&](double r) {
        const double m = abs_multiplier(r);
        return std::pow(r, q) * m * m;
    };
    const auto res = radial_integrate(h, osc_rate, opt);
    return std::sqrt(norm_const(n) * res.value);
}

double hs_norm_linear(double t, const SobolevSpec& spec, const RadialTriple& data,
                      const ModelParams& p, const QuadOptions& opt) {
    if (!(t >= 0.0)) throw DomainError("hs_norm_linear needs t >= 0");
    spec.validate();
    auto m = [&](double r) {
        const DataHat d{data.phi0(r), data.phi1(r), data.phi2(r)};
        return std::abs(linear_solution_hat(t, r, d, p, spec.j));
    };
    return radial_norm(m, spec.sigma, spec.n, p.c0 * t, opt);
}

double hs_norm_profile(double t, const SobolevSpec& spec, ProfileKind kind, double moment,
                       const ModelParams& p, const QuadOptions& opt) {
    if (!(t > 0.0)) throw DomainError("hs_norm_profile needs t > 0");
    spec.validate();
    if (kind != kind_for(p.alpha)) throw DomainError("profile kind does not match alpha");
    if (moment == 0.0) return 0.0;
    auto m = [&](double r) { return std::abs(moment * profile_hat(kind, spec.j, t, r, p)); };
    return radial_norm(m, spec.sigma, spec.n, p.c0 * t, opt);
}

double hs_norm_error(double t, const SobolevSpec& spec, const RadialTriple& data,
                     ProfileKind kind, const ModelParams& p, const QuadOptions& opt) {
    if (!(t > 0.0)) throw DomainError("hs_norm_error needs t > 0");
    spec.validate();
    if (kind != kind_for(p.alpha)) throw DomainError("profile kind does not match alpha");
    const double P = data.phi1.P + p.tau * data.phi2.P;
    auto m = [&](double r) {
        const DataHat d{data.phi0(r), data.phi1(r), data.phi2(r)};
        const cplx sol = linear_solution_hat(t, r, d, p, spec.j);
        const cplx prof = P == 0.0 ? cplx(0.0) : P * profile_hat(kind, spec.j, t, r, p);
        return std::abs(sol - prof);
    };
    return radial_norm(m, spec.sigma, spec.n, p.c0 * t, opt);
}

double multiplier_norm(double t, double s, int n, double beta, MultiplierVariant variant,
                       double c, double C, double eps0, const QuadOptions& opt) {
    if (!(t > 0.0 && beta > 0.0 && c > 0.0 && eps0 > 0.0)) {
        throw DomainError("multiplier_norm needs t, beta, c, eps0 > 0");
    }
    auto m = [&](double r) {
        const double chi = 1.0 - smooth_step((r - 0.5 * eps0) / (0.5 * eps0));
        if (chi == 0.0) return 0.0;
        const double g0 = variant == MultiplierVariant::One ? 1.0 : std::sin(C * r * t);
        return chi * std::abs(g0) * std::exp(-c * std::pow(r, beta) * t);
    };
    // radial_norm applies the weight r^{2s}; the multiplier is |xi|^s times the rest.
    const double osc = variant == MultiplierVariant::Sin ? C * t : 0.0;
    return radial_norm(m, s, n, osc, opt);
}

}  // namespace cattaneo
