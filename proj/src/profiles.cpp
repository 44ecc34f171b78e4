#include "cattaneo/profiles.hpp"

#include <cmath>
#include <numbers>

#include "cattaneo/errors.hpp"

namespace cattaneo {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double sq_dist(const std::vector<double>& a, const std::vector<double>& b, int n) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ai = i < static_cast<int>(a.size()) ? a[i] : 0.0;
        const double bi = i < static_cast<int>(b.size()) ? b[i] : 0.0;
        d += (ai - bi) * (ai - bi);
    }
    return d;
}

void check_component(const GaussianComponent& c) {
    if (!(c.w > 0.0) || !std::isfinite(c.w)) throw DomainError("Gaussian width must be positive");
    if (!std::isfinite(c.eps)) throw DomainError("Gaussian amplitude must be finite");
}

}  // namespace

ProfileKind kind_for(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
    if (alpha < 0.5) return ProfileKind::AnomalousDiffusion;
    if (alpha > 0.5) return ProfileKind::DiffusionWave;
    return ProfileKind::CriticalWave;
}

const char* kind_name(ProfileKind k) {
    switch (k) {
        case ProfileKind::AnomalousDiffusion: return "anomalous-diffusion";
        case ProfileKind::DiffusionWave: return "diffusion-wave";
        case ProfileKind::CriticalWave: return "critical-wave";
    }
    return "?";
}

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = bump(x);
    return a / (a + bump(1.0 - x));
}

double cutoff(Zone zone, double xi_mag, double eps0, double N0) {
    if (!(eps0 > 0.0 && eps0 < N0)) throw DomainError("cutoff needs 0 < eps0 < N0");
    const double r = std::abs(xi_mag);
    // Interior: 1 on [0, eps0/2], 0 beyond eps0. Exterior: 0 below N0, 1 beyond 2 N0.
    const double chi_int = 1.0 - smooth_step((r - 0.5 * eps0) / (0.5 * eps0));
    const double chi_ext = smooth_step((r - N0) / N0);
    switch (zone) {
        case Zone::Interior: return chi_int;
        case Zone::Exterior: return chi_ext;
        case Zone::Bounded: return 1.0 - chi_int - chi_ext;
    }
    return 0.0;
}

cplx profile_core(ProfileKind kind, int j, double t, double xi_mag, const ModelParams& p) {
    if (j < 0 || j > 3) throw DomainError("profile derivative order must be in 0..3");
    if (kind != kind_for(p.alpha)) {
        throw DomainError(std::string("profile kind ") + kind_name(kind) +
                          " does not match alpha");
    }
    if (xi_mag == 0.0) return 0.0;
    const double r = xi_mag;
    const double bnu = p.bnu();
    switch (kind) {
        case ProfileKind::AnomalousDiffusion: {
            const double mu = (p.c0 * p.c0 / bnu) * std::pow(r, 2.0 - 2.0 * p.alpha);
            return std::pow(r, -2.0 * p.alpha) / bnu * std::pow(-mu, j) * std::exp(-mu * t);
        }
        case ProfileKind::DiffusionWave:
        case ProfileKind::CriticalWave: {
            const double li = kind == ProfileKind::DiffusionWave
                                  ? p.c0 * r
                                  : 0.5 * std::sqrt(4.0 * p.c0 * p.c0 - bnu * bnu) * r;
            const double decay = 0.5 * bnu * std::pow(r, 2.0 * p.alpha);
            const cplx z(-decay, li);
            cplx zj(1.0, 0.0);
            for (int k = 0; k < j; ++k) zj *= z;
            const cplx e = std::exp(-decay * t) * cplx(std::cos(li * t), std::sin(li * t));
            return (zj * e).imag() / li;
        }
    }
    return 0.0;
}

cplx profile_hat(ProfileKind kind, int j, double t, double xi_mag, const ModelParams& p) {
    if (!(t > 0.0)) throw DomainError("profile_hat needs t > 0");
    const auto z = zone_thresholds(p);
    const double chi = cutoff(Zone::Interior, xi_mag, z.eps0, z.N0);
    if (chi == 0.0) {
        if (kind != kind_for(p.alpha)) throw DomainError("profile kind does not match alpha");
        return 0.0;
    }
    return chi * profile_core(kind, j, t, xi_mag, p);
}

MomentB0 assemble_B0(double P_linear, double P_psi1_sq, double P_grad_psi0_sq,
                     const ModelParams& p) {
    MomentB0 m;
    const double quad = p.coeff_t() * P_psi1_sq + P_grad_psi0_sq;
    m.linear_part = P_linear;
    m.nonlinear_part = -p.tau * quad;
    m.value = m.linear_part + m.nonlinear_part;
    m.duhamel_value = P_linear - quad;
    return m;
}

double unit_sphere_area(int n) {
    if (n < 1) throw DomainError("dimension must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double moment_P(const GaussianSum& f, int n) {
    double s = 0.0;
    for (const auto& c : f) {
        check_component(c);
        s += c.eps * std::pow(2.0 * std::numbers::pi * c.w * c.w, 0.5 * n);
    }
    return s;
}

double moment_L11(const GaussianSum& f, int n) {
    if (f.empty()) return 0.0;
    if (f.size() != 1 || sq_dist(f[0].x0, {}, n) != 0.0) {
        throw DomainError("moment_L11: closed form only for one centred Gaussian");
    }
    const auto& c = f[0];
    check_component(c);
    return std::abs(c.eps) * unit_sphere_area(n) * std::pow(c.w, n + 1) *
           std::pow(2.0, 0.5 * (n - 1)) * std::tgamma(0.5 * (n + 1));
}

double integral_product(const GaussianSum& f, const GaussianSum& g, int n) {
    double s = 0.0;
    for (const auto& a : f) {
        check_component(a);
        for (const auto& b : g) {
            check_component(b);
            const double A = a.w * a.w, B = b.w * b.w;
            const double S = A * B / (A + B);
            const double K = std::exp(-sq_dist(a.x0, b.x0, n) / (2.0 * (A + B)));
            s += a.eps * b.eps * K * std::pow(2.0 * std::numbers::pi * S, 0.5 * n);
        }
    }
    return s;
}

double integral_grad_product(const GaussianSum& f, const GaussianSum& g, int n) {
    double s = 0.0;
    for (const auto& a : f) {
        check_component(a);
        for (const auto& b : g) {
            check_component(b);
            const double A = a.w * a.w, B = b.w * b.w;
            const double S = A * B / (A + B);
            const double K = std::exp(-sq_dist(a.x0, b.x0, n) / (2.0 * (A + B)));
            // grad g_a . grad g_b = (x-a).(x-b)/(AB) g_a g_b; g_a g_b is a Gaussian at m.
            double cross = 0.0;
            for (int i = 0; i < n; ++i) {
                const double ai = i < static_cast<int>(a.x0.size()) ? a.x0[i] : 0.0;
                const double bi = i < static_cast<int>(b.x0.size()) ? b.x0[i] : 0.0;
                const double mi = (ai * B + bi * A) / (A + B);
                cross += (mi - ai) * (mi - bi);
            }
            s += a.eps * b.eps * K * std::pow(2.0 * std::numbers::pi * S, 0.5 * n) *
                 (n * S + cross) / (A * B);
        }
    }
    return s;
}

MomentB0 compute_B0(const GaussianTriple& d, const ModelParams& p) {
    const int n = p.dim;
    const double lin = moment_P(d.psi1, n) + p.tau * moment_P(d.psi2, n);
    return assemble_B0(lin, integral_product(d.psi1, d.psi1, n),
                       integral_grad_product(d.psi0, d.psi0, n), p);
}

}  // namespace cattaneo
