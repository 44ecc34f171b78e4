#include "cattaneo/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cattaneo/errors.hpp"

namespace cattaneo {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be positive and finite (got " << v << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

void ModelParams::validate() const {
    require_positive(tau, "tau");
    require_positive(c0, "c0");
    require_positive(b, "b");
    require_positive(nu, "nu");
    require_positive(A, "A");
    require_positive(B, "B");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
    if (dim < 1) throw DomainError("dim must be >= 1");
    if (!(bnu() < 2.0 * c0)) {
        std::ostringstream os;
        os << "b*nu = " << bnu() << " violates the small-viscosity condition b*nu < 2*c0 = "
           << 2.0 * c0;
        throw DomainError(os.str());
    }
}

ModelParams make_params(double tau, double c0, double b, double nu, double A, double B,
                        double alpha, int dim) {
    ModelParams p{tau, c0, b, nu, A, B, alpha, dim};
    p.validate();
    return p;
}

const char* zone_name(Zone z) {
    switch (z) {
        case Zone::Interior: return "interior";
        case Zone::Bounded: return "bounded";
        case Zone::Exterior: return "exterior";
    }
    return "?";
}

double transition_xi(const ModelParams& p) {
    if (p.alpha == 0.5) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(2.0 * p.c0 / p.bnu(), 1.0 / (2.0 * p.alpha - 1.0));
}

ZoneThresholds zone_thresholds(const ModelParams& p) {
    if (p.alpha == 0.5) return {0.5, 2.0};
    const double xs = transition_xi(p);
    double eps0 = std::clamp(0.5 * xs, 1e-3, 1e3);
    double N0 = std::clamp(2.0 * xs, 1e-3, 1e3);
    if (!(eps0 < N0)) eps0 = N0 / 4.0;
    return {eps0, N0};
}

FrequencyZone classify_zone(const ModelParams& p, double xi_mag) {
    const auto z = zone_thresholds(p);
    Zone tag = Zone::Bounded;
    if (xi_mag <= z.eps0) tag = Zone::Interior;
    else if (xi_mag >= z.N0) tag = Zone::Exterior;
    return {tag, z.eps0, z.N0};
}

CharRoots char_roots(const ModelParams& p, double xi_mag) {
    if (!(xi_mag >= 0.0)) throw DomainError("xi_mag must be nonnegative");
    CharRoots r;
    r.xi_mag = xi_mag;
    r.lambda1 = -1.0 / p.tau;
    const double a = p.bnu() * std::pow(xi_mag, 2.0 * p.alpha);
    const double q = p.c0 * p.c0 * xi_mag * xi_mag;
    const double disc = a * a - 4.0 * q;
    r.discriminant = disc;
    const double scale = a + p.c0 * xi_mag;
    if (std::abs(disc) <= kConfluenceTol * scale * scale) {
        r.confluent = true;
        r.lambdaR = -0.5 * a;
        r.lambdaI = 0.0;
        r.lambda2 = r.lambda3 = cplx(-0.5 * a, 0.0);
        return r;
    }
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double l3 = -0.5 * (a + s);
        // Product form avoids cancellation in (-a + s)/2.
        const double l2 = (a + s) > 0.0 ? -2.0 * q / (a + s) : 0.0;
        r.lambda2 = cplx(l2, 0.0);
        r.lambda3 = cplx(l3, 0.0);
        r.lambdaR = -0.5 * a;
        r.lambdaI = 0.0;
    } else {
        r.lambdaR = -0.5 * a;
        r.lambdaI = 0.5 * std::sqrt(-disc);
        r.lambda2 = cplx(r.lambdaR, r.lambdaI);
        r.lambda3 = cplx(r.lambdaR, -r.lambdaI);
    }
    return r;
}

double cubic_residual(const ModelParams& p, double xi_mag, cplx l) {
    const double a = p.bnu() * std::pow(xi_mag, 2.0 * p.alpha);
    const double q = p.c0 * p.c0 * xi_mag * xi_mag;
    const cplx quad = l * l + a * l + q;
    const double m = std::abs(l);
    const double quad_scale = m * m + a * m + q;
    const cplx lin = p.tau * l + 1.0;
    const double lin_scale = p.tau * m + 1.0;
    const double scale = quad_scale * lin_scale;
    if (scale == 0.0) return std::abs(lin * quad);
    return std::abs(lin * quad) / scale;
}

std::pair<cplx, cplx> asymptotic_roots(const ModelParams& p, double xi_mag, int which_case) {
    if (!(xi_mag > 0.0)) throw DomainError("asymptotic_roots needs xi_mag > 0");
    if (which_case != 1 && which_case != 2) throw DomainError("case must be 1 or 2");
    if (p.alpha == 0.5) throw DomainError("no Case 1/2 expansion at alpha = 1/2");
    const auto z = zone_thresholds(p);
    const bool small = xi_mag <= z.eps0;
    const bool large = xi_mag >= z.N0;
    const bool below = p.alpha < 0.5;
    bool ok = false;
    if (which_case == 1) ok = (below && small) || (!below && large);
    else ok = (below && large) || (!below && small);
    if (!ok) {
        std::ostringstream os;
        os << "case " << which_case << " expansion not asserted at |xi| = " << xi_mag
           << " for alpha = " << p.alpha << " (eps0 = " << z.eps0 << ", N0 = " << z.N0 << ")";
        throw DomainError(os.str());
    }
    const double bnu = p.bnu();
    if (which_case == 1) {
        const double l2 = -(p.c0 * p.c0 / bnu) * std::pow(xi_mag, 2.0 - 2.0 * p.alpha);
        const double l3 = -bnu * std::pow(xi_mag, 2.0 * p.alpha);
        return {cplx(l2, 0.0), cplx(l3, 0.0)};
    }
    const double re = -0.5 * bnu * std::pow(xi_mag, 2.0 * p.alpha);
    const double im = p.c0 * xi_mag;
    return {cplx(re, im), cplx(re, -im)};
}

double asymptotic_order(const ModelParams& p, int which_case) {
    if (which_case == 1) {
        // Small |xi| (alpha < 1/2) or large |xi| (alpha > 1/2); same exponent 4 - 6 alpha.
        return 4.0 - 6.0 * p.alpha;
    }
    return 4.0 * p.alpha - 1.0;
}

double max_real_part(const ModelParams& p, const std::vector<double>& xi_grid) {
    if (xi_grid.empty()) throw DomainError("max_real_part: empty grid");
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xi_grid) {
        if (!(x > 0.0)) throw DomainError("max_real_part: magnitudes must be positive");
        const auto r = char_roots(p, x);
        m = std::max({m, r.lambda2.real(), r.lambda3.real()});
    }
    return m;
}

}  // namespace cattaneo
