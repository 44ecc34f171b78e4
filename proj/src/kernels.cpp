#include "cattaneo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cattaneo/errors.hpp"

namespace cattaneo {

namespace {

using Mat3 = std::array<std::array<cplx, 3>, 3>;

constexpr double kLambda1Closeness = 1e-4;

void fill_third_derivative(KernelTable& kt, const std::array<double, 3>& pc) {
    for (int j = 0; j < 3; ++j) {
        auto& k = kt.k[j];
        k[3] = -pc[0] * k[0] - pc[1] * k[1] - pc[2] * k[2];
    }
}

KernelTable distinct_path(const CharRoots& r, double t) {
    const std::array<cplx, 3> l{cplx(r.lambda1, 0.0), r.lambda2, r.lambda3};
    KernelTable kt;
    for (int i = 0; i < 3; ++i) {
        const cplx a = l[(i + 1) % 3];
        const cplx b = l[(i + 2) % 3];
        const cplx inv = 1.0 / ((l[i] - a) * (l[i] - b));
        const std::array<cplx, 3> coef{a * b * inv, -(a + b) * inv, inv};
        const cplx e = std::exp(l[i] * t);
        cplx lm(1.0, 0.0);
        for (int m = 0; m < 4; ++m) {
            const cplx em = lm * e;
            for (int j = 0; j < 3; ++j) kt.k[j][m] += coef[j] * em;
            lm *= l[i];
        }
    }
    kt.path = KernelPath::Distinct;
    return kt;
}

KernelTable trig_path(const CharRoots& r, double t) {
    const double l1 = r.lambda1;
    const double lr = r.lambdaR;
    const double li = r.lambdaI;
    const double D = 2.0 * lr * l1 - li * li - lr * lr - l1 * l1;
    // Coefficients of e^{l1 t}, cos(li t)e^{lr t}, sin(li t)e^{lr t} for unit data phi_j.
    const double a[3] = {-(li * li + lr * lr) / D, 2.0 * lr / D, -1.0 / D};
    const double c[3] = {(2.0 * lr * l1 - l1 * l1) / D, -2.0 * lr / D, 1.0 / D};
    const double s[3] = {l1 * (lr * l1 + li * li - lr * lr) / (li * D),
                         (lr * lr - li * li - l1 * l1) / (li * D), -(lr - l1) / (li * D)};
    const double e1 = std::exp(l1 * t);
    const cplx z(lr, li);
    const double er = std::exp(lr * t);
    const cplx ez = er * cplx(std::cos(li * t), std::sin(li * t));
    KernelTable kt;
    double l1m = 1.0;
    cplx zm(1.0, 0.0);
    for (int m = 0; m < 4; ++m) {
        const cplx w = zm * ez;
        for (int j = 0; j < 3; ++j) {
            kt.k[j][m] = a[j] * l1m * e1 + c[j] * w.real() + s[j] * w.imag();
        }
        l1m *= l1;
        zm *= z;
    }
    kt.path = KernelPath::TrigPair;
    return kt;
}

// (e^{yt} - e^{xt}) / (y - x), stable as y -> x.
cplx divided_difference1(cplx x, cplx y, double t) {
    const cplx h = (y - x) * t;
    if (std::abs(h) < 0.5) {
        cplx term(1.0, 0.0);
        cplx sum(1.0, 0.0);
        for (int k = 1; k < 40; ++k) {
            term *= h / static_cast<double>(k + 1);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return std::exp(x * t) * t * sum;
    }
    return (std::exp(y * t) - std::exp(x * t)) / (y - x);
}

// Second divided difference of e^{(.)t}; x0, x1 must be the closest pair.
cplx divided_difference2(cplx x0, cplx x1, cplx x2, double t) {
    const double spread =
        std::max({std::abs(x0 - x1), std::abs(x0 - x2), std::abs(x1 - x2)}) * t;
    if (spread < 0.5) {
        const cplx c = (x0 + x1 + x2) / 3.0;
        const cplx y0 = (x0 - c) * t;
        const cplx y1 = (x1 - c) * t;
        const cplx y2 = (x2 - c) * t;
        // h_m(y0,y1,y2) built from h_m(y0) and h_m(y0,y1).
        cplx h1(1.0, 0.0), h2(1.0, 0.0), h3(1.0, 0.0);
        double fact = 2.0;  // k! with k = m + 2
        cplx sum = h3 / fact;
        for (int m = 1; m < 60; ++m) {
            h1 = h1 * y0;
            h2 = h2 * y1 + h1;
            h3 = h3 * y2 + h2;
            fact *= static_cast<double>(m + 2);
            const cplx term = h3 / fact;
            sum += term;
            // h_1 vanishes for centered nodes, so a single small term is not a stop signal.
            if (m >= 3 && std::abs(term) < 1e-18 * std::abs(sum) &&
                std::abs(h2) < 1e-18 * fact * std::abs(sum))
                break;
        }
        return std::exp(c * t) * t * t * sum;
    }
    return (divided_difference1(x1, x2, t) - divided_difference1(x0, x1, t)) / (x2 - x0);
}

Mat3 companion(const std::array<double, 3>& pc) {
    Mat3 M{};
    M[0][1] = 1.0;
    M[1][2] = 1.0;
    M[2][0] = -pc[0];
    M[2][1] = -pc[1];
    M[2][2] = -pc[2];
    return M;
}

Mat3 shifted(const Mat3& M, cplx x) {
    Mat3 r = M;
    for (int i = 0; i < 3; ++i) r[i][i] -= x;
    return r;
}

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

KernelTable confluent_path(const ModelParams& p, const CharRoots& r, double t) {
    // Use the exact split of lambda2, lambda3 even where char_roots reports a double root:
    // the Newton form below is exact only at the true eigenvalues of the companion matrix.
    const double a = p.bnu() * std::pow(r.xi_mag, 2.0 * p.alpha);
    const cplx half_root = 0.5 * std::sqrt(cplx(r.discriminant, 0.0));
    std::array<cplx, 3> x{cplx(r.lambda1, 0.0), -0.5 * a + half_root, -0.5 * a - half_root};
    // Move the closest pair to the front.
    const double d01 = std::abs(x[0] - x[1]);
    const double d02 = std::abs(x[0] - x[2]);
    const double d12 = std::abs(x[1] - x[2]);
    if (d12 <= d01 && d12 <= d02) x = {x[1], x[2], x[0]};
    else if (d02 <= d01 && d02 <= d12) x = {x[0], x[2], x[1]};

    const auto pc = modal_coefficients(p, r.xi_mag);
    const Mat3 M = companion(pc);
    const Mat3 A = shifted(M, x[0]);
    const Mat3 AB = mul(A, shifted(M, x[1]));
    const cplx f0 = std::exp(x[0] * t);
    const cplx f1 = divided_difference1(x[0], x[1], t);
    const cplx f2 = divided_difference2(x[0], x[1], x[2], t);
    KernelTable kt;
    for (int m = 0; m < 3; ++m) {
        for (int j = 0; j < 3; ++j) {
            cplx v = f1 * A[m][j] + f2 * AB[m][j];
            if (m == j) v += f0;
            kt.k[j][m] = v;
        }
    }
    fill_third_derivative(kt, pc);
    kt.path = KernelPath::Confluent;
    return kt;
}

KernelTable zero_mode_path(const ModelParams& p, double t) {
    const double tau = p.tau;
    const double e = std::exp(-t / tau);
    KernelTable kt;
    kt.k[0] = {1.0, 0.0, 0.0, 0.0};
    kt.k[1] = {t, 1.0, 0.0, 0.0};
    kt.k[2] = {-tau * tau + tau * t + tau * tau * e, tau * (1.0 - e), e, -e / tau};
    kt.path = KernelPath::ZeroMode;
    return kt;
}

}  // namespace

const char* path_name(KernelPath p) {
    switch (p) {
        case KernelPath::Auto: return "auto";
        case KernelPath::Distinct: return "distinct";
        case KernelPath::TrigPair: return "trig";
        case KernelPath::Confluent: return "confluent";
        case KernelPath::ZeroMode: return "zero-mode";
    }
    return "?";
}

std::array<double, 3> modal_coefficients(const ModelParams& p, double xi_mag) {
    const double a = p.bnu() * std::pow(xi_mag, 2.0 * p.alpha);
    const double q = p.c0 * p.c0 * xi_mag * xi_mag;
    return {q / p.tau, (p.tau * q + a) / p.tau, (p.tau * a + 1.0) / p.tau};
}

KernelPath select_path(const ModelParams& p, const CharRoots& r, double t) {
    if (r.xi_mag == 0.0 && p.alpha > 0.0) return KernelPath::ZeroMode;
    if (r.confluent) return KernelPath::Confluent;
    const cplx l1(r.lambda1, 0.0);
    for (const cplx& l : {r.lambda2, r.lambda3}) {
        const double scale = std::max(std::abs(l1), std::abs(l));
        if (std::abs(l1 - l) <= kLambda1Closeness * scale) return KernelPath::Confluent;
    }
    if (r.discriminant < 0.0) return KernelPath::TrigPair;
    // The exponential sum cancels to O(1/(|lambda2 - lambda3| t)) when the real pair is
    // unresolved on the time scale t.
    if (std::abs(r.lambda2 - r.lambda3) * t < 1.0) return KernelPath::Confluent;
    return KernelPath::Distinct;
}

KernelTable kernel_table(const ModelParams& p, double t, double xi_mag, KernelPath force) {
    if (!(t >= 0.0)) throw DomainError("kernel evaluation needs t >= 0");
    const CharRoots r = char_roots(p, xi_mag);
    const KernelPath path = force == KernelPath::Auto ? select_path(p, r, t) : force;
    switch (path) {
        case KernelPath::Distinct: return distinct_path(r, t);
        case KernelPath::TrigPair:
            if (!(r.lambdaI > 0.0)) throw DomainError("trigonometric path needs complex roots");
            return trig_path(r, t);
        case KernelPath::Confluent: return confluent_path(p, r, t);
        case KernelPath::ZeroMode:
            if (xi_mag != 0.0 || p.alpha == 0.0)
                throw DomainError("zero-mode path needs xi = 0 and alpha > 0");
            return zero_mode_path(p, t);
        case KernelPath::Auto: break;
    }
    throw DomainError("unresolved kernel path");
}

cplx kernel_hat(int j, int m, double t, double xi_mag, const ModelParams& p, KernelPath force) {
    if (j < 0 || j > 2) throw DomainError("kernel index j must be 0, 1 or 2");
    if (m < 0 || m > 3) throw DomainError("derivative order m must be in 0..3");
    return kernel_table(p, t, xi_mag, force).k[j][m];
}

cplx linear_solution_hat(double t, double xi_mag, const DataHat& d, const ModelParams& p,
                         int m) {
    if (m < 0 || m > 3) throw DomainError("derivative order m must be in 0..3");
    const auto kt = kernel_table(p, t, xi_mag);
    return kt.k[0][m] * d.phi0 + kt.k[1][m] * d.phi1 + kt.k[2][m] * d.phi2;
}

BoundReport kernel_pointwise_bound_check(const ModelParams& p, int which_case, int j,
                                         const std::vector<BoundSample>& samples) {
    if (which_case < 1 || which_case > 4) throw DomainError("case must be 1..4");
    if (j < 0 || j > 3) throw DomainError("j must be in 0..3");
    const auto z = zone_thresholds(p);
    const double a = p.alpha;
    auto in_zone = [&](double r) {
        switch (which_case) {
            case 1: return r > 0.0 && ((a < 0.5 && r <= z.eps0) || (a > 0.5 && r >= z.N0));
            case 2: return r > 0.0 && ((a > 0.5 && r <= z.eps0) || (a < 0.5 && r >= z.N0));
            case 3: return a != 0.5 && r >= 0.5 * z.eps0 && r <= 2.0 * z.N0;
            default: return a == 0.5 && r > 0.0 && r <= z.eps0;
        }
    };
    for (const auto& s : samples) {
        if (!in_zone(s.xi_mag)) {
            throw DomainError("kernel_pointwise_bound_check: sample outside the case zone");
        }
    }
    BoundReport rep;
    rep.which_case = which_case;
    rep.j = j;
    rep.samples = samples.size();
    const double bnu = p.bnu();
    double c = 0.5 * std::min({p.c0 * p.c0 / bnu, bnu, 1.0 / p.tau});
    if (which_case == 3) {
        double slowest = std::numeric_limits<double>::infinity();
        for (const auto& s : samples) {
            const auto r = char_roots(p, s.xi_mag);
            slowest = std::min(slowest, -std::max({r.lambda1, r.lambda2.real(), r.lambda3.real()}));
        }
        c = 0.5 * std::min(slowest, 1.0 / p.tau);
    }
    rep.c = c;
    double C = 0.0;
    for (const auto& s : samples) {
        const auto kt = kernel_table(p, s.t, s.xi_mag);
        const double val =
            std::abs(kt.k[0][j]) + std::abs(kt.k[1][j]) + std::abs(kt.k[2][j]);
        const double r = s.xi_mag;
        const double t = s.t;
        double shape = 0.0;
        switch (which_case) {
            case 1:
                if (a < 0.5) {
                    const double slow = 2.0 - 2.0 * a;
                    shape = std::pow(r, slow * j - 2.0 * a) * std::exp(-c * std::pow(r, slow) * t) +
                            std::pow(r, 2.0 * a * (j - 1)) * std::exp(-c * std::pow(r, 2.0 * a) * t) +
                            std::exp(-c * t);
                } else {
                    shape = std::pow(1.0 + r, 2.0 * j) * std::exp(-c * t);
                }
                break;
            case 2:
                if (a > 0.5) {
                    const double env = std::exp(-c * std::pow(r, 2.0 * a) * t);
                    shape = std::pow(r, j - 1.0) *
                                (std::abs(std::sin(p.c0 * r * t)) + std::pow(r, 2.0 * a - 1.0)) *
                                env +
                            std::exp(-c * t);
                } else {
                    shape = std::pow(1.0 + r, static_cast<double>(j)) * std::exp(-c * t);
                }
                break;
            case 3: shape = std::exp(-c * t); break;
            default:
                shape = std::pow(r, j - 1.0) * std::exp(-c * r * t) + std::exp(-c * t);
                break;
        }
        if (shape > 0.0) C = std::max(C, val / shape);
        else if (val > 0.0) C = std::numeric_limits<double>::infinity();
    }
    rep.C = C;
    rep.pass = std::isfinite(C);
    return rep;
}

}  // namespace cattaneo
