#include "cattaneo/picard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <boost/math/quadrature/gauss.hpp>

#include "cattaneo/errors.hpp"
#include "cattaneo/kernels.hpp"
#include "cattaneo/solver.hpp"

namespace cattaneo {

namespace {

// W[stencil][l][m]: integral over one step of d^m K_2(h - s) l_l(s / h) / tau.
// Stencil 0 interpolates on nodes {0, 1, 2}, stencil 1 on {-1, 0, 1} (in steps).
using Weights = std::array<std::array<std::array<cplx, 3>, 3>, 2>;

double lagrange(const std::array<double, 3>& x, int l, double s) {
    double v = 1.0;
    for (int k = 0; k < 3; ++k) {
        if (k != l) v *= (s - x[k]) / (x[l] - x[k]);
    }
    return v;
}

Weights step_weights(const ModelParams& p, double h, double r) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    const std::array<std::array<double, 3>, 2> stencils{{{0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}}};
    Weights W{};
    for (std::size_t q = 0; q < xs.size(); ++q) {
        for (double sgn : {-1.0, 1.0}) {
            const double x = 0.5 * (1.0 + sgn * xs[q]);  // s / h
            const auto kt = kernel_table(p, h * (1.0 - x), r);
            const double wq = 0.5 * h * ws[q] / p.tau;
            for (int st = 0; st < 2; ++st) {
                for (int l = 0; l < 3; ++l) {
                    const double lw = wq * lagrange(stencils[st], l, x);
                    for (int m = 0; m < 3; ++m) W[st][l][m] += lw * kt.k[2][m];
                }
            }
        }
    }
    return W;
}

}  // namespace

PicardResult picard_solve(const SpectralGrid& g, const SpectralState& data, double T,
                          const ModelParams& p, const PicardOptions& opt) {
    g.validate();
    p.validate();
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("picard_solve needs T > 0");
    if (opt.nodes < 2 || opt.k_max < 1) throw DomainError("picard_solve needs nodes >= 2, k_max >= 1");
    const std::size_t m = g.size();
    if (data.u.size() != m || data.v.size() != m || data.w.size() != m) {
        throw DomainError("picard_solve: data size does not match grid");
    }
    const int K = opt.nodes;
    const double h = T / K;
    const bool nonlinear = opt.nonlinear_scale != 0.0;

    Propagator prop(g, p, h);
    Transformer tr(g);

    // The force is band-limited by the dealiasing rule, so the Duhamel term and the
    // difference between iterates live on the resolved modes only.
    std::vector<std::size_t> res;
    for (std::size_t i = 0; i < m; ++i) {
        if (g.is_resolved(i)) res.push_back(i);
    }
    const std::size_t nr = res.size();
    std::unordered_map<long, Weights> wcache;
    std::vector<const Weights*> wmode(nr);
    if (nonlinear) {
        for (std::size_t q = 0; q < nr; ++q) {
            const long k2 = g.k2(res[q]);
            auto it = wcache.find(k2);
            if (it == wcache.end()) {
                const double r = g.dk() * std::sqrt(static_cast<double>(k2));
                it = wcache.emplace(k2, step_weights(p, h, r)).first;
            }
            wmode[q] = &it->second;
        }
    }

    std::vector<cplx> f_old(nonlinear ? (K + 1) * nr : 0, 0.0);
    std::vector<cplx> f_new(f_old.size(), 0.0);
    std::vector<cplx> u_prev((K + 1) * nr, 0.0);
    const double vol = std::pow(g.L, g.n);

    PicardResult out;
    double last = INFINITY;
    for (int it = 1; it <= opt.k_max; ++it) {
        SpectralState D = data;
        D.t = 0.0;
        double dmax = 0.0, umax = 0.0;
        std::vector<SpectralState> traj;
        for (int i = 0; i <= K; ++i) {
            double d2 = 0.0;
            cplx* up = &u_prev[i * nr];
            for (std::size_t q = 0; q < nr; ++q) {
                d2 += std::norm(D.u[res[q]] - up[q]);
                up[q] = D.u[res[q]];
            }
            dmax = std::max(dmax, std::sqrt(d2 / vol));
            const double un = grid_hs_norm(g, D.u, 0.0, true);
            if (!std::isfinite(un)) {
                std::ostringstream os;
                os << "picard iterate " << it << " is not finite at t = " << D.t;
                throw DivergenceError(os.str(), D.t);
            }
            umax = std::max(umax, un);
            if (nonlinear) {
                const Field F = nonlinear_force(g, tr, D, p, opt.nonlinear_scale);
                cplx* fn = &f_new[i * nr];
                for (std::size_t q = 0; q < nr; ++q) fn[q] = F[res[q]];
            }
            if (i == K || (opt.record_stride > 0 && i % opt.record_stride == 0)) traj.push_back(D);
            if (i == K) break;
            prop.apply(D);
            D.t = (i + 1) * h;
            if (nonlinear && it > 1) {
                const int st = i + 2 <= K ? 0 : 1;
                const int base = st == 0 ? i : i - 1;
                const cplx* f0 = &f_old[base * nr];
                const cplx* f1 = f0 + nr;
                const cplx* f2 = f1 + nr;
                for (std::size_t q = 0; q < nr; ++q) {
                    const auto& W = (*wmode[q])[st];
                    const std::size_t k = res[q];
                    for (int c = 0; c < 3; ++c) {
                        const cplx add = W[0][c] * f0[q] + W[1][c] * f1[q] + W[2][c] * f2[q];
                        if (c == 0) D.u[k] += add;
                        else if (c == 1) D.v[k] += add;
                        else D.w[k] += add;
                    }
                }
            }
        }
        const double dist = umax > 0.0 ? dmax / umax : 0.0;
        out.distances.push_back(dist);
        out.iterations = it;
        out.trajectory = std::move(traj);
        if (!nonlinear || dist < opt.tol) {
            out.converged = true;
            return out;
        }
        if (it >= 3 && dist >= last) {
            std::ostringstream os;
            os << "picard iteration not contracting: distance " << dist << " after " << last
               << " at iteration " << it;
            throw NonContractionError(os.str());
        }
        last = dist;
        std::swap(f_old, f_new);
    }
    return out;
}

}  // namespace cattaneo
