#include "cattaneo/solver.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "cattaneo/errors.hpp"
#include "cattaneo/kernels.hpp"

namespace cattaneo {

Propagator::Propagator(const SpectralGrid& g, const ModelParams& p, double dt)
    : grid_(g), dt_(dt) {
    grid_.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("propagator needs dt > 0");
    k2_.resize(grid_.size());
    for (std::size_t i = 0; i < k2_.size(); ++i) {
        k2_[i] = grid_.k2(i);
        if (cache_.count(k2_[i])) continue;
        const double r = grid_.dk() * std::sqrt(static_cast<double>(k2_[i]));
        const auto kt = kernel_table(p, dt, r);
        Matrix m;
        for (int row = 0; row < 3; ++row) {
            for (int col = 0; col < 3; ++col) m[row][col] = kt.k[col][row];
        }
        cache_.emplace(k2_[i], m);
    }
}

const Propagator::Matrix& Propagator::matrix(std::size_t idx) const {
    return cache_.at(k2_.at(idx));
}

void Propagator::apply(SpectralState& s) const {
    const std::size_t m = k2_.size();
    if (s.u.size() != m || s.v.size() != m || s.w.size() != m) {
        throw DomainError("state size does not match propagator grid");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Matrix& M = cache_.find(k2_[i])->second;
        const cplx u = s.u[i], v = s.v[i], w = s.w[i];
        s.u[i] = M[0][0] * u + M[0][1] * v + M[0][2] * w;
        s.v[i] = M[1][0] * u + M[1][1] * v + M[1][2] * w;
        s.w[i] = M[2][0] * u + M[2][1] * v + M[2][2] * w;
    }
    s.t += dt_;
}

void Propagator::apply_forcing(const Field& f, double c, SpectralState& s) const {
    for (std::size_t i = 0; i < k2_.size(); ++i) {
        const Matrix& M = cache_.find(k2_[i])->second;
        const cplx g = c * f[i];
        s.u[i] += M[0][2] * g;
        s.v[i] += M[1][2] * g;
        s.w[i] += M[2][2] * g;
    }
}

SpectralState linear_propagate(const SpectralGrid& g, const SpectralState& s, double dt,
                               const ModelParams& p) {
    Propagator prop(g, p, dt);
    SpectralState out = s;
    prop.apply(out);
    return out;
}

Field nonlinear_force(const SpectralGrid& g, Transformer& tr, const SpectralState& s,
                      const ModelParams& p, double scale) {
    const std::size_t m = g.size();
    Field out(m, 0.0);
    if (scale == 0.0) return out;
    Field v = s.v, w = s.w, u = s.u;
    dealias(g, u);
    dealias(g, v);
    dealias(g, w);
    const auto vp = tr.to_physical(v);
    const auto wp = tr.to_physical(w);
    const double c = 2.0 * p.coeff_t();  // B / (A c0^2)
    std::vector<double> prod(m);
    for (std::size_t i = 0; i < m; ++i) prod[i] = c * vp[i] * wp[i];
    for (int d = 0; d < g.n; ++d) {
        const auto du = tr.to_physical(derivative_hat(g, u, d));
        const auto dv = tr.to_physical(derivative_hat(g, v, d));
        for (std::size_t i = 0; i < m; ++i) prod[i] += 2.0 * du[i] * dv[i];
    }
    out = tr.to_spectral(prod);
    dealias(g, out);
    if (scale != 1.0) {
        for (auto& x : out) x *= scale;
    }
    return out;
}

Stepper::Stepper(const SpectralGrid& g, const ModelParams& p, double dt, StepperOptions opt)
    : grid_(g), params_(p), opt_(std::move(opt)), tr_(g), prop_(g, p, dt) {
    params_.validate();
}

Field Stepper::force(const SpectralState& s) {
    Field f = opt_.nonlinear_scale != 0.0
                  ? nonlinear_force(grid_, tr_, s, params_, opt_.nonlinear_scale)
                  : Field(grid_.size(), 0.0);
    if (opt_.source) {
        Field src(grid_.size(), 0.0);
        opt_.source(s.t, src);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += src[i];
    }
    return f;
}

void Stepper::step(SpectralState& s) {
    const double h = prop_.dt();
    if (ref_norm_ < 0.0) {
        ref_norm_ = grid_hs_norm(grid_, s.u, 0.0, true) + grid_hs_norm(grid_, s.v, 0.0, true) +
                    grid_hs_norm(grid_, s.w, 0.0, true);
    }
    const bool forced = opt_.nonlinear_scale != 0.0 || static_cast<bool>(opt_.source);
    if (!forced) {
        prop_.apply(s);
    } else {
        const double inv_tau = 1.0 / params_.tau;
        const Field g0 = force(s);
        SpectralState ey = s;
        prop_.apply(ey);  // E Y_n, time t + h
        SpectralState ya = ey;
        prop_.apply_forcing(g0, h * inv_tau, ya);
        const Field g1 = force(ya);
        SpectralState next = std::move(ey);
        prop_.apply_forcing(g0, 0.5 * h * inv_tau, next);
        for (std::size_t i = 0; i < next.w.size(); ++i) next.w[i] += 0.5 * h * inv_tau * g1[i];
        s = std::move(next);
    }
    const double norm = grid_hs_norm(grid_, s.u, 0.0, true);
    if (!std::isfinite(norm) || norm > opt_.blowup_factor * std::max(ref_norm_, 1e-300)) {
        std::ostringstream os;
        os << "solution diverged at t = " << s.t << " (L2 norm " << norm << ")";
        throw DivergenceError(os.str(), s.t);
    }
}

void Stepper::advance(SpectralState& s, double t_end) {
    const double h = prop_.dt();
    const double steps = (t_end - s.t) / h;
    const long k = std::lround(steps);
    if (k < 0 || std::abs(steps - k) > 1e-9 * std::max(1.0, steps)) {
        throw DomainError("advance: dt does not divide the interval");
    }
    const double t0 = s.t;
    for (long i = 0; i < k; ++i) {
        step(s);
        s.t = t0 + (i + 1) * h;  // avoid drift from repeated addition
    }
}

SpectralState ManufacturedCase::exact(Transformer& tr, double t) const {
    std::vector<double> c(grid.size());
    const std::size_t stride = grid.size() / grid.N;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int i0 = static_cast<int>(i / stride);
        c[i] = std::cos(grid.dk() * grid.coord(i0));
    }
    const Field ch = tr.to_spectral(c);
    SpectralState s;
    s.t = t;
    const double e = std::exp(-t);
    s.u.resize(ch.size());
    s.v.resize(ch.size());
    s.w.resize(ch.size());
    for (std::size_t i = 0; i < ch.size(); ++i) {
        s.u[i] = e * ch[i];
        s.v[i] = -e * ch[i];
        s.w[i] = e * ch[i];
    }
    return s;
}

std::function<void(double, Field&)> ManufacturedCase::source() const {
    auto tr = std::make_shared<Transformer>(grid);
    const auto pc = modal_coefficients(params, grid.dk());
    // tau (y''' + p2 y'' + p1 y' + p0 y) for y = e^{-t}: tau (-1 + p2 - p1 + p0) e^{-t}.
    const double lin = params.tau * (-1.0 + pc[2] - pc[1] + pc[0]);
    const ManufacturedCase self = *this;
    return [tr, lin, self](double t, Field& out) {
        const SpectralState ex = self.exact(*tr, t);
        const Field f = nonlinear_force(self.grid, *tr, ex, self.params);
        out.resize(ex.u.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = lin * ex.u[i] - f[i];
    };
}

}  // namespace cattaneo
