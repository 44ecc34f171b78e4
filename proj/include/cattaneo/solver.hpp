#pragma once

#include <array>
#include <functional>
#include <unordered_map>

#include "cattaneo/grid.hpp"
#include "cattaneo/model.hpp"

namespace cattaneo {

// Exact modal flow over a fixed dt: (u, v, w)(t + dt) = M(|xi|) (u, v, w)(t), with
// M[m][j] = d^m/dt^m K_j(dt). Matrices are cached per integer |k|^2.
class Propagator {
public:
    using Matrix = std::array<std::array<cplx, 3>, 3>;

    Propagator(const SpectralGrid& g, const ModelParams& p, double dt);

    double dt() const { return dt_; }
    const Matrix& matrix(std::size_t idx) const;
    void apply(SpectralState& s) const;  // advances s.t by dt
    // Applies M to (0, 0, f) and adds the result scaled by c into s.
    void apply_forcing(const Field& f, double c, SpectralState& s) const;

private:
    SpectralGrid grid_;
    double dt_;
    std::vector<long> k2_;
    std::unordered_map<long, Matrix> cache_;
};

SpectralState linear_propagate(const SpectralGrid& g, const SpectralState& s, double dt,
                               const ModelParams& p);

// Fourier coefficients of scale * ((B/(A c0^2)) v w + 2 grad u . grad v), products formed
// in physical space from 2/3-truncated inputs; the result is truncated as well.
Field nonlinear_force(const SpectralGrid& g, Transformer& tr, const SpectralState& s,
                      const ModelParams& p, double scale = 1.0);

struct StepperOptions {
    double nonlinear_scale = 1.0;  // 0 reduces the step to the linear flow
    // Spectral source added to the force, e.g. for manufactured solutions.
    std::function<void(double t, Field& out)> source;
    double blowup_factor = 1e8;    // L2 growth over the initial state treated as divergence
};

// Two-stage exponential (Lawson-Heun) integrator for
//   d/dt Y = M Y + (0, 0, (F(Y) + S) / tau),
// Y_{n+1} = E (Y_n + h/2 G_n) + h/2 G(E (Y_n + h G_n)).
class Stepper {
public:
    Stepper(const SpectralGrid& g, const ModelParams& p, double dt, StepperOptions opt = {});

    void step(SpectralState& s);
    // Steps to exactly t_end (dt must divide the interval to 1e-9 relative).
    void advance(SpectralState& s, double t_end);

    double dt() const { return prop_.dt(); }
    Transformer& transformer() { return tr_; }

private:
    Field force(const SpectralState& s);

    SpectralGrid grid_;
    ModelParams params_;
    StepperOptions opt_;
    Transformer tr_;
    Propagator prop_;
    double ref_norm_ = -1.0;
};

// psi = e^{-t} cos(x_1): exact state and the spectral source that makes it a solution.
struct ManufacturedCase {
    SpectralGrid grid;
    ModelParams params;

    SpectralState exact(Transformer& tr, double t) const;
    std::function<void(double, Field&)> source() const;
};

}  // namespace cattaneo
