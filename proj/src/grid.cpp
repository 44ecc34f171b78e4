#include "cattaneo/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "cattaneo/errors.hpp"

namespace cattaneo {

static_assert(std::endian::native == std::endian::little, "dump format assumes little-endian");
static_assert(sizeof(cplx) == sizeof(fftw_complex), "std::complex layout must match FFTW");

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void SpectralGrid::validate() const {
    if (n < 1 || n > 3) throw DomainError("grid dimension must be 1, 2 or 3");
    if (N < 4 || (N & (N - 1)) != 0) throw DomainError("grid N must be a power of two >= 4");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid L must be positive");
}

std::size_t SpectralGrid::size() const {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(N);
    return s;
}

double SpectralGrid::dk() const { return 2.0 * std::numbers::pi / L; }

void SpectralGrid::indices(std::size_t idx, int* k) const {
    for (int d = n - 1; d >= 0; --d) {
        k[d] = wave(static_cast<int>(idx % N));
        idx /= N;
    }
}

long SpectralGrid::k2(std::size_t idx) const {
    int k[3];
    indices(idx, k);
    long s = 0;
    for (int d = 0; d < n; ++d) s += static_cast<long>(k[d]) * k[d];
    return s;
}

double SpectralGrid::xi_mag(std::size_t idx) const {
    return dk() * std::sqrt(static_cast<double>(k2(idx)));
}

bool SpectralGrid::is_nyquist(std::size_t idx) const {
    int k[3];
    indices(idx, k);
    for (int d = 0; d < n; ++d) {
        if (k[d] == -N / 2) return true;
    }
    return false;
}

bool SpectralGrid::is_resolved(std::size_t idx) const {
    int k[3];
    indices(idx, k);
    for (int d = 0; d < n; ++d) {
        if (3 * std::abs(k[d]) >= N) return false;
    }
    return true;
}

struct Transformer::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Transformer::Transformer(const SpectralGrid& g) : grid_(g), impl_(std::make_unique<Impl>()) {
    grid_.validate();
    const std::size_t m = grid_.size();
    int dims[3] = {grid_.N, grid_.N, grid_.N};
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        impl_->buf = fftw_alloc_complex(m);
        impl_->fwd = fftw_plan_dft(grid_.n, dims, impl_->buf, impl_->buf, FFTW_FORWARD,
                                   FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft(grid_.n, dims, impl_->buf, impl_->buf, FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
    }
    if (!impl_->buf || !impl_->fwd || !impl_->bwd) throw Error("FFTW plan creation failed");
    sign_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int k[3];
        grid_.indices(i, k);
        int s = 0;
        for (int d = 0; d < grid_.n; ++d) s += k[d];
        sign_[i] = (s % 2 == 0) ? 1.0 : -1.0;
    }
}

Transformer::~Transformer() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
    if (impl_->buf) fftw_free(impl_->buf);
}

Field Transformer::to_spectral(const std::vector<double>& physical) {
    const std::size_t m = grid_.size();
    if (physical.size() != m) throw DomainError("field size does not match grid");
    auto* b = reinterpret_cast<cplx*>(impl_->buf);
    for (std::size_t i = 0; i < m; ++i) b[i] = physical[i];
    fftw_execute(impl_->fwd);
    const double scale = std::pow(grid_.dx(), grid_.n);
    Field out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = b[i] * (scale * sign_[i]);
    return out;
}

std::vector<double> Transformer::to_physical(const Field& spectral) {
    const std::size_t m = grid_.size();
    if (spectral.size() != m) throw DomainError("field size does not match grid");
    auto* b = reinterpret_cast<cplx*>(impl_->buf);
    const double scale = 1.0 / std::pow(grid_.L, grid_.n);
    for (std::size_t i = 0; i < m; ++i) b[i] = spectral[i] * (scale * sign_[i]);
    fftw_execute(impl_->bwd);
    std::vector<double> out(m);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = b[i].real();
        re = std::max(re, std::abs(b[i].real()));
        im = std::max(im, std::abs(b[i].imag()));
    }
    imag_residue_ = re > 0.0 ? im / re : im;
    return out;
}

void dealias(const SpectralGrid& g, Field& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!g.is_resolved(i)) f[i] = 0.0;
    }
}

Field frac_laplacian_hat(const SpectralGrid& g, const Field& f, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
    Field out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = g.xi_mag(i);
        out[i] = (r == 0.0 ? (alpha == 0.0 ? 1.0 : 0.0) : std::pow(r, 2.0 * alpha)) * f[i];
    }
    return out;
}

Field derivative_hat(const SpectralGrid& g, const Field& f, int axis) {
    if (axis < 0 || axis >= g.n) throw DomainError("axis out of range");
    Field out(f.size());
    int k[3];
    for (std::size_t i = 0; i < f.size(); ++i) {
        g.indices(i, k);
        out[i] = k[axis] == -g.N / 2 ? cplx(0.0) : cplx(0.0, g.dk() * k[axis]) * f[i];
    }
    return out;
}

SpectralState zero_state(const SpectralGrid& g) {
    SpectralState s;
    s.u.assign(g.size(), 0.0);
    s.v.assign(g.size(), 0.0);
    s.w.assign(g.size(), 0.0);
    return s;
}

double hermitian_defect(const SpectralGrid& g, const Field& f) {
    double worst = 0.0, top = 0.0;
    int k[3];
    for (std::size_t i = 0; i < f.size(); ++i) {
        top = std::max(top, std::abs(f[i]));
        g.indices(i, k);
        std::size_t j = 0;
        for (int d = 0; d < g.n; ++d) {
            const int m = ((-k[d]) % g.N + g.N) % g.N;
            j = j * g.N + m;
        }
        worst = std::max(worst, std::abs(f[j] - std::conj(f[i])));
    }
    return top > 0.0 ? worst / top : 0.0;
}

double grid_hs_norm(const SpectralGrid& g, const Field& f, double sigma, bool include_zero) {
    if (!(2.0 * sigma + g.n > 0.0) && sigma < 0.0) {
        throw DomainError("grid norm needs 2 sigma + n > 0 or sigma >= 0");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const long kk = g.k2(i);
        if (kk == 0) {
            if (sigma == 0.0 && include_zero) s += std::norm(f[i]);
            continue;
        }
        const double r2 = g.dk() * g.dk() * static_cast<double>(kk);
        s += (sigma == 0.0 ? 1.0 : std::pow(r2, sigma)) * std::norm(f[i]);
    }
    return std::sqrt(s / std::pow(g.L, g.n));
}

double grid_hs_norm(const SpectralGrid& g, const SpectralState& st, double sigma, int j,
                    bool include_zero) {
    switch (j) {
        case 0: return grid_hs_norm(g, st.u, sigma, include_zero);
        case 1: return grid_hs_norm(g, st.v, sigma, include_zero);
        case 2: return grid_hs_norm(g, st.w, sigma, include_zero);
        default: throw DomainError("grid norms cover j = 0, 1, 2");
    }
}

double grid_inner(const SpectralGrid& g, const Field& a, const Field& b) {
    if (a.size() != b.size()) throw DomainError("field sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * std::conj(b[i])).real();
    return s / std::pow(g.L, g.n);
}

std::vector<double> sample_gaussians(const SpectralGrid& g, const GaussianSum& f) {
    g.validate();
    std::vector<double> out(g.size(), 0.0);
    int idx[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t rem = i;
        for (int d = g.n - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % g.N);
            rem /= g.N;
        }
        double v = 0.0;
        for (const auto& c : f) {
            if (!(c.w > 0.0)) throw DomainError("Gaussian width must be positive");
            double r2 = 0.0;
            for (int d = 0; d < g.n; ++d) {
                const double x0 = d < static_cast<int>(c.x0.size()) ? c.x0[d] : 0.0;
                double dx = g.coord(idx[d]) - x0;
                dx -= g.L * std::round(dx / g.L);  // nearest periodic image
                r2 += dx * dx;
            }
            v += c.eps * std::exp(-0.5 * r2 / (c.w * c.w));
        }
        out[i] = v;
    }
    return out;
}

SpectralState gaussian_state(const SpectralGrid& g, Transformer& tr, const GaussianTriple& d) {
    SpectralState s;
    s.u = tr.to_spectral(sample_gaussians(g, d.psi0));
    s.v = tr.to_spectral(sample_gaussians(g, d.psi1));
    s.w = tr.to_spectral(sample_gaussians(g, d.psi2));
    for (Field* f : {&s.u, &s.v, &s.w}) {
        for (std::size_t i = 0; i < f->size(); ++i) {
            if (g.is_nyquist(i)) (*f)[i] = 0.0;
        }
    }
    return s;
}

double grid_moment_P(const SpectralGrid& g, const Field& f) {
    (void)g;
    return f.at(0).real();
}

double grid_moment_L11(const SpectralGrid& g, const std::vector<double>& physical) {
    double s = 0.0;
    int idx[3];
    for (std::size_t i = 0; i < physical.size(); ++i) {
        std::size_t rem = i;
        for (int d = g.n - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % g.N);
            rem /= g.N;
        }
        double r2 = 0.0;
        for (int d = 0; d < g.n; ++d) r2 += g.coord(idx[d]) * g.coord(idx[d]);
        s += std::sqrt(r2) * std::abs(physical[i]);
    }
    return s * std::pow(g.dx(), g.n);
}

MomentB0 grid_B0(const SpectralGrid& g, Transformer& tr, const SpectralState& s,
                 const ModelParams& p) {
    const double cell = std::pow(g.dx(), g.n);
    const double P_lin = grid_moment_P(g, s.v) + p.tau * grid_moment_P(g, s.w);
    const auto psi1 = tr.to_physical(s.v);
    double P_sq = 0.0;
    for (double x : psi1) P_sq += x * x;
    double P_grad = 0.0;
    for (int d = 0; d < g.n; ++d) {
        const auto gd = tr.to_physical(derivative_hat(g, s.u, d));
        for (double x : gd) P_grad += x * x;
    }
    return assemble_B0(P_lin, P_sq * cell, P_grad * cell, p);
}

void write_dump(const std::string& path, const SpectralGrid& g, Transformer& tr,
                const SpectralState& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open dump file " + path);
    const char magic[4] = {'C', 'T', 'S', 'P'};
    const std::uint32_t version = 1, n = g.n, N = g.N;
    const double L = g.L;
    os.write(magic, 4);
    os.write(reinterpret_cast<const char*>(&version), 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(&N), 4);
    os.write(reinterpret_cast<const char*>(&L), 8);
    for (const Field* f : {&s.u, &s.v, &s.w}) {
        const auto phys = tr.to_physical(*f);
        os.write(reinterpret_cast<const char*>(phys.data()),
                 static_cast<std::streamsize>(phys.size() * sizeof(double)));
    }
    if (!os) throw Error("failed writing dump file " + path);
}

DumpData read_dump(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open dump file " + path);
    char magic[4];
    std::uint32_t version = 0, n = 0, N = 0;
    double L = 0.0;
    is.read(magic, 4);
    is.read(reinterpret_cast<char*>(&version), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(&N), 4);
    is.read(reinterpret_cast<char*>(&L), 8);
    if (!is || std::memcmp(magic, "CTSP", 4) != 0 || version != 1) {
        throw Error("not a version-1 CTSP dump: " + path);
    }
    DumpData d;
    d.grid = SpectralGrid{static_cast<int>(n), static_cast<int>(N), L};
    d.grid.validate();
    for (auto* f : {&d.u, &d.v, &d.w}) {
        f->resize(d.grid.size());
        is.read(reinterpret_cast<char*>(f->data()),
                static_cast<std::streamsize>(f->size() * sizeof(double)));
    }
    if (!is) throw Error("truncated dump file " + path);
    return d;
}

}  // namespace cattaneo
