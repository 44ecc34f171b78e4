#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cattaneo/model.hpp"
#include "cattaneo/profiles.hpp"

namespace cattaneo {

using Field = std::vector<cplx>;

// Periodic box [-L/2, L/2)^n with N points per axis. Coefficients use the continuum
// normalization f^(xi_k) = dx^n sum_j f(x_j) e^{-i xi_k . x_j}, xi_k = 2 pi k / L.
struct SpectralGrid {
    int n = 2;
    int N = 64;
    double L = 40.0;

    void validate() const;
    std::size_t size() const;
    double dx() const { return L / N; }
    double dk() const;
    // Signed wavenumber index of array position i along one axis, in [-N/2, N/2).
    int wave(int i) const { return i < N / 2 ? i : i - N; }
    // Per-axis signed indices of flat position idx (row-major, last axis fastest).
    void indices(std::size_t idx, int* k) const;
    // Integer |k|^2 at flat position idx.
    long k2(std::size_t idx) const;
    double xi_mag(std::size_t idx) const;
    bool is_nyquist(std::size_t idx) const;
    // Inside the 2/3-rule band: 3 |k_d| < N on every axis.
    bool is_resolved(std::size_t idx) const;
    double coord(int i) const { return -0.5 * L + i * dx(); }
};

// Owns FFTW plans for one grid. Not thread-safe per instance; plan creation is
// serialised internally so instances may be built on any thread.
class Transformer {
public:
    explicit Transformer(const SpectralGrid& g);
    ~Transformer();
    Transformer(const Transformer&) = delete;
    Transformer& operator=(const Transformer&) = delete;

    const SpectralGrid& grid() const { return grid_; }
    Field to_spectral(const std::vector<double>& physical);
    std::vector<double> to_physical(const Field& spectral);
    // Largest |Im| relative to the largest |Re| in the last to_physical call.
    double last_imag_residue() const { return imag_residue_; }

private:
    SpectralGrid grid_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<double> sign_;
    double imag_residue_ = 0.0;
};

void dealias(const SpectralGrid& g, Field& f);

Field frac_laplacian_hat(const SpectralGrid& g, const Field& f, double alpha);

// i xi_d f^ along axis d.
Field derivative_hat(const SpectralGrid& g, const Field& f, int axis);

struct SpectralState {
    double t = 0.0;
    Field u, v, w;  // psi, psi_t, psi_tt
};

SpectralState zero_state(const SpectralGrid& g);

// Largest |f(-k) - conj f(k)| relative to max |f|.
double hermitian_defect(const SpectralGrid& g, const Field& f);

// (L^{-n} sum_k |xi_k|^{2 sigma} |f_k|^2)^{1/2}; the zero mode enters only when
// sigma = 0 and include_zero is set.
double grid_hs_norm(const SpectralGrid& g, const Field& f, double sigma, bool include_zero);
double grid_hs_norm(const SpectralGrid& g, const SpectralState& s, double sigma, int j,
                    bool include_zero);

// Real L^2 inner product of two fields in continuum normalization.
double grid_inner(const SpectralGrid& g, const Field& a, const Field& b);

std::vector<double> sample_gaussians(const SpectralGrid& g, const GaussianSum& f);
SpectralState gaussian_state(const SpectralGrid& g, Transformer& tr, const GaussianTriple& d);

double grid_moment_P(const SpectralGrid& g, const Field& f);
double grid_moment_L11(const SpectralGrid& g, const std::vector<double>& physical);
MomentB0 grid_B0(const SpectralGrid& g, Transformer& tr, const SpectralState& s,
                 const ModelParams& p);

// Flat binary dump: "CTSP", u32 version, u32 n, u32 N, f64 L, then u, v, w as
// row-major f64 physical fields, little-endian.
void write_dump(const std::string& path, const SpectralGrid& g, Transformer& tr,
                const SpectralState& s);

struct DumpData {
    SpectralGrid grid;
    std::vector<double> u, v, w;
};
DumpData read_dump(const std::string& path);

}  // namespace cattaneo
