#pragma once

#include <array>
#include <vector>

#include "cattaneo/model.hpp"

namespace cattaneo {

enum class KernelPath { Auto, Distinct, TrigPair, Confluent, ZeroMode };

const char* path_name(KernelPath p);

// k[j][m] = d^m/dt^m K_j(t, |xi|), j = 0..2, m = 0..3.
struct KernelTable {
    std::array<std::array<cplx, 4>, 3> k{};
    KernelPath path = KernelPath::Auto;
};

// Path that Auto resolves to at this frequency and time.
KernelPath select_path(const ModelParams& p, const CharRoots& roots, double t);

KernelTable kernel_table(const ModelParams& p, double t, double xi_mag,
                         KernelPath force = KernelPath::Auto);

cplx kernel_hat(int j, int m, double t, double xi_mag, const ModelParams& p,
                KernelPath force = KernelPath::Auto);

struct DataHat {
    cplx phi0{0.0};
    cplx phi1{0.0};
    cplx phi2{0.0};
};

cplx linear_solution_hat(double t, double xi_mag, const DataHat& data, const ModelParams& p,
                         int m = 0);

// Coefficients (p0, p1, p2) of y''' + p2 y'' + p1 y' + p0 y = 0.
std::array<double, 3> modal_coefficients(const ModelParams& p, double xi_mag);

struct BoundSample {
    double xi_mag;
    double t;
};

struct BoundReport {
    int which_case = 0;
    int j = 0;
    double C = 0.0;        // smallest constant over the sample
    double c = 0.0;        // decay constant used in the bound shape
    bool pass = false;     // finite C over the sample
    std::size_t samples = 0;
};

// Fits the constant in the pointwise bound of the given case:
//  1: |d^j K| <= C (r^{(2-2a)j-2a} e^{-c r^{2-2a} t} + r^{2a(j-1)} e^{-c r^{2a} t} + e^{-c t})
//  2: |d^j K| <= C r^{j-1} (|sin(c0 r t)| + r^{2a-1}) e^{-c r^{2a} t} + C e^{-c t}
//  3: |d^j K| <= C e^{-c t}
//  4: |d^j K| <= C r^{j-1} e^{-c r t} + C e^{-c t}
// Samples must lie in the zone where the case is asserted. The kernel is the
// sum |K_0| + |K_1| + |K_2| (data of unit size).
BoundReport kernel_pointwise_bound_check(const ModelParams& p, int which_case, int j,
                                         const std::vector<BoundSample>& samples);

}  // namespace cattaneo
