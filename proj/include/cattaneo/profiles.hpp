#pragma once

#include <array>
#include <vector>

#include "cattaneo/model.hpp"

namespace cattaneo {

enum class ProfileKind { AnomalousDiffusion = 1, DiffusionWave = 2, CriticalWave = 3 };

ProfileKind kind_for(double alpha);
const char* kind_name(ProfileKind k);

// Smooth step: 0 for x <= 0, 1 for x >= 1, C-infinity in between.
double smooth_step(double x);

double cutoff(Zone zone, double xi_mag, double eps0, double N0);

// d^j/dt^j of the profile multiplier, including the interior cut-off; zero at xi = 0.
cplx profile_hat(ProfileKind kind, int j, double t, double xi_mag, const ModelParams& p);

// Same multiplier without the cut-off factor.
cplx profile_core(ProfileKind kind, int j, double t, double xi_mag, const ModelParams& p);

struct MomentB0 {
    double value = 0.0;
    double linear_part = 0.0;     // P_{psi1 + tau psi2}
    double nonlinear_part = 0.0;  // -tau P_{coeff |psi1|^2 + |grad psi0|^2}
    // Mass conserved by the PDE's zero mode: P_{psi1+tau psi2} - P_{coeff |psi1|^2 + |grad psi0|^2}.
    double duhamel_value = 0.0;
};

// Builds B0 from the three integrals P_{psi1+tau psi2}, P_{|psi1|^2}, P_{|grad psi0|^2}.
MomentB0 assemble_B0(double P_linear, double P_psi1_sq, double P_grad_psi0_sq,
                     const ModelParams& p);

// eps * exp(-|x - x0|^2 / (2 w^2)) in dimension n.
struct GaussianComponent {
    double eps = 0.0;
    double w = 1.0;
    std::vector<double> x0;  // empty means the origin
};

// A datum slot: a finite sum of Gaussian components (empty = zero datum).
using GaussianSum = std::vector<GaussianComponent>;

struct GaussianTriple {
    GaussianSum psi0, psi1, psi2;
};

double moment_P(const GaussianSum& f, int n);
// First absolute moment int |x| |f(x)| dx. Closed form for a single centred
// component; other sums throw DomainError (use the gridded moment instead).
double moment_L11(const GaussianSum& f, int n);
double integral_product(const GaussianSum& f, const GaussianSum& g, int n);
double integral_grad_product(const GaussianSum& f, const GaussianSum& g, int n);

MomentB0 compute_B0(const GaussianTriple& data, const ModelParams& p);

double unit_sphere_area(int n);

}  // namespace cattaneo
