#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cattaneo {

using cplx = std::complex<double>;

struct ModelParams {
    double tau = 1.0;
    double c0 = 1.0;
    double b = 1.5;
    double nu = 1.0;
    double A = 1.0;
    double B = 1.0;
    double alpha = 0.0;
    int dim = 2;

    double bnu() const { return b * nu; }
    // B/(2 A c0^2), the coefficient of |psi_t|^2 in N_psi.
    double coeff_t() const { return B / (2.0 * A * c0 * c0); }

    // Throws DomainError on any violated invariant.
    void validate() const;
};

ModelParams make_params(double tau, double c0, double b, double nu, double A, double B,
                        double alpha, int dim);

enum class Zone { Interior, Bounded, Exterior };

const char* zone_name(Zone z);

struct FrequencyZone {
    Zone tag;
    double eps0;
    double N0;
};

struct ZoneThresholds {
    double eps0;
    double N0;
};

// Discriminant sign transition (2c0/bnu)^{1/(2 alpha - 1)}; NaN at alpha = 1/2.
double transition_xi(const ModelParams& p);
ZoneThresholds zone_thresholds(const ModelParams& p);
FrequencyZone classify_zone(const ModelParams& p, double xi_mag);

struct CharRoots {
    double lambda1 = 0.0;
    cplx lambda2;
    cplx lambda3;
    double discriminant = 0.0;
    double lambdaR = 0.0;
    double lambdaI = 0.0;
    double xi_mag = 0.0;
    bool confluent = false;

    bool conjugate_pair() const { return discriminant < 0.0 && !confluent; }
};

constexpr double kConfluenceTol = 1e-10;

CharRoots char_roots(const ModelParams& p, double xi_mag);

// |(tau l + 1)(l^2 + a l + c0^2 r^2)| divided by a scale of the same degree.
double cubic_residual(const ModelParams& p, double xi_mag, cplx lambda);

// Leading-order expansions of lambda2, lambda3 (Case 1 or Case 2).
std::pair<cplx, cplx> asymptotic_roots(const ModelParams& p, double xi_mag, int which_case);

// Exponent of the remainder of the named expansion for lambda2.
double asymptotic_order(const ModelParams& p, int which_case);

double max_real_part(const ModelParams& p, const std::vector<double>& xi_grid);

}  // namespace cattaneo
