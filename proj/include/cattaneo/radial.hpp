#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cattaneo/model.hpp"
#include "cattaneo/profiles.hpp"

namespace cattaneo {

// Radially symmetric datum described by its Fourier transform f^(r), r = |xi|.
struct RadialDatum {
    std::string label = "zero";
    std::function<double(double)> fhat;  // empty means identically zero
    double P = 0.0;                      // mass, equals fhat(0)
    std::optional<double> M1;            // int |x| |f(x)| dx when finite

    double operator()(double r) const { return fhat ? fhat(r) : 0.0; }
};

RadialDatum zero_datum();
// eps * exp(-|x|^2 / (2 w^2)) in dimension n.
RadialDatum gaussian_datum(double eps, double w, int n);
// Datum with transform eps * w^2 r^2 * ghat(r) (ghat the unit Gaussian of width w); P = 0.
RadialDatum laplacian_gaussian_datum(double eps, double w, int n);

struct RadialTriple {
    RadialDatum phi0 = zero_datum();
    RadialDatum phi1 = zero_datum();
    RadialDatum phi2 = zero_datum();
};

// Norm of d_t^j in the homogeneous space of order sigma, in dimension n.
struct SobolevSpec {
    double sigma = 0.0;
    int n = 2;
    int j = 0;

    void validate() const;
};

struct QuadOptions {
    double rel_tol = 1e-10;  // bound on the summed Gauss-Kronrod error estimates
    int density = 1;  // multiplies the panel count; 2 is the self-check setting
};

struct RadialIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// int_0^inf h(r) dr for a nonnegative integrand decaying at infinity and behaving like a
// power r^q (q > -1) near 0. osc_rate > 0 caps panel widths at pi / (8 osc_rate).
RadialIntegral radial_integrate(const std::function<double(double)>& h, double osc_rate,
                                const QuadOptions& opt = {});

// (c_n int r^{2 sigma + n - 1} |m(r)|^2 dr)^{1/2}, c_n = |S^{n-1}| / (2 pi)^n.
double radial_norm(const std::function<double(double)>& abs_multiplier, double sigma, int n,
                   double osc_rate, const QuadOptions& opt = {});

double hs_norm_linear(double t, const SobolevSpec& spec, const RadialTriple& data,
                      const ModelParams& p, const QuadOptions& opt = {});

double hs_norm_profile(double t, const SobolevSpec& spec, ProfileKind kind, double moment,
                       const ModelParams& p, const QuadOptions& opt = {});

// Norm of d_t^j phi - G_{k,j} P_{phi1 + tau phi2}.
double hs_norm_error(double t, const SobolevSpec& spec, const RadialTriple& data,
                     ProfileKind kind, const ModelParams& p, const QuadOptions& opt = {});

enum class MultiplierVariant { One, Sin };

// || chi_int |xi|^s g0 e^{-c |xi|^beta t} ||_{L^2} with g0 = 1 or sin(C |xi| t).
double multiplier_norm(double t, double s, int n, double beta, MultiplierVariant variant,
                       double c = 1.0, double C = 1.0, double eps0 = 1.0,
                       const QuadOptions& opt = {});

}  // namespace cattaneo
