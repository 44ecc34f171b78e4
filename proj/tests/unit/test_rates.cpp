#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <boost/rational.hpp>

#include "cattaneo/errors.hpp"
#include "cattaneo/radial.hpp"
#include "cattaneo/rates.hpp"

using namespace cattaneo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<SeriesPoint> series(double t0, double t1, int count,
                                const std::function<double(double)>& f) {
    std::vector<SeriesPoint> out;
    for (double t : log_spaced(t0, t1, count)) out.push_back({t, f(t)});
    return out;
}

}  // namespace

TEST_CASE("tabulated exponents", "[rates]") {
    CHECK_THAT(theoretical_rate({0.0, 2, 0, 0.0}).exponent, WithinAbs(-0.5, 1e-15));
    CHECK_THAT(theoretical_rate({1.0, 3, 0, 0.0}).exponent, WithinAbs(-0.25, 1e-15));
    CHECK_THAT(theoretical_rate({0.5, 2, 0, 0.0}).exponent, WithinAbs(0.0, 1e-15));
    CHECK_THAT(table::improvement_linear(0.25), WithinAbs(-1.0 / 3.0, 1e-15));
    CHECK_THAT(theoretical_rate({0.25, 2, 0, 0.0, RateVariant::ImprovedError}).exponent,
               WithinAbs(theoretical_rate({0.25, 2, 0, 0.0}).exponent - 1.0 / 3.0, 1e-15));
    CHECK_THAT(table::improvement_nonlinear(0.125), WithinAbs(-0.25 / 1.75, 1e-15));
}

TEST_CASE("queries outside the hypotheses are flagged", "[rates]") {
    const auto r = theoretical_rate({0.75, 2, 0, 0.0});
    CHECK_FALSE(r.within_hypotheses);
    CHECK_FALSE(r.note.empty());
    CHECK(theoretical_rate({0.75, 3, 0, 0.0}).within_hypotheses);
    CHECK_FALSE(theoretical_rate({0.25, 2, 0, 1.0}).within_hypotheses);
    CHECK(theoretical_rate({0.25, 2, 1, 1.0}).within_hypotheses);
    CHECK_THROWS_AS(theoretical_rate({0.75, 3, 0, 0.0, RateVariant::ImprovedError}), DomainError);
    CHECK_THROWS_AS(theoretical_rate({1.5, 3, 0, 0.0}), DomainError);
    CHECK_THROWS_AS(theoretical_rate({0.2, 2, 0, -1.0}), DomainError);
    CHECK_THROWS_AS(parse_variant("fastest"), DomainError);
    CHECK(parse_variant(variant_name(RateVariant::KernelData2)) == RateVariant::KernelData2);
}

TEST_CASE("exponents are continuous at alpha = 1/2", "[rates]") {
    using Q = boost::rational<long>;
    const Q half(1, 2);
    for (long n = 1; n <= 3; ++n) {
        for (long j = 0; j <= 2; ++j) {
            for (long s4 = -7; s4 <= 12; ++s4) {
                const Q sigma(s4, 4);
                if (Q(2) * sigma + Q(n) <= Q(0)) continue;
                const Q crit = table::critical<Q>(Q(n), Q(j), sigma);
                REQUIRE(table::anomalous<Q>(half, Q(n), Q(j), sigma) == crit);
                REQUIRE(table::diffusion_wave<Q>(half, Q(n), Q(j), sigma) == crit);
            }
        }
    }
    CHECK(table::improvement_linear<Q>(Q(1, 3)) == Q(-1, 2));
}

TEST_CASE("exponents do not increase with the norm order", "[rates]") {
    for (double alpha : {0.0, 0.3, 0.5, 0.7, 1.0}) {
        for (int n = 2; n <= 3; ++n) {
            for (int j = 0; j <= 2; ++j) {
                double last = 1e300;
                for (double sigma = 0.0; sigma <= 4.0; sigma += 0.25) {
                    const double e = theoretical_rate({alpha, n, j, sigma}).exponent;
                    REQUIRE(e <= last);
                    last = e;
                }
            }
        }
    }
}

TEST_CASE("decay rate fits", "[rates]") {
    const auto exact = series(1.0, 1e3, 20, [](double t) { return std::pow(t, -0.5); });
    const auto f = fit_decay_rate(exact, 1.0, 1e3);
    CHECK_THAT(f.slope, WithinAbs(-0.5, 1e-12));
    CHECK_THAT(f.r2, WithinAbs(1.0, 1e-12));
    CHECK(f.n_points == 20);

    const auto wobble = series(1e2, 1e4, 30, [](double t) {
        return std::pow(t, -0.5) * (1.0 + 0.1 * std::sin(std::log(t)));
    });
    CHECK_THAT(fit_decay_rate(wobble, 1e2, 1e4).slope, WithinAbs(-0.5, 0.05));

    const auto flat = series(1.0, 10.0, 10, [](double) { return 3.0; });
    CHECK_THAT(fit_decay_rate(flat, 1.0, 10.0).slope, WithinAbs(0.0, 1e-14));

    CHECK_THROWS_AS(fit_decay_rate(series(1.0, 10.0, 7, [](double) { return 1.0; }), 1.0, 10.0),
                    DomainError);
    CHECK_THROWS_AS(fit_decay_rate(series(1.0, 10.0, 9, [](double) { return -1.0; }), 1.0, 10.0),
                    DomainError);
    CHECK_THROWS_AS(fit_decay_rate(exact, 10.0, 1.0), DomainError);
}

TEST_CASE("envelope fit removes the oscillation", "[rates]") {
    std::vector<SeriesPoint> pts;
    for (double t = 10.0; t <= 1000.0; t += 0.05) {
        pts.push_back({t, std::pow(t, -0.75) * (1.2 + std::sin(3.0 * t))});
    }
    const auto f = fit_envelope_rate(pts, 10.0, 1000.0, 2.0 * M_PI / 3.0);
    CHECK_THAT(f.slope, WithinAbs(-0.75, 0.01));
}

TEST_CASE("optimality bands", "[rates]") {
    const auto exact = series(1.0, 1e3, 12, [](double t) { return 2.0 * std::pow(t, -1.5); });
    const auto b = optimality_band(exact, -1.5, 1.0, 1e3);
    CHECK_THAT(b.m, WithinRel(2.0, 1e-12));
    CHECK_THAT(b.ratio(), WithinRel(1.0, 1e-12));

    ModelParams p;
    p.b = 1.5;
    const auto prof = series(1e2, 1e4, 12, [&](double t) {
        return hs_norm_profile(t, {0.0, 2, 0}, ProfileKind::AnomalousDiffusion, 1.0, p);
    });
    CHECK(optimality_band(prof, -0.5, 1e2, 1e4).ratio() <= 1.5);

    // Negative control: a wrong exponent makes the band widen with the window.
    const auto wide = series(1.0, 1e4, 16, [](double t) { return std::pow(t, -0.5); });
    const double r1 = optimality_band(wide, -0.6, 1.0, 1e2).ratio();
    const double r2 = optimality_band(wide, -0.6, 1.0, 1e4).ratio();
    CHECK(r2 > r1 * 1.5);
}

TEST_CASE("rate table CSV", "[rates]") {
    const std::string csv = rate_table_csv({{0.0, 2, 0, 0.0}, {0.75, 2, 1, 1.0}});
    std::istringstream is(csv);
    std::string header, row1, row2, extra;
    std::getline(is, header);
    std::getline(is, row1);
    std::getline(is, row2);
    CHECK(header == "alpha[1],n[1],j[1],sigma[1],variant,exponent[1],within_hypotheses");
    CHECK(row1 == "0,2,0,0,solution,-0.5,1");
    CHECK(row2.substr(row2.size() - 2) == ",0");
    CHECK_FALSE(std::getline(is, extra));
    const auto l = log_spaced(1.0, 100.0, 3);
    REQUIRE(l.size() == 3);
    CHECK_THAT(l[1], WithinRel(10.0, 1e-14));
    CHECK(l.back() == 100.0);
}
