#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "twdp/asep_exact.hpp"
#include "twdp/oracle.hpp"

using namespace twdp;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("calI closed form vs defining-integral quadrature") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 5.0);
    std::uniform_real_distribution<double> uA(0.2, 3.0);
    std::uniform_real_distribution<double> ut(0.1, kPi / 2.0);
    std::uniform_int_distribution<int> um(0, 20);
    for (int trial = 0; trial < 60; ++trial) {
        const double a = ua(rng), A = uA(rng), t = ut(rng);
        const int m = um(rng);
        const double cf = calI(a, A, t, m);
        const double qd = calI_quadrature(a, A, t, m);
        CHECK(cf == doctest::Approx(qd).epsilon(1e-8));
    }
    // The pi/2 2F1 dispatch is continuous with the generic F1 form just
    // below it (the F1 Euler integral cannot take y = sin^2 exactly 1).
    for (int m : {0, 1, 4}) {
        CHECK(calI(1.0, 1.3, kPi / 2.0, m) ==
              doctest::Approx(calI(1.0, 1.3, kPi / 2.0 - 1e-5, m))
                  .epsilon(1e-4));
    }
}

TEST_CASE("Rayleigh closed forms") {
    const double bpsk10 = 0.5 * (1.0 - std::sqrt(10.0 / 11.0));
    CHECK(asep_bpsk({0.0, 0.0, 10.0}).value ==
          doctest::Approx(bpsk10).epsilon(1e-10));
    CHECK(asep_rqam({0.0, 0.5, 10.0}, 2, 1, 1.0).value ==
          doctest::Approx(bpsk10).epsilon(1e-10));
    CHECK(asep_dpsk({0.0, 0.0, 10.0}, 2).value ==
          doctest::Approx(1.0 / 22.0).epsilon(1e-10));
}

TEST_CASE("special-case collapses") {
    // 1e-10 where the alternating outer series is well conditioned; at
    // large K with high SNR the independent evaluations can only agree to
    // the roundoff floor eps * (sum of |terms|) / |result|, bounded by
    // eps * (K+1)/g0 * e^K I0(2 G K/(G^2+1)) / value.
    for (double k : {0.0, 5.0, 10.0}) {
        for (double g : {0.0, 0.5, 1.0}) {
            for (double g0 : {1.0, 100.0, 1e4}) {
                const TwdpParams p{k, g, g0};
                const double bpsk = asep_bpsk(p).value;
                const double qpsk = asep_qpsk(p).value;
                const double z = 2.0 * g * k / (g * g + 1.0);
                const double amp = (k + 1.0) / g0 * bessel_i_scaled(0, z) *
                                   std::exp(z + k);
                auto tol = [&](double v) {
                    return std::max(1e-10, 64.0 * 2.22e-16 * amp / v);
                };
                CHECK(rel(asep_rqam(p, 2, 1, 1.0).value, bpsk) < tol(bpsk));
                CHECK(rel(asep_ask(p, 2).value, bpsk) < tol(bpsk));
                CHECK(rel(asep_rqam(p, 2, 2, 1.0).value, qpsk) < tol(qpsk));
                CHECK(rel(asep_sqam(p, 4).value, qpsk) < tol(qpsk));
            }
        }
    }
}

TEST_CASE("agreement with the MGF-integral quadrature oracle") {
    struct Cell {
        ModulationScheme mod;
        double k, g, g0;
    };
    const Cell cells[] = {
        {ModulationScheme::rqam(4, 2, 1.0), 10.0, 0.5, 100.0},
        {ModulationScheme::rqam(4, 2, 0.5), 10.0, 1.0, 1.0},
        {ModulationScheme::rqam(4, 2, 2.0), 5.0, 0.5, 1e4},
        {ModulationScheme::sqam(16), 10.0, 0.5, 1000.0},
        {ModulationScheme::sqam(64), 10.0, 1.0, 10.0},
        {ModulationScheme::ask(4), 10.0, 1.0, 100.0},
        {ModulationScheme::ask(8), 0.0, 0.0, 10.0},
        {ModulationScheme::qpsk(), 5.0, 1.0, 100.0},
        {ModulationScheme::bpsk(), 10.0, 1.0, 1e4},
        {ModulationScheme::dpsk(2), 10.0, 0.5, 100.0},
        {ModulationScheme::dpsk(8), 10.0, 1.0, 100.0},
    };
    for (const auto& c : cells) {
        const TwdpParams p{c.k, c.g, c.g0};
        const double ex = asep_exact(p, c.mod).value;
        const double orc = asep_quadrature(p, c.mod);
        CHECK(rel(ex, orc) < 1e-6);
    }
}

TEST_CASE("monotone decreasing in SNR, nondecreasing in Gamma") {
    const ModulationScheme mods[] = {
        ModulationScheme::rqam(4, 2, 1.0), ModulationScheme::sqam(16),
        ModulationScheme::ask(4), ModulationScheme::bpsk(),
        ModulationScheme::dpsk(4)};
    for (const auto& mod : mods) {
        for (double k : {5.0, 10.0}) {
            double prev = 1.0;
            for (double g0 : {10.0, 100.0, 1000.0, 1e4}) {
                const double v = asep_exact({k, 0.5, g0}, mod).value;
                CHECK(v > 0.0);
                CHECK(v < prev);
                prev = v;
            }
            for (double g0 : {10.0, 100.0, 1e4}) {
                double gprev = 0.0;
                for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    const double v = asep_exact({k, g, g0}, mod).value;
                    CHECK(v >= gprev);
                    gprev = v;
                }
            }
        }
    }
}

TEST_CASE("K = 0 is Rayleigh regardless of Gamma") {
    const ModulationScheme mods[] = {
        ModulationScheme::rqam(4, 2, 0.5), ModulationScheme::sqam(16),
        ModulationScheme::ask(8), ModulationScheme::qpsk(),
        ModulationScheme::bpsk(), ModulationScheme::dpsk(8)};
    for (const auto& mod : mods) {
        const double base = asep_exact({0.0, 0.0, 50.0}, mod).value;
        for (double g : {0.25, 0.5, 1.0}) {
            CHECK(rel(asep_exact({0.0, g, 50.0}, mod).value, base) < 1e-12);
        }
    }
}

TEST_CASE("DPSK value unchanged under Gamma <-> Delta round trip") {
    const TwdpParams p{10.0, 0.6, 100.0};
    const double direct = asep_dpsk(p, 2).value;
    const double g2 = gamma_from_delta(delta_from_gamma(p.gamma_ratio));
    CHECK(asep_dpsk({p.k_factor, g2, p.avg_snr}, 2).value ==
          doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("diagnostics populated and result clamped to [0,1]") {
    const auto r = asep_bpsk({10.0, 1.0, 100.0});
    CHECK(r.converged);
    CHECK(r.terms_used > 5);
    CHECK(r.trunc_err_est >= 0.0);
    CHECK(r.value >= 0.0);
    CHECK(r.value <= 1.0);
    CHECK_THROWS_AS(asep_ask({1.0, 0.0, 10.0}, 1), std::domain_error);
    CHECK_THROWS_AS(asep_sqam({1.0, 0.0, 10.0}, 8), std::domain_error);
    CHECK_THROWS_AS((asep_bpsk({-1.0, 0.0, 10.0})), std::domain_error);
}
