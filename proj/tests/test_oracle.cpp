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

TEST_CASE("Rayleigh closed forms through the quadrature path") {
    const double bpsk10 = 0.5 * (1.0 - std::sqrt(10.0 / 11.0));
    CHECK(rqam_asep_quadrature({0.0, 0.0, 10.0}, 2, 1, 1.0) ==
          doctest::Approx(bpsk10).epsilon(1e-9));
    CHECK(dpsk_asep_quadrature({0.0, 0.0, 10.0}, 2) ==
          doctest::Approx(1.0 / 22.0).epsilon(1e-9));
    CHECK(mpsk_asep_quadrature({0.0, 0.0, 10.0}, 2) ==
          doctest::Approx(bpsk10).epsilon(1e-9));
}

TEST_CASE("calI_quadrature basics") {
    CHECK(calI_quadrature(1.0, 1.0, 0.0, 0) == 0.0);
    // m = 0, theta = pi/2: integrand 1/(1-as) in (0,1), so value in
    // (0, pi/2).
    const double v = calI_quadrature(1.0, std::sqrt(2.0), kPi / 2.0, 0);
    CHECK(v > 0.0);
    CHECK(v < kPi / 2.0);
    CHECK_THROWS_AS(calI_quadrature(-1.0, 1.0, 1.0, 0), std::domain_error);
}

TEST_CASE("M-PSK oracle equals the BPSK/QPSK series") {
    for (double k : {0.0, 5.0, 10.0}) {
        for (double g : {0.0, 0.5, 1.0}) {
            for (double g0 : {1.0, 10.0, 100.0, 1e4}) {
                const TwdpParams p{k, g, g0};
                CHECK(rel(mpsk_asep_quadrature(p, 2),
                          asep_bpsk(p).value) < 1e-6);
                CHECK(rel(mpsk_asep_quadrature(p, 4),
                          asep_qpsk(p).value) < 1e-6);
            }
        }
    }
}

TEST_CASE("probability oracles stay in [0, 1]") {
    for (double k : {0.0, 10.0}) {
        for (double g0 : {0.1, 1.0, 1e4}) {
            const TwdpParams p{k, 1.0, g0};
            for (double v :
                 {rqam_asep_quadrature(p, 4, 2, 1.0),
                  dpsk_asep_quadrature(p, 8), mpsk_asep_quadrature(p, 4)}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("oracle dispatch routes by scheme") {
    const TwdpParams p{5.0, 0.5, 100.0};
    CHECK(asep_quadrature(p, ModulationScheme::sqam(16)) ==
          doctest::Approx(rqam_asep_quadrature(p, 4, 4, 1.0)).epsilon(1e-12));
    CHECK(asep_quadrature(p, ModulationScheme::dpsk(4)) ==
          doctest::Approx(dpsk_asep_quadrature(p, 4)).epsilon(1e-12));
}

TEST_CASE("DPSK oracle invariant under Gamma <-> Delta bijection") {
    const TwdpParams p{10.0, 1.0, 100.0};
    const double g2 = gamma_from_delta(delta_from_gamma(p.gamma_ratio));
    CHECK(dpsk_asep_quadrature({p.k_factor, g2, p.avg_snr}, 2) ==
          doctest::Approx(dpsk_asep_quadrature(p, 2)).epsilon(1e-12));
}

TEST_CASE("randomized calI cross-check (oracle side)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(0.1, 3.0);
    std::uniform_real_distribution<double> uA(0.3, 2.0);
    std::uniform_real_distribution<double> ut(0.2, kPi / 2.0);
    std::uniform_int_distribution<int> um(0, 12);
    for (int trial = 0; trial < 40; ++trial) {
        const double a = ua(rng), A = uA(rng), t = ut(rng);
        const int m = um(rng);
        CHECK(calI_quadrature(a, A, t, m) ==
              doctest::Approx(calI(a, A, t, m)).epsilon(1e-8));
    }
}
