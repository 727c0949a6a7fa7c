#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "twdp/channel.hpp"
#include "twdp/quadrature.hpp"
#include "twdp/specfun.hpp"

using namespace twdp;

TEST_CASE("component magnitudes") {
    {
        const auto c = component_magnitudes({10.0, 1.0, 1.0});
        CHECK(c.v1 == doctest::Approx(std::sqrt(5.0 / 11.0)).epsilon(1e-12));
        CHECK(c.v2 == doctest::Approx(c.v1).epsilon(1e-12));
        CHECK(c.sigma ==
              doctest::Approx(std::sqrt(1.0 / 22.0)).epsilon(1e-12));
    }
    {
        const auto c = component_magnitudes({0.0, 0.7, 1.0});
        CHECK(c.v1 == 0.0);
        CHECK(c.v2 == 0.0);
        CHECK(2.0 * c.sigma * c.sigma == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        const auto c = component_magnitudes({10.0, 0.0, 1.0});
        CHECK(c.v1 ==
              doctest::Approx(std::sqrt(10.0 / 11.0)).epsilon(1e-12));
        CHECK(c.v2 == 0.0);
    }
    // Power bookkeeping: K restored, total power = omega.
    for (double k : {0.5, 3.0, 20.0}) {
        for (double g : {0.0, 0.4, 1.0}) {
            for (double omega : {1.0, 2.5}) {
                const auto c = component_magnitudes({k, g, 1.0}, omega);
                const double diffuse = 2.0 * c.sigma * c.sigma;
                CHECK((c.v1 * c.v1 + c.v2 * c.v2) / diffuse ==
                      doctest::Approx(k).epsilon(1e-12));
                CHECK(c.v1 * c.v1 + c.v2 * c.v2 + diffuse ==
                      doctest::Approx(omega).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("delta <-> gamma conversions") {
    CHECK(delta_from_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_from_gamma(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(delta_from_gamma(0.5) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(gamma_from_delta(0.0) == 0.0);
    for (double g = 0.0; g <= 1.0; g += 0.05) {
        CHECK(gamma_from_delta(delta_from_gamma(g)) ==
              doctest::Approx(g).epsilon(1e-12));
    }
    CHECK_THROWS_AS(delta_from_gamma(1.5), std::domain_error);
    CHECK_THROWS_AS(gamma_from_delta(-0.1), std::domain_error);
}

TEST_CASE("envelope_pdf degenerate closed forms") {
    // K = 0: Rayleigh with 2 sigma^2 = 1.
    for (double r : {0.2, 1.0, 2.5}) {
        const double ray = 2.0 * r * std::exp(-r * r);
        CHECK(envelope_pdf({0.0, 0.3, 1.0}, 1.0, r).value ==
              doctest::Approx(ray).epsilon(1e-12));
    }
    CHECK(envelope_pdf({0.0, 0.0, 1.0}, 1.0, 1.0).value ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    // Gamma = 0: Rician.
    for (double k : {1.0, 5.0, 12.0}) {
        for (double r : {0.3, 1.0, 1.8}) {
            const double rice = 2.0 * r * (1.0 + k) *
                                std::exp(-k - (1.0 + k) * r * r) *
                                bessel_i(0, 2.0 * r * std::sqrt(k * (1 + k)));
            CHECK(envelope_pdf({k, 0.0, 1.0}, 1.0, r).value ==
                  doctest::Approx(rice).epsilon(1e-10));
        }
    }
}

TEST_CASE("envelope_pdf normalization") {
    for (double k : {0.0, 3.0, 10.0, 20.0}) {
        for (double g : {0.0, 0.5, 0.9, 1.0}) {
            auto f = [&](double r) {
                return envelope_pdf({k, g, 1.0}, 1.0, r).value;
            };
            // Quadrature tolerance sits above the series' own noise floor.
            QuadConfig qc;
            qc.rel_tol = 1e-9;
            qc.abs_tol = 1e-12;
            const QuadResult q = integrate(f, 0.0, 6.0, qc);
            REQUIRE(q.converged);
            CHECK(q.value == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("snr_mgf normalization, poles, Rayleigh and Rician forms") {
    CHECK(snr_mgf({7.0, 0.6, 3.0}, 0.0).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(snr_mgf({0.0, 0.0, 1.0}, -1.0).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(snr_mgf({1.0, 0.0, 10.0}, 1.0), std::domain_error);
    // Gamma = 0 reduces to the Rician MGF over a wide s range.
    for (double k : {1.0, 5.0, 10.0}) {
        for (double s : {-100.0, -20.0, -2.0, -0.1, 0.0}) {
            const double g0 = 1.0;
            const double rice = (1.0 + k) / (1.0 + k - s * g0) *
                                std::exp(k * s * g0 / (1.0 + k - s * g0));
            CHECK(snr_mgf({k, 0.0, g0}, s).value ==
                  doctest::Approx(rice).epsilon(1e-10));
        }
    }
    CHECK(snr_mgf({5.0, 0.0, 2.0}, -1.0).value ==
          doctest::Approx(0.75 * std::exp(-1.25)).epsilon(1e-12));
}

TEST_CASE("snr_mgf closed-form collapse of the m-series") {
    // sum_m 2F1(-m,-m;1;G^2) z^m / m! = e^{z(1+G^2)} I0(2 z G): the whole
    // series equals pref * e^{Kq} I0(2 K G q / (1+G^2)).
    for (double k : {0.0, 2.0, 8.0}) {
        for (double g : {0.0, 0.5, 1.0}) {
            for (double s : {-10.0, -1.0, -0.05}) {
                const double g0 = 1.7;
                const double denom = 1.0 + k - s * g0;
                const double q = s * g0 / denom;
                const double z = 2.0 * k * g * std::fabs(q) / (1.0 + g * g);
                const double ref = (1.0 + k) / denom *
                                   bessel_i_scaled(0, z) *
                                   std::exp(z + k * q);
                CHECK(snr_mgf({k, g, g0}, s).value ==
                      doctest::Approx(ref).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("snr_mgf Gamma-invariance at K = 0 and mean-SNR derivative") {
    const double base = snr_mgf({0.0, 0.0, 5.0}, -0.3).value;
    for (double g : {0.25, 0.5, 1.0}) {
        CHECK(snr_mgf({0.0, g, 5.0}, -0.3).value ==
              doctest::Approx(base).epsilon(1e-14));
    }
    for (double g0 : {0.5, 10.0, 200.0}) {
        const TwdpParams p{4.0, 0.7, g0};
        const double h = 1e-6 / g0;
        const double d =
            (snr_mgf(p, h).value - snr_mgf(p, -h).value) / (2.0 * h);
        CHECK(d == doctest::Approx(g0).epsilon(1e-5));
    }
}

TEST_CASE("sample_gain statistics and determinism") {
    std::mt19937_64 rng(12345);
    const TwdpParams p{10.0, 1.0, 1.0};
    const std::size_t n = 1000000;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum2 += std::norm(sample_gain(p, 1.0, rng));
    // E|h|^2 = 1; var(|h|^2) <= something O(1), 4 sigma window.
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.005));

    std::mt19937_64 a(99), b(99);
    for (int i = 0; i < 100; ++i) {
        const auto ga = sample_gain(p, 1.0, a);
        const auto gb = sample_gain(p, 1.0, b);
        CHECK(ga.real() == gb.real());
        CHECK(ga.imag() == gb.imag());
    }
}
