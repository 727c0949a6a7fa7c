#ifndef TWDP_CHANNEL_HPP
#define TWDP_CHANNEL_HPP

#include <complex>
#include <random>

#include "twdp/specfun.hpp"

namespace twdp {

// TWDP channel in the (K, Gamma) parameterization: K is the specular to
// diffuse power ratio, Gamma = V2/V1 the specular magnitude ratio, avg_snr
// the mean SNR gamma_0 on a linear scale.
struct TwdpParams {
    double k_factor = 0.0;
    double gamma_ratio = 0.0;
    double avg_snr = 1.0;

    void validate() const;
};

struct ComponentMagnitudes {
    double v1;
    double v2;
    double sigma;  // diffuse per-dimension standard deviation
};

// Truncation policy for the infinite series. max_terms_m bounds the outer
// m-series; max_terms_p bounds the inner DPSK p-series (large M at low SNR
// needs tens of thousands of geometric-tail terms).
struct SeriesConfig {
    double rel_tol = 1e-10;
    int max_terms_m = 500;
    int max_terms_p = 100000;
};

struct SeriesValue {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double trunc_err_est = 0.0;
};

// V1, V2, sigma for total power omega: 2 sigma^2 = omega/(1+K),
// V1^2 = 2 sigma^2 K / (1 + Gamma^2), V2 = Gamma V1.
ComponentMagnitudes component_magnitudes(const TwdpParams& params,
                                         double omega = 1.0);

// Legacy parameter Delta = 2 Gamma / (Gamma^2 + 1) and its inverse (the
// root <= 1).
double delta_from_gamma(double gamma_ratio);
double gamma_from_delta(double delta);

// Exact envelope PDF, infinite series of triple Bessel products.
SeriesValue envelope_pdf(const TwdpParams& params, double omega, double r,
                         const SeriesConfig& cfg = {});

// Exact SNR MGF E[e^{s gamma}]; requires s * avg_snr < 1 + K.
SeriesValue snr_mgf(const TwdpParams& params, double s,
                    const SeriesConfig& cfg = {});

// One channel gain draw V1 e^{j Phi1} + V2 e^{j Phi2} + n. Stream order per
// draw is fixed: Phi1, Phi2, then the two diffuse Gaussians (Box-Muller
// from two further uniforms), so seeded runs are reproducible.
std::complex<double> sample_gain(const TwdpParams& params, double omega,
                                 std::mt19937_64& rng);

namespace detail {
// Uniform in [0,1) from the top 53 bits; fixed mapping, no library
// distribution involved.
inline double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace detail

}  // namespace twdp

#endif
