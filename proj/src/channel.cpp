#include "twdp/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "twdp/quadrature.hpp"

namespace twdp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void TwdpParams::validate() const {
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
        throw std::domain_error("TwdpParams: k_factor must be >= 0");
    if (!(gamma_ratio >= 0.0 && gamma_ratio <= 1.0))
        throw std::domain_error("TwdpParams: gamma_ratio must be in [0,1]");
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
        throw std::domain_error("TwdpParams: avg_snr must be > 0");
}

ComponentMagnitudes component_magnitudes(const TwdpParams& params,
                                         double omega) {
    params.validate();
    if (!(omega > 0.0)) throw std::domain_error("omega must be > 0");
    const double k = params.k_factor;
    const double g = params.gamma_ratio;
    const double two_sigma_sq = omega / (1.0 + k);
    const double v1 = std::sqrt(two_sigma_sq * k / (1.0 + g * g));
    return {v1, g * v1, std::sqrt(0.5 * two_sigma_sq)};
}

double delta_from_gamma(double gamma_ratio) {
    if (!(gamma_ratio >= 0.0 && gamma_ratio <= 1.0))
        throw std::domain_error("delta_from_gamma: input outside [0,1]");
    return 2.0 * gamma_ratio / (gamma_ratio * gamma_ratio + 1.0);
}

double gamma_from_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::domain_error("gamma_from_delta: input outside [0,1]");
    if (delta == 0.0) return 0.0;
    // root of Gamma^2 - (2/Delta) Gamma + 1 that lies in [0,1]
    return (1.0 - std::sqrt(1.0 - delta * delta)) / delta;
}

SeriesValue envelope_pdf(const TwdpParams& params, double omega, double r,
                         const SeriesConfig& cfg) {
    params.validate();
    if (r < 0.0) throw std::domain_error("envelope_pdf: r must be >= 0");
    SeriesValue out;
    if (r == 0.0) {
        out.converged = true;
        return out;
    }
    const ComponentMagnitudes cm = component_magnitudes(params, omega);
    const double k = params.k_factor;
    const double g2 = params.gamma_ratio * params.gamma_ratio;
    const double sigma_sq = cm.sigma * cm.sigma;
    const double x1 = 2.0 * r * std::sqrt(k / (2.0 * sigma_sq) / (1.0 + g2));
    const double x2 = x1 * params.gamma_ratio;
    const double x3 = 2.0 * k * params.gamma_ratio / (1.0 + g2);
    // Work with exponentially scaled Bessels; the common exponent is folded
    // into the prefactor so large K stays representable.
    const double pref =
        r / sigma_sq *
        std::exp(-r * r / (2.0 * sigma_sq) - k + x1 + x2 + x3);

    double sum = 0.0;
    double abs_sum = 0.0;
    int small_run = 0;
    EvalConfig ec;
    for (int m = 0; m < cfg.max_terms_m; ++m) {
        const double eps_m = (m == 0) ? 1.0 : 2.0;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const double term = eps_m * sign * bessel_i_scaled(m, x1, ec) *
                            bessel_i_scaled(m, x2, ec) *
                            bessel_i_scaled(m, x3, ec);
        sum += term;
        abs_sum += std::fabs(term);
        out.terms_used = m + 1;
        out.trunc_err_est = std::fabs(term) * pref;
        // three consecutive small terms, guarding the alternating series
        if (std::fabs(term) < cfg.rel_tol * std::fabs(sum)) {
            if (++small_run >= 3) {
                out.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    // The alternating series cancels down to eps * sum|terms| at best; when
    // that floor swamps the requested tolerance (large K * Gamma), switch to
    // the Neumann addition-theorem form with an all-positive integrand:
    //   sum_m eps_m (-1)^m I_m(x1) I_m(x2) I_m(x3)
    //     = (1/pi) int_0^pi e^{x3 cos t} I0(sqrt(x1^2+x2^2-2 x1 x2 cos t)) dt.
    const double noise = 2.22e-16 * abs_sum;
    if (!out.converged || sum <= 0.0 || noise > cfg.rel_tol * sum) {
        const double e0 = -r * r / (2.0 * sigma_sq) - k;
        auto f = [&](double t) {
            const double ct = std::cos(t);
            const double gq = std::sqrt(std::max(
                0.0, x1 * x1 + x2 * x2 - 2.0 * x1 * x2 * ct));
            return std::exp(e0 + x3 * ct + gq) * bessel_i_scaled(0, gq, ec);
        };
        QuadConfig qc;
        qc.rel_tol = std::max(cfg.rel_tol, 1e-13);
        qc.abs_tol = 1e-300;
        const QuadResult q = integrate(f, 0.0, kPi, qc);
        if (!q.converged)
            throw ConvergenceError("envelope_pdf quadrature did not converge",
                                   r / sigma_sq / kPi * q.value);
        out.converged = true;
        out.value = r / sigma_sq / kPi * q.value;
        out.trunc_err_est = r / sigma_sq / kPi * q.error;
        return out;
    }
    out.value = pref * sum;
    return out;
}

SeriesValue snr_mgf(const TwdpParams& params, double s,
                    const SeriesConfig& cfg) {
    params.validate();
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    if (!(s * g0 < 1.0 + k))
        throw std::domain_error("snr_mgf: pole condition s*gamma0 < 1+K");
    SeriesValue out;
    const double denom = 1.0 + k - s * g0;
    const double q = s * g0 / denom;
    const double g2 = params.gamma_ratio * params.gamma_ratio;
    const double base = k / (1.0 + g2) * q;

    double term = 1.0;  // m = 0
    double sum = 0.0;
    double abs_sum = 0.0;
    int small_run = 0;
    for (int m = 0; m < cfg.max_terms_m; ++m) {
        if (m > 0) {
            if (base == 0.0) {
                out.converged = true;
                break;
            }
            term *= base / m;
        }
        const double contrib = term * gauss_2f1_poly(m, g2);
        sum += contrib;
        abs_sum += std::fabs(contrib);
        out.terms_used = m + 1;
        out.trunc_err_est = std::fabs(contrib);
        if (std::fabs(contrib) < cfg.rel_tol * std::fabs(sum)) {
            if (++small_run >= 3) {
                out.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    // At strongly negative s the alternating series cancels below its
    // roundoff floor; the sum collapses exactly (addition theorem of I0) to
    // e^{Kq} I0(2 K Gamma |q| / (1 + Gamma^2)), which is cancellation-free.
    if (!out.converged || sum <= 0.0 ||
        2.22e-16 * abs_sum > cfg.rel_tol * sum) {
        const double z = 2.0 * k * params.gamma_ratio * std::fabs(q) /
                         (1.0 + g2);
        out.converged = true;
        out.value = (1.0 + k) / denom * bessel_i_scaled(0, z) *
                    std::exp(z + k * q);
        out.trunc_err_est = 4.0 * 2.22e-16 * out.value;
        return out;
    }
    out.value = (1.0 + k) / denom * sum;
    out.trunc_err_est *= (1.0 + k) / std::fabs(denom);
    return out;
}

std::complex<double> sample_gain(const TwdpParams& params, double omega,
                                 std::mt19937_64& rng) {
    const ComponentMagnitudes cm = component_magnitudes(params, omega);
    const double phi1 = 2.0 * kPi * detail::canonical(rng);
    const double phi2 = 2.0 * kPi * detail::canonical(rng);
    const double u1 = detail::canonical(rng);
    const double u2 = detail::canonical(rng);
    const double rad = std::sqrt(-2.0 * std::log1p(-u1));
    const double n_re = rad * std::cos(2.0 * kPi * u2);
    const double n_im = rad * std::sin(2.0 * kPi * u2);
    return {cm.v1 * std::cos(phi1) + cm.v2 * std::cos(phi2) + cm.sigma * n_re,
            cm.v1 * std::sin(phi1) + cm.v2 * std::sin(phi2) + cm.sigma * n_im};
}

}  // namespace twdp
