#include "twdp/asep_exact.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace twdp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double clamp_probability(double v, bool converged) {
    if (!converged) return v;
    if (v < 0.0 && v > -1e-12) return 0.0;
    if (v > 1.0 && v < 1.0 + 1e-12) return 1.0;
    return v;
}

// Common outer m-series: sum_m (K/(1+G^2))^m 2F1(-m,-m;1;G^2)/m! * bracket(m),
// scaled by pref. The alternating sign lives inside bracket. Weights are
// assembled in log space; truncation is the three-consecutive-small rule.
AsepResult outer_series(const TwdpParams& params, double pref,
                        const SeriesConfig& cfg,
                        const std::function<double(int)>& bracket) {
    params.validate();
    const double k = params.k_factor;
    const double g2 = params.gamma_ratio * params.gamma_ratio;
    const double log_kk = k > 0.0 ? std::log(k / (1.0 + g2)) : 0.0;

    AsepResult out;
    double sum = 0.0;
    int small_run = 0;
    for (int m = 0; m < cfg.max_terms_m; ++m) {
        if (k == 0.0 && m > 0) {
            out.converged = true;  // series terminates at m = 0
            break;
        }
        const double w = std::exp(m * log_kk - std::lgamma(m + 1.0)) *
                         gauss_2f1_poly(m, g2);
        const double term = w * bracket(m);
        sum += term;
        out.terms_used = m + 1;
        out.trunc_err_est = std::fabs(term * pref);
        if (std::fabs(term) < cfg.rel_tol * std::fabs(sum)) {
            if (++small_run >= 3) {
                out.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    out.value = clamp_probability(pref * sum, out.converged);
    if (!out.converged)
        throw ConvergenceError("ASEP outer m-series did not converge",
                               pref * sum);
    return out;
}

}  // namespace

double calI(double a, double A, double theta_upper, int m,
            const EvalConfig& cfg) {
    if (!(a > 0.0) || !(A > 0.0))
        throw std::domain_error("calI requires a > 0 and A > 0");
    if (!(theta_upper > 0.0 && theta_upper <= kPi / 2.0 + 1e-12))
        throw std::domain_error("calI requires theta in (0, pi/2]");
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double aA2 = a * A * A;
    const double s = std::sin(theta_upper);
    const double S = s * s;
    if (std::fabs(theta_upper - kPi / 2.0) < 1e-12)
        return sign * kPi / (2.0 * aA2) *
               gauss_2f1(1.5, m + 1.0, 2.0, -2.0 / aA2, cfg);
    return sign * (2.0 / 3.0) * S * s / aA2 *
           appell_f1(1.5, m + 1.0, 0.5, 2.5, -2.0 * S / aA2, S, cfg);
}

AsepResult asep_rqam(const TwdpParams& params, int m_i, int m_q, double beta,
                     const SeriesConfig& cfg) {
    const RqamConstants c(m_i, m_q, beta);
    const double a = params.avg_snr / (1.0 + params.k_factor);
    const double psi = std::atan2(c.A_q, c.A_i);
    EvalConfig ec;
    auto bracket = [&](int m) {
        double v = c.a_i * calI(a, c.A_i, kPi / 2.0, m, ec);
        if (m_q > 1) {
            v += c.a_q * calI(a, c.A_q, kPi / 2.0, m, ec);
            v -= kPi / 2.0 * c.a_i * c.a_q *
                 (calI(a, c.A_i, kPi / 2.0 - psi, m, ec) +
                  calI(a, c.A_q, psi, m, ec));
        }
        return v;
    };
    return outer_series(params, 1.0, cfg, bracket);
}

AsepResult asep_sqam(const TwdpParams& params, int m, const SeriesConfig& cfg) {
    const int root = static_cast<int>(std::lround(std::sqrt(double(m))));
    if (m < 4 || root * root != m)
        throw std::domain_error("asep_sqam: m must be a perfect square >= 4");
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    const double rm = std::sqrt(double(m));
    const double z2f1 = -2.0 * (k + 1.0) * (m - 1.0) / (3.0 * g0);
    const double zf1 = -(k + 1.0) * (m - 1.0) / (3.0 * g0);
    const double pref =
        2.0 / kPi * (1.0 + k) / g0 * (m - 1.0) / 9.0 * (1.0 - 1.0 / rm);
    EvalConfig ec;
    auto bracket = [&](int mm) {
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign *
               (3.0 * kPi * gauss_2f1(1.5, mm + 1.0, 2.0, z2f1, ec) -
                std::sqrt(2.0) * (1.0 - 1.0 / rm) *
                    appell_f1(1.5, 0.5, mm + 1.0, 2.5, 0.5, zf1, ec));
    };
    return outer_series(params, pref, cfg, bracket);
}

AsepResult asep_ask(const TwdpParams& params, int m, const SeriesConfig& cfg) {
    if (m < 2) throw std::domain_error("asep_ask: m must be >= 2");
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    const double z = -(k + 1.0) * (double(m) * m - 1.0) / (3.0 * g0);
    const double pref = (1.0 + k) / g0 * (double(m) * m - 1.0) * (m - 1.0) /
                        (6.0 * m);
    EvalConfig ec;
    auto bracket = [&](int mm) {
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign * gauss_2f1(1.5, mm + 1.0, 2.0, z, ec);
    };
    return outer_series(params, pref, cfg, bracket);
}

AsepResult asep_qpsk(const TwdpParams& params, const SeriesConfig& cfg) {
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    const double z2f1 = -2.0 * (k + 1.0) / g0;
    const double zf1 = -(k + 1.0) / g0;
    const double pref = (1.0 + k) / (3.0 * kPi * g0);
    EvalConfig ec;
    auto bracket = [&](int mm) {
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign *
               (3.0 * kPi * gauss_2f1(1.5, mm + 1.0, 2.0, z2f1, ec) -
                1.0 / std::sqrt(2.0) *
                    appell_f1(1.5, 0.5, mm + 1.0, 2.5, 0.5, zf1, ec));
    };
    return outer_series(params, pref, cfg, bracket);
}

AsepResult asep_bpsk(const TwdpParams& params, const SeriesConfig& cfg) {
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    const double z = -(k + 1.0) / g0;
    EvalConfig ec;
    auto bracket = [&](int mm) {
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign * gauss_2f1(1.5, mm + 1.0, 2.0, z, ec);
    };
    return outer_series(params, (1.0 + k) / (4.0 * g0), cfg, bracket);
}

AsepResult asep_dpsk(const TwdpParams& params, int m, const SeriesConfig& cfg) {
    if (m < 2) throw std::domain_error("asep_dpsk: m must be >= 2");
    params.validate();
    const double k = params.k_factor;
    const double g0 = params.avg_snr;
    const double b = std::cos(kPi / m);
    const double sin2 = 1.0 - b * b;  // sin^2(pi/M)
    const double denom = 1.0 + k + g0 * sin2;
    const double big_a = g0 * sin2 / denom;
    const double cf = -(k + 1.0) * b / denom;     // inner p-series base
    EvalConfig ec;

    // Angular cosine moments (1/pi) int_0^{(1-1/M)pi} cos^p; m-independent,
    // cached across the outer loop.
    std::vector<double> cp_cache;
    auto cp = [&](int p) {
        while (static_cast<int>(cp_cache.size()) <= p) {
            const int q = static_cast<int>(cp_cache.size());
            double v = std::exp(std::lgamma((q + 1.0) / 2.0) -
                                std::lgamma((q + 2.0) / 2.0)) /
                       (2.0 * std::sqrt(kPi));
            if (b != 0.0) {
                const double powb = std::pow(-b, q + 1.0);
                v -= powb / (kPi * (q + 1.0)) *
                     gauss_2f1(0.5, (q + 1.0) / 2.0, (q + 3.0) / 2.0,
                               b * b, ec);
            }
            cp_cache.push_back(v);
        }
        return cp_cache[p];
    };

    // Terms behave like binom(mm+p, p) |cf|^p: they grow until
    // p ~ |cf|/(1-|cf|) (mm+1) and decay geometrically after, so the
    // smallness test is only armed past that horizon (|cf| < 1 always, so
    // the series converges; max_terms_p is the only failure mode).
    const double acf = std::fabs(cf);
    // Inner truncation error is amplified by the cancellation in the
    // alternating outer series (roughly e^K), so the inner sum is pushed
    // well below the outer tolerance.
    const double inner_tol = std::max(cfg.rel_tol * 1e-4, 1e-15);
    auto inner = [&](int mm) {
        const int horizon =
            static_cast<int>(acf / (1.0 - acf) * (mm + 1.0)) + 1;
        double bc = 1.0;  // binom(mm+p, p) * cf^p
        double sum = 0.0;
        int small_run = 0;
        for (int p = 0; p < cfg.max_terms_p; ++p) {
            const double ratio = (mm + p == 0) ? 1.0 : double(mm) / (mm + p);
            const double term = bc * cp(p) * (ratio - big_a);
            sum += term;
            if (p > horizon &&
                std::fabs(term) < inner_tol * std::fabs(sum)) {
                if (++small_run >= 3) return sum;
            } else {
                small_run = 0;
            }
            bc *= cf * (mm + p + 1.0) / (p + 1.0);
        }
        throw ConvergenceError("DPSK inner p-series did not converge", sum);
    };

    auto bracket = [&](int mm) {
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(big_a, mm) * inner(mm);
    };
    return outer_series(params, 1.0, cfg, bracket);
}

AsepResult asep_exact(const TwdpParams& params, const ModulationScheme& mod,
                      const SeriesConfig& cfg) {
    switch (mod.kind) {
        case ModulationScheme::Kind::Rqam:
            return asep_rqam(params, mod.m_i, mod.m_q, mod.beta, cfg);
        case ModulationScheme::Kind::Sqam:
            return asep_sqam(params, mod.m, cfg);
        case ModulationScheme::Kind::Ask:
            return asep_ask(params, mod.m, cfg);
        case ModulationScheme::Kind::Qpsk:
            return asep_qpsk(params, cfg);
        case ModulationScheme::Kind::Bpsk:
            return asep_bpsk(params, cfg);
        case ModulationScheme::Kind::Dpsk:
            return asep_dpsk(params, mod.m, cfg);
    }
    throw std::logic_error("asep_exact: unknown scheme");
}

}  // namespace twdp
