#include "twdp/oracle.hpp"

#include <cmath>

#include "twdp/specfun.hpp"

namespace twdp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Closed-form MGF: the m-series collapses to
//   (1+K)/(1+K-s g0) * exp(Kq) * I0(2 K Gamma q / (1+Gamma^2)),
// q = s g0 / (1+K-s g0). Independent of the series evaluator and free of
// the alternating cancellation the series suffers at large |s| g0, so the
// oracle stays accurate where the comparisons are hardest.
double mgf(const TwdpParams& params, double s) {
    if (s < -1e300) return 0.0;
    const double k = params.k_factor;
    const double g = params.gamma_ratio;
    const double denom = 1.0 + k - s * params.avg_snr;
    const double q = s * params.avg_snr / denom;
    const double z = 2.0 * k * g * std::fabs(q) / (1.0 + g * g);
    return (1.0 + k) / denom * bessel_i_scaled(0, z) * std::exp(z + k * q);
}

double check(const QuadResult& r, const char* what) {
    if (!r.converged)
        throw ConvergenceError(std::string(what) + ": quadrature failed",
                               r.value);
    return r.value;
}

}  // namespace

double rqam_asep_quadrature(const TwdpParams& params, int m_i, int m_q,
                            double beta, const QuadConfig& qcfg) {
    params.validate();
    const RqamConstants c(m_i, m_q, beta);
    auto craig = [&](double A2) {
        return [&params, A2](double theta) {
            const double s2 = std::sin(theta) * std::sin(theta);
            if (s2 <= 0.0) return 0.0;
            return mgf(params, -A2 / (2.0 * s2));
        };
    };
    double v = c.a_i *
               check(integrate(craig(c.A_i * c.A_i), 0.0, kPi / 2.0, qcfg),
                     "rqam oracle (I term)");
    if (m_q > 1) {
        const double psi = std::atan2(c.A_q, c.A_i);
        v += c.a_q *
             check(integrate(craig(c.A_q * c.A_q), 0.0, kPi / 2.0, qcfg),
                   "rqam oracle (Q term)");
        v -= kPi / 2.0 * c.a_i * c.a_q *
             (check(integrate(craig(c.A_i * c.A_i), 0.0, kPi / 2.0 - psi,
                              qcfg),
                    "rqam oracle (cross I)") +
              check(integrate(craig(c.A_q * c.A_q), 0.0, psi, qcfg),
                    "rqam oracle (cross Q)"));
    }
    return v;
}

double dpsk_asep_quadrature(const TwdpParams& params, int m,
                            const QuadConfig& qcfg) {
    params.validate();
    if (m < 2) throw std::domain_error("dpsk_asep_quadrature: m >= 2");
    const double b = std::cos(kPi / m);
    const double sin2 = 1.0 - b * b;
    auto f = [&](double theta) {
        return mgf(params, -sin2 / (1.0 + b * std::cos(theta)));
    };
    return check(integrate(f, 0.0, (1.0 - 1.0 / m) * kPi, qcfg),
                 "dpsk oracle") /
           kPi;
}

double mpsk_asep_quadrature(const TwdpParams& params, int m,
                            const QuadConfig& qcfg) {
    params.validate();
    if (m < 2) throw std::domain_error("mpsk_asep_quadrature: m >= 2");
    const double sin2 = std::sin(kPi / m) * std::sin(kPi / m);
    auto f = [&](double theta) {
        const double s2 = std::sin(theta) * std::sin(theta);
        if (s2 <= 0.0) return 0.0;
        return mgf(params, -sin2 / s2);
    };
    return check(integrate(f, 0.0, (m - 1.0) * kPi / m, qcfg),
                 "mpsk oracle") /
           kPi;
}

double calI_quadrature(double a, double A, double theta_upper, int m,
                       const QuadConfig& qcfg) {
    if (!(a > 0.0) || !(A > 0.0))
        throw std::domain_error("calI_quadrature requires a > 0, A > 0");
    if (theta_upper <= 0.0) return 0.0;
    auto f = [&](double theta) {
        const double s2 = std::sin(theta) * std::sin(theta);
        if (s2 <= 0.0) return 0.0;
        const double as = -a * A * A / (2.0 * s2);
        return std::pow(as / (1.0 - as), double(m)) / (1.0 - as);
    };
    return check(integrate(f, 0.0, theta_upper, qcfg), "calI oracle");
}

double asep_quadrature(const TwdpParams& params, const ModulationScheme& mod,
                       const QuadConfig& qcfg) {
    if (mod.kind == ModulationScheme::Kind::Dpsk)
        return dpsk_asep_quadrature(params, mod.m, qcfg);
    return rqam_asep_quadrature(params, mod.m_i, mod.m_q, mod.beta, qcfg);
}

}  // namespace twdp
