#include "twdp/specfun.hpp"

#include <cmath>
#include <limits>

#include "twdp/quadrature.hpp"

namespace twdp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_nonpos_int(double x) {
    return x <= 0.0 && std::fabs(x - std::round(x)) < 1e-12;
}

// ln |Gamma(x)| with sign, defined for non-integer negative x as well.
struct SignedLog {
    double log;
    int sign;
};

SignedLog lgamma_signed(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    if (is_nonpos_int(x))
        return {std::numeric_limits<double>::infinity(), 0};
    // Gamma alternates sign on (-n-1, -n).
    const int flips = static_cast<int>(std::floor(-x)) + 1;
    return {std::lgamma(x), flips % 2 == 0 ? 1 : -1};
}

// Direct power series; terminates on its own when a or b is a nonpositive
// integer, otherwise requires |z| < 1.
double series_2f1(double a, double b, double c, double z,
                  const EvalConfig& cfg) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::fabs(term) < cfg.rel_tol * std::fabs(sum) && n > 2)
            return sum;
    }
    throw ConvergenceError("2F1 series did not converge", sum);
}

double hyp2f1_impl(double a, double b, double c, double z,
                   const EvalConfig& cfg);

// Linear transformation z -> 1-z, valid when c-a-b is not an integer.
double transform_1mz(double a, double b, double c, double z,
                     const EvalConfig& cfg) {
    const double s = c - a - b;
    const double w = 1.0 - z;
    const SignedLog lc = lgamma_signed(c);
    const SignedLog n1 = lgamma_signed(s);
    const SignedLog d1a = lgamma_signed(c - a);
    const SignedLog d1b = lgamma_signed(c - b);
    const SignedLog n2 = lgamma_signed(-s);
    const SignedLog d2a = lgamma_signed(a);
    const SignedLog d2b = lgamma_signed(b);

    double out = 0.0;
    if (d1a.sign != 0 && d1b.sign != 0) {
        const double g1 = std::exp(lc.log + n1.log - d1a.log - d1b.log);
        const int s1 = lc.sign * n1.sign * d1a.sign * d1b.sign;
        out += s1 * g1 * series_2f1(a, b, a + b - c + 1.0, w, cfg);
    }
    if (d2a.sign != 0 && d2b.sign != 0) {
        const double g2 = std::exp(lc.log + n2.log - d2a.log - d2b.log);
        const int s2 = lc.sign * n2.sign * d2a.sign * d2b.sign;
        out += s2 * g2 * std::pow(w, s) *
               series_2f1(c - a, c - b, s + 1.0, w, cfg);
    }
    return out;
}

double hyp2f1_impl(double a, double b, double c, double z,
                   const EvalConfig& cfg) {
    if (z == 0.0) return 1.0;
    if (is_nonpos_int(a) || is_nonpos_int(b))
        return series_2f1(a, b, c, z, cfg);  // terminating polynomial
    if (z < 0.0) {
        // Euler transform first when it terminates: for z < 0 the resulting
        // polynomial has all-positive terms (both (c-a-or-b)_k and z^k
        // alternate), unlike the Pfaff polynomial at z/(z-1) near one, which
        // alternates and cancels catastrophically for large degree.
        if (is_nonpos_int(c - a) || is_nonpos_int(c - b))
            return std::pow(1.0 - z, c - a - b) *
                   series_2f1(c - a, c - b, c, z, cfg);
        // Pfaff maps z into (0,1).
        return std::pow(1.0 - z, -a) *
               hyp2f1_impl(a, c - b, c, z / (z - 1.0), cfg);
    }
    const double s = c - a - b;
    if (z > 0.6 && std::fabs(s - std::round(s)) > 1e-8)
        return transform_1mz(a, b, c, z, cfg);
    return series_2f1(a, b, c, z, cfg);
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma requires x > 0");
    return std::lgamma(x);
}

double bessel_i(int order, double x, const EvalConfig& cfg) {
    if (order < 0 || order > 10000)
        throw std::domain_error("bessel_i: unsupported order");
    if (x < 0.0 || !std::isfinite(x))
        throw std::domain_error("bessel_i: x must be finite and >= 0");
    if (x > 690.0)
        throw std::range_error("bessel_i: overflow, use bessel_i_scaled");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    // k = 0 term in log space so large orders stay representable.
    double term = std::exp(order * std::log(h) - std::lgamma(order + 1.0));
    double sum = term;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= h * h / ((k + 1.0) * (k + 1.0 + order));
        sum += term;
        if (term < cfg.rel_tol * sum) return sum;
    }
    throw ConvergenceError("bessel_i series did not converge", sum);
}

double bessel_i_scaled(int order, double x, const EvalConfig& cfg) {
    if (x < 0.0 || !std::isfinite(x))
        throw std::domain_error("bessel_i_scaled: x must be finite and >= 0");
    if (x <= 690.0) return std::exp(-x) * bessel_i(order, x, cfg);
    // Large-argument asymptotic expansion of e^{-x} I_m(x); summed to the
    // smallest term. Adequate for 4*order^2 << 8x.
    const double mu = 4.0 * order * order;
    double term = 1.0, sum = 1.0, prev = std::fabs(term);
    for (int k = 1; k <= 40; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        if (std::fabs(term) >= prev) break;
        sum += term;
        prev = std::fabs(term);
        if (prev < cfg.rel_tol * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

double gauss_2f1_poly(int m, double x) {
    if (m < 0) throw std::domain_error("gauss_2f1_poly: m must be >= 0");
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("gauss_2f1_poly: x must be in [0,1]");
    // sum_k [(-m)_k]^2 / ((1)_k k!) x^k, k = 0..m
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < m; ++k) {
        const double r = static_cast<double>(m - k) / (k + 1.0);
        term *= r * r * x;
        sum += term;
    }
    return sum;
}

double gauss_2f1(double a, double b, double c, double z,
                 const EvalConfig& cfg) {
    if (is_nonpos_int(c) && !(is_nonpos_int(a) && a >= c) &&
        !(is_nonpos_int(b) && b >= c))
        throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (z >= 1.0) throw std::domain_error("gauss_2f1 requires z < 1");
    return hyp2f1_impl(a, b, c, z, cfg);
}

double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const EvalConfig& cfg) {
    if (!(c > a && a > 0.0))
        throw std::domain_error("appell_f1 requires c > a > 0");
    if (x >= 1.0 || y >= 1.0)
        throw std::domain_error("appell_f1 requires x < 1 and y < 1");
    if (b1 == 0.0 || x == 0.0) return gauss_2f1(a, b2, c, y, cfg);
    if (b2 == 0.0 || y == 0.0) return gauss_2f1(a, b1, c, x, cfg);
    if (x == y) return gauss_2f1(a, b1 + b2, c, x, cfg);

    const double coef =
        std::exp(std::lgamma(c) - std::lgamma(a) - std::lgamma(c - a));
    const double pa = a - 1.0, pc = c - a - 1.0;
    auto integrand = [&](double t) {
        return std::pow(t, pa) * std::pow(1.0 - t, pc) *
               std::pow(1.0 - x * t, -b1) * std::pow(1.0 - y * t, -b2);
    };
    QuadConfig qc;
    qc.rel_tol = cfg.rel_tol;
    qc.abs_tol = 0.0;
    qc.max_depth = cfg.quad_max_depth;
    const QuadResult r = integrate(integrand, 0.0, 1.0, qc);
    if (!r.converged)
        throw ConvergenceError("appell_f1 quadrature did not converge",
                               coef * r.value);
    return coef * r.value;
}

}  // namespace twdp
