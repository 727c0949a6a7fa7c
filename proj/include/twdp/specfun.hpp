#ifndef TWDP_SPECFUN_HPP
#define TWDP_SPECFUN_HPP

#include <stdexcept>
#include <string>

namespace twdp {

// Real-argument special-function kernel used by the ASEP series: modified
// Bessel I of integer order, log-Gamma, Gauss 2F1 and Appell F1.

struct EvalConfig {
    double rel_tol = 1e-12;
    int max_terms = 10000;
    int quad_max_depth = 40;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}
    double partial_value() const { return partial_; }

  private:
    double partial_;
};

// I_order(x), ascending power series. Supported for order <= 10^4 and x up
// to the e^x overflow scale (~700); larger x throws std::range_error.
double bessel_i(int order, double x, const EvalConfig& cfg = {});

// e^{-x} I_order(x); stays finite for x up to several hundred and beyond
// (asymptotic expansion past the series overflow scale).
double bessel_i_scaled(int order, double x, const EvalConfig& cfg = {});

// ln Gamma(x), x > 0.
double ln_gamma(double x);

// Terminating sum 2F1(-m, -m; 1; x) = sum_{k=0}^{m} [(m choose k)]^2 x^k
// ... written with Pochhammer symbols; exact finite polynomial, x in [0,1].
double gauss_2f1_poly(int m, double x);

// Gauss hypergeometric for real parameters and z < 1. Negative z is mapped
// into (0,1) with the Pfaff transformation; z near 1 uses the 1-z linear
// transformation when c-a-b is not an integer.
double gauss_2f1(double a, double b, double c, double z,
                 const EvalConfig& cfg = {});

// Appell F1(a; b1, b2; c; x, y) for c > a > 0 and x, y < 1, by adaptive
// quadrature of the one-dimensional Euler integral. b1 pairs with x.
double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const EvalConfig& cfg = {});

}  // namespace twdp

#endif
