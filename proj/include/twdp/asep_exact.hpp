#ifndef TWDP_ASEP_EXACT_HPP
#define TWDP_ASEP_EXACT_HPP

#include "twdp/channel.hpp"
#include "twdp/modulation.hpp"

namespace twdp {

struct AsepResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double trunc_err_est = 0.0;
};

// Closed form of the angular integral
//   I(a, A, theta) = int_0^theta (as/(1-as))^m / (1-as) d(phi),
//   s = -A^2/(2 sin^2 phi),
// via Appell F1, dispatching to the Gauss 2F1 special case at theta = pi/2.
double calI(double a, double A, double theta_upper, int m,
            const EvalConfig& cfg = {});

// Exact ASEP series, one per modulation row. Each evaluates its own
// published expression; the special-case collapses (RQAM(2,1,1) = BPSK and
// so on) are therefore genuine cross-checks, not delegation.
AsepResult asep_rqam(const TwdpParams& params, int m_i, int m_q, double beta,
                     const SeriesConfig& cfg = {});
AsepResult asep_sqam(const TwdpParams& params, int m,
                     const SeriesConfig& cfg = {});
AsepResult asep_ask(const TwdpParams& params, int m,
                    const SeriesConfig& cfg = {});
AsepResult asep_qpsk(const TwdpParams& params, const SeriesConfig& cfg = {});
AsepResult asep_bpsk(const TwdpParams& params, const SeriesConfig& cfg = {});
AsepResult asep_dpsk(const TwdpParams& params, int m,
                     const SeriesConfig& cfg = {});

// Dispatch on the scheme tag.
AsepResult asep_exact(const TwdpParams& params, const ModulationScheme& mod,
                      const SeriesConfig& cfg = {});

}  // namespace twdp

#endif
