#ifndef TWDP_ASEP_ASYMPTOTIC_HPP
#define TWDP_ASEP_ASYMPTOTIC_HPP

#include "twdp/channel.hpp"
#include "twdp/modulation.hpp"

namespace twdp {

// High-SNR closed-form ASEP approximations. All coherent schemes share the
// factor (K+1)/gamma0 * e^{-K} I_0(2 Gamma K/(Gamma^2+1)), evaluated as a
// fused scaled product so K up to several hundred stays finite.

double asym_rqam(const TwdpParams& params, int m_i, int m_q, double beta);
double asym_sqam(const TwdpParams& params, int m);
double asym_ask(const TwdpParams& params, int m);
double asym_qpsk(const TwdpParams& params);
double asym_bpsk(const TwdpParams& params);
double asym_dpsk(const TwdpParams& params, int m);

double asep_asymptotic(const TwdpParams& params, const ModulationScheme& mod);

}  // namespace twdp

#endif
