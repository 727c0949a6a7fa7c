#ifndef TWDP_ORACLE_HPP
#define TWDP_ORACLE_HPP

#include "twdp/channel.hpp"
#include "twdp/modulation.hpp"
#include "twdp/quadrature.hpp"

namespace twdp {

// Independent verification oracles: direct adaptive quadrature of the
// MGF-form ASEP integrals. These consume only snr_mgf and elementary
// functions; no code is shared with the exact-series module.

// Four-integral RQAM form with M evaluated at -A^2/(2 sin^2 theta).
double rqam_asep_quadrature(const TwdpParams& params, int m_i, int m_q,
                            double beta, const QuadConfig& qcfg = {});

// (1/pi) int_0^{(1-1/M)pi} M(-sin^2(pi/M)/(1 + cos(pi/M) cos theta)).
double dpsk_asep_quadrature(const TwdpParams& params, int m,
                            const QuadConfig& qcfg = {});

// Standard M-PSK single integral over [0, (M-1)pi/M] at
// s = -sin^2(pi/M)/sin^2(theta).
double mpsk_asep_quadrature(const TwdpParams& params, int m,
                            const QuadConfig& qcfg = {});

// Direct quadrature of the defining integral behind calI.
double calI_quadrature(double a, double A, double theta_upper, int m,
                       const QuadConfig& qcfg = {});

// Scheme dispatch (coherent schemes route through the RQAM form).
double asep_quadrature(const TwdpParams& params, const ModulationScheme& mod,
                       const QuadConfig& qcfg = {});

}  // namespace twdp

#endif
