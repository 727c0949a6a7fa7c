#ifndef TWDP_MODULATION_HPP
#define TWDP_MODULATION_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace twdp {

// Tagged union over the supported schemes. RQAM is the generic coherent
// scheme; SQAM/ASK/QPSK/BPSK are its special cases (kept as distinct tags
// so each uses its own published series); DPSK is differentially detected.
struct ModulationScheme {
    enum class Kind { Rqam, Sqam, Ask, Qpsk, Bpsk, Dpsk };

    Kind kind;
    int m_i = 0;        // RQAM in-phase order
    int m_q = 0;        // RQAM quadrature order
    double beta = 1.0;  // RQAM d_Q/d_I
    int m = 0;          // SQAM/ASK/DPSK order

    static ModulationScheme rqam(int m_i, int m_q, double beta = 1.0) {
        if (m_i < 1 || m_q < 1 || m_i * m_q < 2)
            throw std::domain_error("RQAM requires m_i*m_q >= 2");
        if (!(beta > 0.0)) throw std::domain_error("RQAM requires beta > 0");
        return {Kind::Rqam, m_i, m_q, beta, m_i * m_q};
    }
    static ModulationScheme sqam(int m) {
        const int root = static_cast<int>(std::lround(std::sqrt(double(m))));
        if (m < 4 || root * root != m)
            throw std::domain_error("SQAM requires a perfect square m >= 4");
        return {Kind::Sqam, root, root, 1.0, m};
    }
    static ModulationScheme ask(int m) {
        if (m < 2) throw std::domain_error("ASK requires m >= 2");
        return {Kind::Ask, m, 1, 1.0, m};
    }
    static ModulationScheme qpsk() { return {Kind::Qpsk, 2, 2, 1.0, 4}; }
    static ModulationScheme bpsk() { return {Kind::Bpsk, 2, 1, 1.0, 2}; }
    static ModulationScheme dpsk(int m) {
        if (m < 2) throw std::domain_error("DPSK requires m >= 2");
        return {Kind::Dpsk, 0, 0, 1.0, m};
    }

    bool coherent() const { return kind != Kind::Dpsk; }
    std::string name() const;
};

// Decision-distance geometry shared by the exact series, the asymptotics
// and the simulator: A_I = sqrt(6/((M_I^2-1)+beta^2(M_Q^2-1))), A_Q = beta
// A_I, a_I = (2/pi)(M_I-1)/M_I, a_Q likewise.
struct RqamConstants {
    double a_i, a_q;
    double A_i, A_q;

    RqamConstants(int m_i, int m_q, double beta);
};

}  // namespace twdp

#endif
