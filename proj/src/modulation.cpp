#include "twdp/modulation.hpp"

namespace twdp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

RqamConstants::RqamConstants(int m_i, int m_q, double beta) {
    if (m_i < 1 || m_q < 1 || m_i * m_q < 2 || !(beta > 0.0))
        throw std::domain_error("RqamConstants: invalid RQAM parameters");
    const double denom = (double(m_i) * m_i - 1.0) +
                         beta * beta * (double(m_q) * m_q - 1.0);
    A_i = std::sqrt(6.0 / denom);
    A_q = beta * A_i;
    a_i = 2.0 / kPi * (m_i - 1.0) / m_i;
    a_q = 2.0 / kPi * (m_q - 1.0) / m_q;
}

std::string ModulationScheme::name() const {
    switch (kind) {
        case Kind::Rqam:
            return std::to_string(m_i) + "x" + std::to_string(m_q) +
                   "-RQAM(beta=" + std::to_string(beta) + ")";
        case Kind::Sqam:
            return std::to_string(m) + "-SQAM";
        case Kind::Ask:
            return std::to_string(m) + "-ASK";
        case Kind::Qpsk:
            return "QPSK";
        case Kind::Bpsk:
            return "BPSK";
        case Kind::Dpsk:
            return std::to_string(m) + "-DPSK";
    }
    return "?";
}

}  // namespace twdp
