#ifndef TWDP_SIMULATOR_HPP
#define TWDP_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "twdp/channel.hpp"
#include "twdp/modulation.hpp"

namespace twdp {

struct SimConfig {
    std::uint64_t num_symbols = 100000;
    std::uint64_t seed = 1;
    std::uint32_t batch_size = 16384;
    bool fading = true;      // false: h = 1, AWGN-only calibration
    unsigned num_threads = 0;  // 0: hardware concurrency

    void validate() const;
};

struct SimEstimate {
    double ser = 0.0;
    double std_err = 0.0;
    std::uint64_t n_symbols = 0;
    std::uint64_t n_errors = 0;
};

// Unit-average-energy constellation with independent per-axis decision
// thresholds (coherent schemes) or an M-PSK alphabet (DPSK).
struct Constellation {
    ModulationScheme scheme;
    std::vector<double> levels_i;  // (2j+1-M_I) * delta_I
    std::vector<double> levels_q;
    double delta_i = 0.0;  // half decision distance, A_I/sqrt(2)
    double delta_q = 0.0;
    std::vector<std::complex<double>> points;  // flattened grid (or PSK ring)
};

Constellation build_constellation(const ModulationScheme& scheme);

// Monte-Carlo SER. Per coherent symbol the RNG stream order is: gain
// (Phi1, Phi2, two noise uniforms), symbol index, two AWGN uniforms. DPSK
// draws independent symbol pairs with the gain held fixed within a pair:
// gain, reference phase, information index, then AWGN for both symbols.
// Batches are seeded deterministically from (seed, batch index), so the
// result is bit-identical for a given config under any thread count.
SimEstimate run_ser(const TwdpParams& params, const ModulationScheme& scheme,
                    double snr, const SimConfig& cfg = {});

}  // namespace twdp

#endif
