#include "twdp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace twdp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::complex<double> awgn(double sigma, std::mt19937_64& rng) {
    const double u1 = detail::canonical(rng);
    const double u2 = detail::canonical(rng);
    const double rad = sigma * std::sqrt(-2.0 * std::log1p(-u1));
    return {rad * std::cos(2.0 * kPi * u2), rad * std::sin(2.0 * kPi * u2)};
}

int draw_index(int n, std::mt19937_64& rng) {
    const int idx = static_cast<int>(detail::canonical(rng) * n);
    return std::min(idx, n - 1);
}

int nearest_level(double x, double delta, int n) {
    // levels are (2j+1-n)*delta, j = 0..n-1
    const int j = static_cast<int>(std::lround((x / delta + n - 1.0) / 2.0));
    return std::clamp(j, 0, n - 1);
}

std::uint64_t coherent_batch(const TwdpParams& params,
                             const Constellation& con, double noise_sigma,
                             std::uint64_t n, bool fading,
                             std::mt19937_64& rng) {
    const int mi = static_cast<int>(con.levels_i.size());
    const int mq = static_cast<int>(con.levels_q.size());
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const std::complex<double> h =
            fading ? sample_gain(params, 1.0, rng) : std::complex<double>{1.0};
        const int idx = draw_index(mi * mq, rng);
        const int ii = idx % mi;
        const int qq = idx / mi;
        const std::complex<double> s{con.levels_i[ii],
                                     mq > 1 ? con.levels_q[qq] : 0.0};
        const std::complex<double> z = (h * s + awgn(noise_sigma, rng)) / h;
        bool err = nearest_level(z.real(), con.delta_i, mi) != ii;
        if (mq > 1)
            err = err || nearest_level(z.imag(), con.delta_q, mq) != qq;
        errors += err ? 1 : 0;
    }
    return errors;
}

std::uint64_t dpsk_batch(const TwdpParams& params, int m, double noise_sigma,
                         std::uint64_t n, bool fading, std::mt19937_64& rng) {
    std::uint64_t errors = 0;
    const double step = 2.0 * kPi / m;
    for (std::uint64_t t = 0; t < n; ++t) {
        const std::complex<double> h =
            fading ? sample_gain(params, 1.0, rng) : std::complex<double>{1.0};
        const int ref = draw_index(m, rng);
        const int info = draw_index(m, rng);
        const std::complex<double> x0 = std::polar(1.0, step * ref);
        const std::complex<double> x1 =
            std::polar(1.0, step * (ref + info));
        const std::complex<double> y0 = h * x0 + awgn(noise_sigma, rng);
        const std::complex<double> y1 = h * x1 + awgn(noise_sigma, rng);
        const double d = std::arg(y1 * std::conj(y0));
        int det = static_cast<int>(std::lround(d / step)) % m;
        if (det < 0) det += m;
        errors += det != info ? 1 : 0;
    }
    return errors;
}

}  // namespace

void SimConfig::validate() const {
    if (num_symbols < 1)
        throw std::domain_error("SimConfig: num_symbols must be >= 1");
    if (batch_size < 1)
        throw std::domain_error("SimConfig: batch_size must be >= 1");
}

Constellation build_constellation(const ModulationScheme& scheme) {
    Constellation con{scheme, {}, {}, 0.0, 0.0, {}};
    if (scheme.kind == ModulationScheme::Kind::Dpsk) {
        for (int i = 0; i < scheme.m; ++i)
            con.points.push_back(std::polar(1.0, 2.0 * kPi * i / scheme.m));
        return con;
    }
    const RqamConstants c(scheme.m_i, scheme.m_q, scheme.beta);
    con.delta_i = c.A_i / std::sqrt(2.0);
    con.delta_q = c.A_q / std::sqrt(2.0);
    for (int j = 0; j < scheme.m_i; ++j)
        con.levels_i.push_back((2.0 * j + 1.0 - scheme.m_i) * con.delta_i);
    for (int j = 0; j < scheme.m_q; ++j)
        con.levels_q.push_back((2.0 * j + 1.0 - scheme.m_q) * con.delta_q);
    for (int q = 0; q < scheme.m_q; ++q)
        for (int i = 0; i < scheme.m_i; ++i)
            con.points.emplace_back(con.levels_i[i],
                                    scheme.m_q > 1 ? con.levels_q[q] : 0.0);
    return con;
}

SimEstimate run_ser(const TwdpParams& params, const ModulationScheme& scheme,
                    double snr, const SimConfig& cfg) {
    params.validate();
    cfg.validate();
    if (!(snr > 0.0)) throw std::domain_error("run_ser: snr must be > 0");
    const Constellation con = build_constellation(scheme);
    // E[|h|^2] = E[|s|^2] = 1, so N0 = 1/snr; per-dimension sigma below.
    const double noise_sigma = std::sqrt(0.5 / snr);

    const std::uint64_t n = cfg.num_symbols;
    const std::uint64_t n_batches = (n + cfg.batch_size - 1) / cfg.batch_size;
    unsigned n_threads = cfg.num_threads
                             ? cfg.num_threads
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(n_threads, n_batches));

    std::vector<std::uint64_t> errors(n_threads, 0);
    auto worker = [&](unsigned tid) {
        std::uint64_t acc = 0;
        for (std::uint64_t b = tid; b < n_batches; b += n_threads) {
            const std::uint64_t lo = b * cfg.batch_size;
            const std::uint64_t count = std::min<std::uint64_t>(
                cfg.batch_size, n - lo);
            std::mt19937_64 rng(splitmix64(cfg.seed ^ (b + 1)));
            if (scheme.kind == ModulationScheme::Kind::Dpsk)
                acc += dpsk_batch(params, scheme.m, noise_sigma, count,
                                  cfg.fading, rng);
            else
                acc += coherent_batch(params, con, noise_sigma, count,
                                      cfg.fading, rng);
        }
        errors[tid] = acc;
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    SimEstimate est;
    est.n_symbols = n;
    for (auto e : errors) est.n_errors += e;
    est.ser = static_cast<double>(est.n_errors) / static_cast<double>(n);
    est.std_err = std::sqrt(est.ser * (1.0 - est.ser) / static_cast<double>(n));
    return est;
}

}  // namespace twdp
