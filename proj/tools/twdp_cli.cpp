// twdp: ASEP sweeps, envelope PDF dumps and figure-data reproduction for
// the TWDP fading channel. Exit codes: 0 ok, 1 usage, 2 convergence, 3 I/O.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twdp/asep_asymptotic.hpp"
#include "twdp/asep_exact.hpp"
#include "twdp/channel.hpp"
#include "twdp/oracle.hpp"
#include "twdp/simulator.hpp"

using namespace twdp;

namespace {

// Single dB <-> linear utility; round-trips to 1e-12.
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct SnrRange {
    double start_db = 0.0, step_db = 5.0, stop_db = 40.0;

    static SnrRange parse(const std::string& s) {
        SnrRange r;
        char c1 = 0, c2 = 0;
        std::istringstream in(s);
        if (!(in >> r.start_db >> c1 >> r.step_db >> c2 >> r.stop_db) ||
            c1 != ':' || c2 != ':' || !in.eof())
            throw CLI::ValidationError("--snr", "expected start:step:stop");
        if (!(r.step_db > 0.0) || r.start_db > r.stop_db)
            throw CLI::ValidationError("--snr",
                                       "need step > 0 and start <= stop");
        return r;
    }
    std::vector<double> points() const {
        std::vector<double> p;
        for (double db = start_db; db <= stop_db + 1e-9; db += step_db)
            p.push_back(db);
        return p;
    }
};

struct ModFlags {
    std::string mod;
    int mi = 4, mq = 2;
    double beta = 1.0;
    int m = 0;

    ModulationScheme resolve() const {
        if (mod == "rqam") return ModulationScheme::rqam(mi, mq, beta);
        if (mod == "qpsk") return ModulationScheme::qpsk();
        if (mod == "bpsk") return ModulationScheme::bpsk();
        if (mod == "sqam" || mod == "ask" || mod == "dpsk") {
            if (m == 0)
                throw CLI::RequiredError("--m (for " + mod + ")");
            if (mod == "sqam") return ModulationScheme::sqam(m);
            if (mod == "ask") return ModulationScheme::ask(m);
            return ModulationScheme::dpsk(m);
        }
        throw CLI::ValidationError("--mod", "unknown scheme '" + mod + "'");
    }
};

struct Cell {
    double value = std::numeric_limits<double>::quiet_NaN();
    double std_err = 0.0;
    int terms_used = 0;
    double trunc_err_est = 0.0;
    std::string error;
};

struct Row {
    double snr_db = 0.0;
    std::map<std::string, Cell> cells;  // keyed by mode name
};

const std::vector<std::string> kModeOrder = {"exact", "asym", "sim",
                                             "oracle"};

Cell eval_cell(const std::string& mode, const TwdpParams& p,
               const ModulationScheme& scheme, std::uint64_t seed,
               std::uint64_t symbols) {
    Cell c;
    try {
        if (mode == "exact") {
            const AsepResult r = asep_exact(p, scheme);
            c.value = r.value;
            c.terms_used = r.terms_used;
            c.trunc_err_est = r.trunc_err_est;
        } else if (mode == "asym") {
            c.value = asep_asymptotic(p, scheme);
        } else if (mode == "oracle") {
            c.value = asep_quadrature(p, scheme);
        } else if (mode == "sim") {
            SimConfig cfg;
            cfg.num_symbols = symbols;
            cfg.seed = seed;
            const SimEstimate e = run_ser(p, scheme, p.avg_snr, cfg);
            c.value = e.ser;
            c.std_err = e.std_err;
        }
    } catch (const ConvergenceError& e) {
        c.error = e.what();
    }
    return c;
}

// Rows are computed on a worker pool and emitted in input order.
std::vector<Row> compute_rows(const std::vector<double>& snr_db,
                              const std::vector<std::string>& modes,
                              double k, double gamma,
                              const ModulationScheme& scheme,
                              std::uint64_t seed, std::uint64_t symbols) {
    std::vector<std::future<Row>> futs;
    futs.reserve(snr_db.size());
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        futs.push_back(std::async(std::launch::async, [&, i] {
            Row row;
            row.snr_db = snr_db[i];
            const TwdpParams p{k, gamma, db_to_linear(snr_db[i])};
            for (const auto& mode : modes)
                row.cells[mode] = eval_cell(mode, p, scheme,
                                            seed + 1000003 * i, symbols);
            return row;
        }));
    }
    std::vector<Row> rows;
    rows.reserve(futs.size());
    for (auto& f : futs) rows.push_back(f.get());
    return rows;
}

int open_output(const std::string& path, std::ofstream& file,
                std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return 0;
    }
    file.open(path);
    if (!file) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 3;
    }
    out = &file;
    return 0;
}

int emit_rows(std::ostream& os, const std::string& format,
              const std::vector<std::string>& header_comments,
              const std::vector<std::string>& modes,
              const std::vector<Row>& rows, bool verbose) {
    const bool has_sim =
        std::find(modes.begin(), modes.end(), "sim") != modes.end();
    int status = 0;
    int failed_cells = 0;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };

    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj;
            obj["snr_db"] = row.snr_db;
            for (const auto& mode : modes) {
                const Cell& c = row.cells.at(mode);
                if (c.error.empty())
                    obj[mode] = c.value;
                else {
                    obj[mode] = nullptr;
                    obj[mode + "_error"] = c.error;
                    ++failed_cells;
                }
                if (mode == "sim") obj["sim_stderr"] = c.std_err;
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << "\n";
    } else {
        for (const auto& c : header_comments) os << "# " << c << "\n";
        os << "snr_db";
        for (const auto& mode : modes) {
            os << "," << mode;
            if (mode == "sim") os << ",sim_stderr";
        }
        os << "\n";
        for (const auto& row : rows) {
            os << num(row.snr_db);
            for (const auto& mode : modes) {
                const Cell& c = row.cells.at(mode);
                os << "," << (c.error.empty() ? num(c.value) : "nan");
                if (!c.error.empty()) ++failed_cells;
                if (mode == "sim") os << "," << num(c.std_err);
            }
            os << "\n";
            for (const auto& mode : modes) {
                const Cell& c = row.cells.at(mode);
                if (!c.error.empty())
                    os << "# snr_db=" << num(row.snr_db) << " " << mode
                       << " failed: " << c.error << "\n";
                else if (verbose && mode == "exact")
                    os << "# snr_db=" << num(row.snr_db)
                       << " exact terms_used=" << c.terms_used
                       << " trunc_err_est=" << num(c.trunc_err_est) << "\n";
            }
        }
        if (failed_cells > 0)
            os << "# " << failed_cells << " cell(s) failed to converge\n";
    }
    if (failed_cells > 0) {
        std::cerr << "warning: " << failed_cells
                  << " cell(s) failed to converge\n";
        status = 2;
    }
    (void)has_sim;
    return status;
}

int cmd_sweep(const ModFlags& mf, double k, std::optional<double> gamma,
              std::optional<double> delta, const std::string& snr_spec,
              std::string modes_csv, std::uint64_t seed,
              std::uint64_t symbols, const std::string& out_path,
              const std::string& format, bool verbose) {
    const ModulationScheme scheme = mf.resolve();
    const SnrRange range = SnrRange::parse(snr_spec);

    if (gamma.has_value() == delta.has_value())
        throw CLI::ValidationError("--gamma",
                                   "exactly one of --gamma/--delta required");
    const double g = gamma ? *gamma : gamma_from_delta(*delta);

    std::vector<std::string> modes;
    for (const auto& mode : kModeOrder)
        if (("," + modes_csv + ",").find("," + mode + ",") !=
            std::string::npos)
            modes.push_back(mode);
    std::size_t n_req =
        std::count(modes_csv.begin(), modes_csv.end(), ',') + 1;
    if (modes.empty() || modes.size() != n_req)
        throw CLI::ValidationError(
            "--mode", "expected a comma-separated subset of "
                      "exact,asym,sim,oracle");

    const auto rows = compute_rows(range.points(), modes, k, g, scheme, seed,
                                   symbols);

    std::vector<std::string> comments = {
        "twdp sweep mod=" + scheme.name() + " k=" + std::to_string(k) +
        " gamma=" + std::to_string(g) +
        (delta ? " (from delta=" + std::to_string(*delta) + ")" : "")};
    if (std::find(modes.begin(), modes.end(), "sim") != modes.end())
        comments.push_back("sim seed=" + std::to_string(seed) +
                           " symbols=" + std::to_string(symbols));

    std::ofstream file;
    std::ostream* os = nullptr;
    if (int rc = open_output(out_path, file, os)) return rc;
    return emit_rows(*os, format, comments, modes, rows, verbose);
}

int cmd_pdf(double k, double gamma, double omega, double r_max, int n_points,
            const std::string& out_path) {
    const TwdpParams p{k, gamma, 1.0};
    std::vector<double> pdf(n_points);
    std::string err;
    for (int i = 0; i < n_points; ++i) {
        const double r = r_max * i / (n_points - 1.0);
        try {
            pdf[i] = envelope_pdf(p, omega, r).value;
        } catch (const ConvergenceError& e) {
            pdf[i] = std::numeric_limits<double>::quiet_NaN();
            err = e.what();
        }
    }
    double integral = 0.0;
    const double h = r_max / (n_points - 1.0);
    for (int i = 1; i < n_points; ++i)
        integral += 0.5 * (pdf[i - 1] + pdf[i]) * h;

    std::ofstream file;
    std::ostream* os = nullptr;
    if (int rc = open_output(out_path, file, os)) return rc;
    *os << "# twdp pdf k=" << k << " gamma=" << gamma << " omega=" << omega
        << "\n";
    *os << "r,pdf\n";
    char buf[64];
    for (int i = 0; i < n_points; ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g",
                      r_max * i / (n_points - 1.0), pdf[i]);
        *os << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "%.10g", integral);
    *os << "# trapezoid integral over [0, " << r_max << "] = " << buf << "\n";
    if (!err.empty()) {
        std::cerr << "warning: " << err << "\n";
        return 2;
    }
    return 0;
}

// Figure data: multi-column exact (and simulated / asymptotic) sweeps with
// a fixed, documented seed.
int cmd_figures(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create '" << dir << "'\n";
        return 3;
    }
    const std::uint64_t seed = 42;
    int status = 0;

    auto write_csv =
        [&](const std::string& name, const std::string& title,
            const std::vector<std::string>& cols,
            const std::vector<double>& snr,
            const std::function<double(const std::string&, double)>& value)
        -> int {
        std::ofstream os(fs::path(dir) / name);
        if (!os) {
            std::cerr << "error: cannot open '" << name << "'\n";
            return 3;
        }
        os << "# " << title << " (seed " << seed << ")\n";
        os << "snr_db";
        for (const auto& c : cols) os << "," << c;
        os << "\n";
        char buf[64];
        for (double db : snr) {
            std::snprintf(buf, sizeof buf, "%.10g", db);
            os << buf;
            for (const auto& c : cols) {
                std::snprintf(buf, sizeof buf, "%.10g", value(c, db));
                os << "," << buf;
            }
            os << "\n";
        }
        return 0;
    };

    std::vector<double> snr;
    for (double db = 0.0; db <= 40.0 + 1e-9; db += 5.0) snr.push_back(db);

    // Fig. 1(a-c): 4x2 RQAM, Gamma sweeps at fixed K and a K sweep, with
    // analytical and simulated columns.
    const auto mod42 = ModulationScheme::rqam(4, 2, 1.0);
    auto rqam_cell = [&](double k, double g, double db, bool sim) {
        const TwdpParams p{k, g, db_to_linear(db)};
        if (!sim) return asep_exact(p, mod42).value;
        SimConfig cfg;
        cfg.num_symbols = 100000;
        cfg.seed = seed + std::uint64_t(db * 1000 + g * 100 + k);
        return run_ser(p, mod42, p.avg_snr, cfg).ser;
    };
    for (const auto& [name, k_fix] :
         std::vector<std::pair<std::string, double>>{{"fig1a.csv", 10.0},
                                                     {"fig1c.csv", 5.0}}) {
        std::vector<std::string> cols;
        for (double g : {0.0, 0.25, 0.5, 1.0}) {
            cols.push_back("exact_g" + std::to_string(g).substr(0, 4));
            cols.push_back("sim_g" + std::to_string(g).substr(0, 4));
        }
        status |= write_csv(
            name, "4x2 RQAM, K=" + std::to_string(int(k_fix)) +
                      ", Gamma in {0, 0.25, 0.5, 1}",
            cols, snr, [&](const std::string& c, double db) {
                const double g = std::stod(c.substr(c.find("_g") + 2));
                return rqam_cell(k_fix, g, db, c.rfind("sim", 0) == 0);
            });
    }
    {
        std::vector<std::string> cols;
        for (int kk : {0, 5, 10, 20}) {
            cols.push_back("exact_k" + std::to_string(kk));
            cols.push_back("sim_k" + std::to_string(kk));
        }
        status |= write_csv(
            "fig1b.csv", "4x2 RQAM, Gamma=0.5, K in {0, 5, 10, 20}", cols,
            snr, [&](const std::string& c, double db) {
                const double kk = std::stod(c.substr(c.find("_k") + 2));
                return rqam_cell(kk, 0.5, db, c.rfind("sim", 0) == 0);
            });
    }

    // Fig. 3: decision-distance ratio sweep, minimum at beta = 1.
    {
        std::vector<std::string> cols;
        std::vector<std::pair<double, double>> combos;
        for (double g : {0.5, 1.0})
            for (double b : {0.5, 1.0, 2.0}) {
                cols.push_back("exact_b" + std::to_string(b).substr(0, 3) +
                               "_g" + std::to_string(g).substr(0, 3));
                combos.emplace_back(b, g);
            }
        status |= write_csv(
            "fig3.csv", "4x2 RQAM, K=10, beta in {0.5, 1, 2}", cols, snr,
            [&](const std::string& c, double db) {
                const double b = std::stod(c.substr(c.find("_b") + 2));
                const double g = std::stod(c.substr(c.find("_g") + 2));
                const TwdpParams p{10.0, g, db_to_linear(db)};
                return asep_rqam(p, 4, 2, b).value;
            });
    }

    // Fig. 2-analog: SQAM vs RQAM vs ASK vs DPSK at equal M.
    {
        std::vector<std::string> cols;
        std::map<std::string, ModulationScheme> schemes;
        const int splits[][3] = {{4, 4, 1}, {16, 8, 2}, {64, 16, 4}};
        for (const auto& s : splits) {
            const std::string m = std::to_string(s[0]);
            schemes.emplace("sqam" + m, ModulationScheme::sqam(s[0]));
            schemes.emplace("rqam" + m,
                            ModulationScheme::rqam(s[1], s[2], 1.0));
            schemes.emplace("ask" + m, ModulationScheme::ask(s[0]));
            schemes.emplace("dpsk" + m, ModulationScheme::dpsk(s[0]));
            for (const char* fam : {"sqam", "rqam", "ask", "dpsk"})
                cols.push_back(fam + m);
        }
        status |= write_csv(
            "fig2.csv", "scheme comparison at K=10, Gamma=0.5", cols, snr,
            [&](const std::string& c, double db) {
                const TwdpParams p{10.0, 0.5, db_to_linear(db)};
                return asep_exact(p, schemes.at(c)).value;
            });
    }

    // Fig. 5-analog: exact vs asymptotic out to 60 dB.
    {
        std::vector<double> snr60;
        for (double db = 10.0; db <= 60.0 + 1e-9; db += 5.0)
            snr60.push_back(db);
        std::map<std::string, ModulationScheme> schemes = {
            {"bpsk", ModulationScheme::bpsk()},
            {"sqam16", ModulationScheme::sqam(16)},
            {"dpsk8", ModulationScheme::dpsk(8)}};
        std::vector<std::string> cols;
        for (const auto& [n, s] : schemes) {
            cols.push_back("exact_" + n);
            cols.push_back("asym_" + n);
        }
        status |= write_csv(
            "fig5.csv", "exact vs asymptotic, K=10, Gamma=0.5", cols, snr60,
            [&](const std::string& c, double db) {
                const TwdpParams p{10.0, 0.5, db_to_linear(db)};
                const auto& s = schemes.at(c.substr(c.find('_') + 1));
                return c.rfind("asym", 0) == 0 ? asep_asymptotic(p, s)
                                               : asep_exact(p, s).value;
            });
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TWDP fading ASEP toolbox"};
    app.require_subcommand(1);

    // sweep
    ModFlags mf;
    double k = 0.0;
    std::optional<double> gamma, delta;
    std::string snr_spec = "0:5:40";
    std::string modes_csv = "exact";
    std::uint64_t seed = 1, symbols = 100000;
    std::string out_path, format = "csv";
    bool verbose = false;

    auto* sweep = app.add_subcommand("sweep", "ASEP vs average SNR");
    sweep->add_option("--mod", mf.mod, "rqam|sqam|ask|qpsk|bpsk|dpsk")
        ->required();
    sweep->add_option("--mi", mf.mi, "RQAM in-phase order");
    sweep->add_option("--mq", mf.mq, "RQAM quadrature order");
    sweep->add_option("--beta", mf.beta, "RQAM d_Q/d_I");
    sweep->add_option("--m", mf.m, "order for sqam|ask|dpsk");
    sweep->add_option("--k", k, "K factor")->required();
    sweep->add_option("--gamma", gamma, "specular ratio Gamma in [0,1]");
    sweep->add_option("--delta", delta, "legacy Delta (converted to Gamma)");
    sweep->add_option("--snr", snr_spec, "start:step:stop in dB");
    sweep->add_option("--mode", modes_csv,
                      "comma-separated subset of exact,asym,sim,oracle");
    sweep->add_option("--seed", seed, "simulation seed");
    sweep->add_option("--symbols", symbols, "simulation symbols per point");
    sweep->add_option("--out", out_path, "output file (default stdout)");
    sweep->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--verbose", verbose, "convergence diagnostics");

    // pdf
    double pk = 0.0, pgamma = 0.0, pomega = 1.0, r_max = 4.0;
    int n_points = 200;
    std::string pdf_out;
    auto* pdf = app.add_subcommand("pdf", "envelope PDF dump");
    pdf->add_option("--k", pk, "K factor")->required();
    pdf->add_option("--gamma", pgamma, "specular ratio Gamma")->required();
    pdf->add_option("--omega", pomega, "total power Omega");
    pdf->add_option("--r-max", r_max, "upper envelope bound");
    pdf->add_option("--n-points", n_points, "sample count")
        ->check(CLI::Range(2, 1000000));
    pdf->add_option("--out", pdf_out, "output file (default stdout)");

    // figures
    std::string fig_dir = "figures";
    auto* figures =
        app.add_subcommand("figures", "reproduce figure data as CSV");
    figures->add_option("--output-dir", fig_dir, "target directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(mf, k, gamma, delta, snr_spec, modes_csv, seed,
                             symbols, out_path, format, verbose);
        if (pdf->parsed())
            return cmd_pdf(pk, pgamma, pomega, r_max, n_points, pdf_out);
        return cmd_figures(fig_dir);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
