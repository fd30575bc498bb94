// apsk_capacity: Monte Carlo capacity curves for M-APSK over coherent and
// blockwise-noncoherent AWGN channels. Subcommands write one CSV plus a JSON
// manifest that records everything needed to reproduce the file byte for
// byte.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apsk/bounds.hpp"
#include "apsk/constellation.hpp"
#include "apsk/oracle.hpp"
#include "apsk/sweep.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 2;
constexpr int kExitEstimator = 3;

// 6 significant digits, locale-independent.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    line += "\r\n";  // RFC 4180
    return line;
}

std::vector<double> snr_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw CLI::ValidationError("--snr-step must be > 0");
    if (stop < start) throw CLI::ValidationError("--snr-stop must be >= --snr-start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::strtoull(v, nullptr, 10);
}

std::string iso_timestamp() {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << contents;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& params, std::uint64_t seed,
                    std::uint64_t samples, std::size_t rows) {
    nlohmann::json m;
    m["tool"] = "apsk_capacity";
    m["version"] = kVersion;
    m["command"] = command;
    m["parameters"] = params;
    m["seed"] = seed;
    m["samples_per_estimate"] = samples;
    m["rows"] = rows;
    m["timestamp"] = iso_timestamp();
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

struct CommonOpts {
    int rings = 2;
    int phases = 4;
    double ring_ratio = 2.42;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ratio = true) {
    cmd->add_option("--rings", o.rings, "Number of amplitude rings N")->required();
    cmd->add_option("--phases", o.phases, "Phases per ring P")->required();
    if (with_ratio) cmd->add_option("--ring-ratio", o.ring_ratio, "Ring ratio r")->required();
    cmd->add_option("--samples", o.samples, "Monte Carlo samples per estimate");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--threads", o.threads, "Worker thread cap (0 = all cores)");
    cmd->add_option("--out", o.out, "Output CSV path")->required();
}

apsk::McConfig make_mc(const CommonOpts& o) {
    apsk::McConfig mc;
    mc.samples = o.samples != 0 ? o.samples : env_u64("APSK_SAMPLES", 100000);
    mc.stream.seed = o.seed != 0 ? o.seed : env_u64("APSK_SEED", 1);
    mc.threads = o.threads;
    return mc;
}

int run_bounds(const CommonOpts& o, double snr_start, double snr_stop, double snr_step,
               const std::vector<int>& block_lens, bool exact_block, bool oracle_check,
               std::uint64_t budget) {
    for (int l : block_lens) {
        if (l < 2) {
            std::cerr << "apsk_capacity bounds: minimum block length is 2 "
                         "(one-symbol overlap), got "
                      << l << "\n";
            return kExitUsage;
        }
    }
    const std::vector<double> grid = snr_grid(snr_start, snr_stop, snr_step);
    const apsk::Constellation c = apsk::build_apsk(o.rings, o.phases, o.ring_ratio);
    const apsk::McConfig mc = make_mc(o);
    const auto mode =
        exact_block ? apsk::AmplitudeMode::exact_block : apsk::AmplitudeMode::literal;

    const std::vector<apsk::BoundsRow> rows = apsk::bounds_curve(c, block_lens, grid, mc, mode);

    std::string csv = csv_line({"snr_db", "L", "coherent_bits", "coherent_se", "upper_bits",
                                "upper_se", "lower_bits", "lower_raw_bits", "lower_se",
                                "i_theta_r_disc", "i_theta_r_cont", "i_theta_rs_disc",
                                "i_theta_rs_cont", "oracle_bits", "oracle_se"});
    std::size_t idx = 0;
    for (std::size_t si = 0; si < grid.size(); ++si) {
        for (std::size_t li = 0; li < block_lens.size(); ++li, ++idx) {
            const apsk::BoundsRow& row = rows[idx];
            std::string oracle_bits, oracle_se;
            if (oracle_check &&
                std::pow(static_cast<double>(c.size()), row.block_len) <=
                    static_cast<double>(budget)) {
                apsk::McConfig cell = mc;
                cell.stream =
                    apsk::substream(apsk::substream(apsk::substream(mc.stream, li), si), 5);
                const apsk::ChannelParams ch =
                    apsk::ChannelParams::from_snr_db(row.snr_db, c.avg_energy);
                const apsk::CapacityEstimate est =
                    apsk::exact_block_ami(c, row.block_len, ch, cell, budget);
                oracle_bits = fmt(est.mean_bits);
                oracle_se = fmt(est.std_error);
            }
            csv += csv_line({fmt(row.snr_db), std::to_string(row.block_len),
                             fmt(row.coherent_bits), fmt(row.coherent_se), fmt(row.upper_bits),
                             fmt(row.upper_se), fmt(row.lower_bits), fmt(row.lower_raw_bits),
                             fmt(row.lower_se), fmt(row.i_theta_r_disc), fmt(row.i_theta_r_cont),
                             fmt(row.i_theta_rs_disc), fmt(row.i_theta_rs_cont), oracle_bits,
                             oracle_se});
        }
    }
    write_file(o.out, csv);
    nlohmann::json params = {{"rings", o.rings},
                             {"phases", o.phases},
                             {"ring_ratio", o.ring_ratio},
                             {"snr_start", snr_start},
                             {"snr_stop", snr_stop},
                             {"snr_step", snr_step},
                             {"block_lengths", block_lens},
                             {"exact_block_term", exact_block},
                             {"oracle_check", oracle_check},
                             {"oracle_budget", budget},
                             {"threads", o.threads}};
    write_manifest(o.out, "bounds", params, mc.stream.seed, mc.samples, rows.size());
    return 0;
}

int run_coherent(const CommonOpts& o, bool have_ratio, const std::string& sweep_spec,
                 double snr_start, double snr_stop, double snr_step) {
    const std::vector<double> grid = snr_grid(snr_start, snr_stop, snr_step);
    const apsk::McConfig mc = make_mc(o);
    std::string csv;
    std::size_t n_rows = 0;

    if (!sweep_spec.empty()) {
        double lo = 0, step = 0, hi = 0;
        char colon1 = 0, colon2 = 0;
        std::istringstream in(sweep_spec);
        in >> lo >> colon1 >> step >> colon2 >> hi;
        if (!in || colon1 != ':' || colon2 != ':' || !(step > 0) || hi < lo) {
            std::cerr << "apsk_capacity coherent: --ring-ratio-sweep expects lo:step:hi\n";
            return kExitUsage;
        }
        apsk::SweepSpec spec;
        spec.n_rings = o.rings;
        spec.phases_per_ring = o.phases;
        spec.snr_grid_db = grid;
        spec.mc = mc;
        for (double r = lo; r <= hi + 1e-9; r += step) spec.r_grid.push_back(r);
        const std::vector<apsk::SweepRow> rows = apsk::ring_ratio_sweep(spec);
        csv = csv_line({"snr_db", "r", "capacity_bits", "capacity_se", "is_argmax"});
        for (const auto& row : rows) {
            csv += csv_line({fmt(row.snr_db), fmt(row.ring_ratio), fmt(row.capacity_bits),
                             fmt(row.capacity_se), row.is_argmax ? "1" : "0"});
        }
        n_rows = rows.size();
    } else {
        if (!have_ratio) {
            std::cerr << "apsk_capacity coherent: need --ring-ratio or --ring-ratio-sweep\n";
            return kExitUsage;
        }
        const apsk::Constellation c = apsk::build_apsk(o.rings, o.phases, o.ring_ratio);
        csv = csv_line({"snr_db", "capacity_bits", "capacity_se"});
        for (std::size_t si = 0; si < grid.size(); ++si) {
            apsk::McConfig cell = mc;
            cell.stream = apsk::substream(mc.stream, si);
            const apsk::ChannelParams ch = apsk::ChannelParams::from_snr_db(grid[si]);
            const apsk::CapacityEstimate est = apsk::coherent_capacity(c, ch, cell);
            csv += csv_line({fmt(grid[si]), fmt(est.mean_bits), fmt(est.std_error)});
            ++n_rows;
        }
    }
    write_file(o.out, csv);
    nlohmann::json params = {{"rings", o.rings},        {"phases", o.phases},
                             {"ring_ratio", o.ring_ratio}, {"ring_ratio_sweep", sweep_spec},
                             {"snr_start", snr_start},   {"snr_stop", snr_stop},
                             {"snr_step", snr_step},     {"threads", o.threads},
                             {"argmax_tie_rule", "flagged when within 2*se of grid maximum"}};
    write_manifest(o.out, "coherent", params, mc.stream.seed, mc.samples, n_rows);
    return 0;
}

int run_oracle(const CommonOpts& o, int block_len, double snr_start, double snr_stop,
               double snr_step, std::uint64_t budget) {
    const apsk::Constellation c = apsk::build_apsk(o.rings, o.phases, o.ring_ratio);
    const double m_pow_l = std::pow(static_cast<double>(c.size()), block_len);
    if (block_len < 2 || m_pow_l > static_cast<double>(budget)) {
        std::cerr << "apsk_capacity oracle: M^L = " << fmt(m_pow_l)
                  << " outside oracle budget " << budget << " (block length " << block_len
                  << ")\n";
        return kExitUsage;
    }
    const std::vector<double> grid = snr_grid(snr_start, snr_stop, snr_step);
    const apsk::McConfig mc = make_mc(o);
    std::string csv = csv_line({"snr_db", "L", "oracle_bits", "oracle_se"});
    for (std::size_t si = 0; si < grid.size(); ++si) {
        apsk::McConfig cell = mc;
        cell.stream = apsk::substream(mc.stream, si);
        const apsk::ChannelParams ch = apsk::ChannelParams::from_snr_db(grid[si], c.avg_energy);
        const apsk::CapacityEstimate est = apsk::exact_block_ami(c, block_len, ch, cell, budget);
        csv += csv_line(
            {fmt(grid[si]), std::to_string(block_len), fmt(est.mean_bits), fmt(est.std_error)});
    }
    write_file(o.out, csv);
    nlohmann::json params = {{"rings", o.rings},       {"phases", o.phases},
                             {"ring_ratio", o.ring_ratio}, {"block_len", block_len},
                             {"snr_start", snr_start}, {"snr_stop", snr_stop},
                             {"snr_step", snr_step},   {"budget", budget},
                             {"threads", o.threads}};
    write_manifest(o.out, "oracle", params, mc.stream.seed, mc.samples, grid.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity bounds for M-APSK over blockwise-noncoherent AWGN"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts bo, co, oo;
    double snr_start = 0, snr_stop = 0, snr_step = 1;
    std::string block_lens_str = "2";
    bool exact_block = false, oracle_check = false;
    std::uint64_t budget = apsk::kDefaultOracleBudget;
    std::string sweep_spec;
    int block_len = 2;

    CLI::App* bounds = app.add_subcommand("bounds", "Upper/lower noncoherent capacity bounds");
    add_common(bounds, bo);
    bounds->add_option("--snr-start", snr_start, "Start SNR (dB)")->required();
    bounds->add_option("--snr-stop", snr_stop, "Stop SNR (dB)")->required();
    bounds->add_option("--snr-step", snr_step, "SNR step (dB)");
    bounds->add_option("--block-lengths", block_lens_str, "Comma-separated block lengths L");
    bounds->add_flag("--exact-block-term", exact_block,
                     "Use matched-filter block amplitudes in the known-input phase term");
    bounds->add_flag("--oracle-check", oracle_check,
                     "Add brute-force oracle columns where M^L fits the budget");
    bounds->add_option("--oracle-budget", budget, "Enumeration budget for --oracle-check");

    CLI::App* coherent = app.add_subcommand("coherent", "Coherent APSK capacity / ring-ratio sweep");
    add_common(coherent, co, /*with_ratio=*/false);
    CLI::Option* ratio_opt = coherent->add_option("--ring-ratio", co.ring_ratio, "Ring ratio r");
    coherent->add_option("--ring-ratio-sweep", sweep_spec, "Sweep grid lo:step:hi");
    coherent->add_option("--snr-start", snr_start, "Start SNR (dB)")->required();
    coherent->add_option("--snr-stop", snr_stop, "Stop SNR (dB)")->required();
    coherent->add_option("--snr-step", snr_step, "SNR step (dB)");

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force noncoherent block AMI");
    add_common(oracle, oo);
    oracle->add_option("--block-len", block_len, "Block length L")->required();
    oracle->add_option("--snr-start", snr_start, "Start SNR (dB)")->required();
    oracle->add_option("--snr-stop", snr_stop, "Stop SNR (dB)")->required();
    oracle->add_option("--snr-step", snr_step, "SNR step (dB)");
    oracle->add_option("--budget", budget, "Enumeration budget for M^L");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (bounds->parsed()) {
            std::vector<int> lens;
            std::istringstream in(block_lens_str);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                if (!tok.empty()) lens.push_back(std::stoi(tok));
            }
            if (lens.empty()) {
                std::cerr << "apsk_capacity bounds: --block-lengths is empty\n";
                return kExitUsage;
            }
            return run_bounds(bo, snr_start, snr_stop, snr_step, lens, exact_block,
                              oracle_check, budget);
        }
        if (coherent->parsed()) {
            return run_coherent(co, ratio_opt->count() > 0, sweep_spec, snr_start, snr_stop,
                                snr_step);
        }
        return run_oracle(oo, block_len, snr_start, snr_stop, snr_step, budget);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "apsk_capacity: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "apsk_capacity: invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "apsk_capacity: estimator failure: " << e.what() << "\n";
        return kExitEstimator;
    }
}
