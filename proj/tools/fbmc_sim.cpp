#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "fbmc/framing.hpp"
#include "fbmc/harness.hpp"
#include "fbmc/protofilter.hpp"
#include "fbmc/selftest.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadConfig = 2;

void print_records(const std::vector<fbmc::BerRecord>& records) {
    for (const auto& r : records)
        std::printf("snr %6.2f dB  bits %10llu  errors %8llu  ber %.4e  (%.2fs)%s\n", r.snr_db,
                    static_cast<unsigned long long>(r.bits_sent), static_cast<unsigned long long>(r.bit_errors),
                    r.ber, r.wall_time_seconds, r.training_converged ? "" : "  [nn not converged]");
}

void write_filter_csv(const std::string& path, std::size_t k, std::size_t m, std::size_t points) {
    const fbmc::PrototypeFilter f = fbmc::make_prototype(k, m);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    char buf[64];
    out << "table,x,value\n";
    for (std::size_t i = 0; i < f.taps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", f.taps[i]);
        out << "tap," << i << ',' << buf << '\n';
    }
    const double edge = 4.0 / static_cast<double>(m);
    for (const auto& p : fbmc::frequency_response(f, points, -edge, edge)) {
        std::snprintf(buf, sizeof buf, "response,%.17g,%.17g", p.frequency, p.magnitude_db);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FBMC/OQAM link-level simulator"};
    app.require_subcommand(1);

    std::string scenario_file, out_file;
    double snr_start = 0, snr_stop = 0, snr_step = 1, snr = 0;
    unsigned threads = 0;

    auto* sweep_cmd = app.add_subcommand("sweep", "BER over an SNR range");
    sweep_cmd->add_option("--scenario", scenario_file, "scenario JSON")->required();
    sweep_cmd->add_option("--snr-start", snr_start, "first Es/N0 in dB")->required();
    sweep_cmd->add_option("--snr-stop", snr_stop, "last Es/N0 in dB")->required();
    sweep_cmd->add_option("--snr-step", snr_step, "Es/N0 step in dB")->required();
    sweep_cmd->add_option("--out", out_file, "output CSV")->required();
    sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* run_cmd = app.add_subcommand("run", "BER at one SNR");
    run_cmd->add_option("--scenario", scenario_file, "scenario JSON")->required();
    run_cmd->add_option("--snr", snr, "Es/N0 in dB")->required();
    run_cmd->add_option("--out", out_file, "output CSV")->required();
    run_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    std::size_t k = 4, m = 0, points = 2048;
    auto* filter_cmd = app.add_subcommand("filter", "dump the prototype filter taps and response");
    filter_cmd->add_option("--k", k, "overlap factor")->default_val(4);
    filter_cmd->add_option("--m", m, "number of subcarriers")->required();
    filter_cmd->add_option("--out", out_file, "output CSV")->required();
    filter_cmd->add_option("--points", points, "frequency grid size")->default_val(2048);

    std::size_t frame_symbols = 2;
    std::uint64_t frame_seed = 1;
    auto* frame_cmd = app.add_subcommand("frame", "dump a random frame layout");
    frame_cmd->add_option("--scenario", scenario_file, "scenario JSON")->required();
    frame_cmd->add_option("--symbols", frame_symbols, "symbols in the frame")->default_val(2);
    frame_cmd->add_option("--seed", frame_seed, "payload seed")->default_val(1);
    frame_cmd->add_option("--out", out_file, "output CSV")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        if (*sweep_cmd) {
            const fbmc::Scenario s = fbmc::load_scenario(scenario_file);
            const auto snrs = fbmc::snr_range(snr_start, snr_stop, snr_step);
            const auto records = fbmc::sweep(s, snrs, threads);
            fbmc::emit_csv(std::filesystem::path(out_file), records);
            print_records(records);
        } else if (*run_cmd) {
            fbmc::Scenario s = fbmc::load_scenario(scenario_file);
            s.snr_db = snr;
            const std::vector<fbmc::BerRecord> records{fbmc::run_trial(s, threads)};
            fbmc::emit_csv(std::filesystem::path(out_file), records);
            print_records(records);
        } else if (*filter_cmd) {
            write_filter_csv(out_file, k, m, points);
        } else if (*frame_cmd) {
            const fbmc::Scenario s = fbmc::load_scenario(scenario_file);
            const fbmc::TrainingFrame tf = fbmc::training_frame(s.params, frame_seed);
            fbmc::SymbolGrid grid = tf.grid;
            if (frame_symbols != grid.symbols()) {
                std::vector<fbmc::cplx> data(frame_symbols * s.params.data_carriers);
                for (std::size_t i = 0; i < data.size(); ++i) data[i] = tf.payload[i % tf.payload.size()];
                grid = fbmc::build_frame(data, s.params);
            }
            std::ofstream out(out_file);
            if (!out) throw std::runtime_error("cannot open " + out_file);
            fbmc::write_frame_csv(out, grid);
        } else if (*selftest_cmd) {
            bool ok = true;
            for (const auto& c : fbmc::selftest()) {
                std::printf("%-26s %s  %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL", c.detail.c_str());
                ok = ok && c.passed;
            }
            return ok ? kOk : kFailure;
        }
    } catch (const fbmc::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kBadConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kBadConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
    return kOk;
}
