#include "fbmc/sysconfig.hpp"

#include <bit>
#include <cmath>

namespace fbmc {

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::Mode1: return "Mode1";
    case Mode::Mode2: return "Mode2";
    case Mode::Mode3: return "Mode3";
    case Mode::Toy: return "Toy";
    }
    return "Toy";
}

Mode parse_mode(const std::string& text) {
    if (text == "Mode1" || text == "mode1" || text == "1") return Mode::Mode1;
    if (text == "Mode2" || text == "mode2" || text == "2") return Mode::Mode2;
    if (text == "Mode3" || text == "mode3" || text == "3") return Mode::Mode3;
    if (text == "Toy" || text == "toy") return Mode::Toy;
    throw ConfigError("unknown mode '" + text + "'");
}

std::size_t SystemParams::bits_per_symbol() const {
    switch (qam_order) {
    case 4: return 2;
    case 16: return 4;
    case 64: return 6;
    default: throw ConfigError("qam_order must be 4, 16 or 64");
    }
}

std::size_t pilot_count(std::size_t occupied, std::size_t spacing) {
    if (occupied == 0) return 0;
    return (occupied - 1) / spacing + 1;
}

void SystemParams::validate() const {
    if (fft_size < 8 || !std::has_single_bit(fft_size))
        throw ConfigError("fft_size must be a power of two >= 8");
    if (occupied_carriers > fft_size) throw ConfigError("occupied_carriers exceeds fft_size");
    if (pilot_spacing == 0) throw ConfigError("pilot_spacing must be positive");
    if (overlap_factor == 0) throw ConfigError("overlap_factor must be positive");
    if (occupied_carriers != data_carriers + pilot_carriers)
        throw ConfigError("occupied_carriers != data_carriers + pilot_carriers");
    if (pilot_carriers != pilot_count(occupied_carriers, pilot_spacing))
        throw ConfigError("pilot_carriers inconsistent with the pilot grid");
    if (!(symbol_period > 0.0) || !(sample_rate > 0.0))
        throw ConfigError("symbol_period and sample_rate must be positive");
    const double expected_rate = static_cast<double>(fft_size) / symbol_period;
    if (std::abs(sample_rate - expected_rate) > 1e-6 * expected_rate)
        throw ConfigError("sample_rate must equal fft_size / symbol_period");
    (void)bits_per_symbol();
}

namespace {

SystemParams make(Mode mode, std::size_t fft, std::size_t occupied, double period, int qam) {
    SystemParams p;
    p.mode = mode;
    p.fft_size = fft;
    p.occupied_carriers = occupied;
    p.pilot_carriers = pilot_count(occupied, kPilotSpacing);
    p.data_carriers = occupied - p.pilot_carriers;
    p.symbol_period = period;
    p.sample_rate = static_cast<double>(fft) / period;
    p.qam_order = qam;
    p.validate();
    return p;
}

}  // namespace

SystemParams mode_params(Mode mode, int qam_order) {
    switch (mode) {
    case Mode::Mode1: return make(mode, 2048, 1405, 0.252e-3, qam_order);
    case Mode::Mode2: return make(mode, 4096, 2809, 0.504e-3, qam_order);
    case Mode::Mode3: return make(mode, 8192, 5617, 1.008e-3, qam_order);
    case Mode::Toy: break;
    }
    throw ConfigError("mode_params needs Mode1, Mode2 or Mode3; use toy_params for Toy");
}

SystemParams toy_params(std::size_t fft_size, std::size_t occupied, int qam_order) {
    if (fft_size < 16 || !std::has_single_bit(fft_size))
        throw ConfigError("toy fft_size must be a power of two >= 16");
    if (occupied == 0 || occupied > fft_size) throw ConfigError("toy occupied must be in [1, M]");
    if (occupied % kPilotSpacing != 1)
        throw ConfigError("toy occupied must be 1 mod 9 so the band starts and ends on a pilot");
    return make(Mode::Toy, fft_size, occupied, static_cast<double>(fft_size) / kMode3SampleRate,
                qam_order);
}

void to_json(nlohmann::json& j, const SystemParams& p) {
    j = nlohmann::json{{"mode", to_string(p.mode)},
                       {"fft_size", p.fft_size},
                       {"occupied_carriers", p.occupied_carriers},
                       {"data_carriers", p.data_carriers},
                       {"pilot_carriers", p.pilot_carriers},
                       {"pilot_spacing", p.pilot_spacing},
                       {"overlap_factor", p.overlap_factor},
                       {"symbol_period", p.symbol_period},
                       {"sample_rate", p.sample_rate},
                       {"qam_order", p.qam_order}};
}

void from_json(const nlohmann::json& j, SystemParams& p) {
    try {
        p.mode = parse_mode(j.at("mode").get<std::string>());
        j.at("fft_size").get_to(p.fft_size);
        j.at("occupied_carriers").get_to(p.occupied_carriers);
        j.at("data_carriers").get_to(p.data_carriers);
        j.at("pilot_carriers").get_to(p.pilot_carriers);
        j.at("pilot_spacing").get_to(p.pilot_spacing);
        j.at("overlap_factor").get_to(p.overlap_factor);
        j.at("symbol_period").get_to(p.symbol_period);
        j.at("sample_rate").get_to(p.sample_rate);
        j.at("qam_order").get_to(p.qam_order);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad SystemParams JSON: ") + e.what());
    }
    p.validate();
}

}  // namespace fbmc
