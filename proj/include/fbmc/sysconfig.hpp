#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace fbmc {

/// Raised for any configuration that violates a parameter precondition.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Mode { Mode1, Mode2, Mode3, Toy };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Pilots sit on every ninth carrier of the occupied band.
inline constexpr std::size_t kPilotSpacing = 9;
inline constexpr std::size_t kOverlapFactor = 4;
/// 8192 samples per 1.008 ms useful symbol (ISDB-T mode 3, 6 MHz).
inline constexpr double kMode3SymbolPeriod = 1.008e-3;
inline constexpr double kMode3SampleRate = 8192.0 / kMode3SymbolPeriod;

struct SystemParams {
    Mode mode = Mode::Toy;
    std::size_t fft_size = 0;
    std::size_t occupied_carriers = 0;
    std::size_t data_carriers = 0;
    std::size_t pilot_carriers = 0;
    std::size_t pilot_spacing = kPilotSpacing;
    std::size_t overlap_factor = kOverlapFactor;
    double symbol_period = 0.0;
    double sample_rate = 0.0;
    int qam_order = 4;

    std::size_t bits_per_symbol() const;
    /// Null carriers below the occupied band; the extra null of an odd
    /// guard count goes above the band.
    std::size_t band_offset() const { return (fft_size - occupied_carriers) / 2; }
    bool is_pilot_index(std::size_t occupied_index) const {
        return occupied_index % pilot_spacing == 0;
    }

    /// Throws ConfigError when any invariant is broken.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

std::size_t pilot_count(std::size_t occupied, std::size_t spacing);

SystemParams mode_params(Mode mode, int qam_order = 4);

/// Desk-scale configuration. The sample rate is pinned to the mode-3 rate so
/// channel delays map to the same tap indices whatever the FFT size.
SystemParams toy_params(std::size_t fft_size, std::size_t occupied, int qam_order = 4);

void to_json(nlohmann::json& j, const SystemParams& p);
void from_json(const nlohmann::json& j, SystemParams& p);

}  // namespace fbmc
