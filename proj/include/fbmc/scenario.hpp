#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "fbmc/channel.hpp"
#include "fbmc/estimation.hpp"
#include "fbmc/neural.hpp"
#include "fbmc/sysconfig.hpp"

namespace fbmc {

enum class ChannelKind { Awgn, BrazilA, Custom };

/// Where the linear and cubic estimators get their pilot values: the known
/// training frame (default) or the pilots of each data frame.
enum class PilotSource { Training, Frame };

std::string to_string(PilotSource source);
PilotSource parse_pilot_source(const std::string& text);

std::string to_string(ChannelKind kind);
ChannelKind parse_channel_kind(const std::string& text);

struct Scenario {
    SystemParams params;
    ChannelKind channel = ChannelKind::Awgn;
    /// Es/N0 per data symbol; +inf disables the noise.
    double snr_db = std::numeric_limits<double>::infinity();
    std::vector<PathSpec> custom_paths;  // only for ChannelKind::Custom
    EstimatorKind estimator = EstimatorKind::Cubic;
    NnHyperParams nn;
    std::uint64_t seed = 1;
    std::size_t min_errors = 100;
    std::size_t max_bits = 2'000'000;
    std::size_t frame_symbols = 8;
    std::size_t pilot_window = 1;  // frame pilots only
    PilotSource pilot_source = PilotSource::Training;

    /// Multipath taps at the system sample rate.
    ChannelProfile channel_profile() const;
    void validate() const;
};

/// `base_dir` resolves a relative channel profile_file.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace fbmc
