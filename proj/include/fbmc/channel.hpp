#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "fbmc/filterbank.hpp"
#include "fbmc/grid.hpp"

namespace fbmc {

struct PathSpec {
    double delay_s = 0.0;
    double attenuation_db = 0.0;
};

struct ResolvedTap {
    std::size_t delay_samples = 0;
    cplx gain;
};

/// Static tapped delay line. `taps` are sorted by delay, merged on integer
/// delay collisions and scaled to unit total power.
struct ChannelProfile {
    std::vector<PathSpec> paths;
    std::vector<ResolvedTap> taps;

    std::size_t max_delay() const noexcept { return taps.empty() ? 0 : taps.back().delay_samples; }
    bool is_identity() const noexcept {
        return taps.size() == 1 && taps[0].delay_samples == 0 && taps[0].gain == cplx{1.0, 0.0};
    }
};

/// Nearest-sample delays, zero tap phases, coherent sum on collision.
/// An empty path list resolves to the identity channel.
ChannelProfile resolve_profile(std::vector<PathSpec> paths, double sample_rate);

ChannelProfile identity_profile();

/// Six-path static terrestrial profile (ITU Brazil A).
std::vector<PathSpec> brazil_a_paths();
ChannelProfile brazil_a_profile(double sample_rate);

/// JSON list of {"delay_us": ..., "attenuation_db": ...}.
std::vector<PathSpec> paths_from_json(const nlohmann::json& j);
std::vector<PathSpec> load_paths(const std::filesystem::path& file);

/// y[n] = sum gain * x[n - delay]; output length = input length + max delay.
SampleStream apply_multipath(std::span<const cplx> stream, const ChannelProfile& profile);

/// Noise power is signal_power / 10^(snr_db / 10), split evenly between I and Q.
struct NoiseSpec {
    double snr_db = std::numeric_limits<double>::infinity();

    double noise_variance(double signal_power) const;
};

/// Adds circular Gaussian noise. The reference signal power is the mean
/// power of `stream` unless given. snr_db = +inf returns the input unchanged.
SampleStream apply_awgn(std::span<const cplx> stream, double snr_db, std::uint64_t seed,
                        std::optional<double> signal_power = std::nullopt);

/// H[k] = sum gain * exp(-j 2 pi k delay / M) at each given absolute FFT bin.
std::vector<cplx> true_frequency_response(const ChannelProfile& profile, std::size_t fft_size,
                                          std::span<const std::size_t> bins);

/// Convenience overload for a contiguous occupied band.
std::vector<cplx> true_frequency_response(const ChannelProfile& profile, std::size_t fft_size,
                                          std::size_t band_offset, std::size_t occupied);

}  // namespace fbmc
