#include "fbmc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fbmc/sysconfig.hpp"

namespace fbmc {

ChannelProfile identity_profile() {
    ChannelProfile p;
    p.taps.push_back({0, {1.0, 0.0}});
    return p;
}

ChannelProfile resolve_profile(std::vector<PathSpec> paths, double sample_rate) {
    if (!(sample_rate > 0.0)) throw ConfigError("channel sample_rate must be positive");
    if (paths.empty()) return identity_profile();

    std::stable_sort(paths.begin(), paths.end(),
                     [](const PathSpec& a, const PathSpec& b) { return a.delay_s < b.delay_s; });
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (!(paths[i].delay_s >= 0.0)) throw ConfigError("path delays must be non-negative");
        if (i > 0 && paths[i].delay_s == paths[i - 1].delay_s)
            throw ConfigError("path delays must be distinct");
    }

    ChannelProfile profile;
    profile.paths = paths;
    for (const PathSpec& p : paths) {
        const auto delay = static_cast<std::size_t>(std::llround(p.delay_s * sample_rate));
        const double gain = std::pow(10.0, -p.attenuation_db / 20.0);
        if (!profile.taps.empty() && profile.taps.back().delay_samples == delay)
            profile.taps.back().gain += gain;
        else
            profile.taps.push_back({delay, {gain, 0.0}});
    }
    double power = 0.0;
    for (const auto& t : profile.taps) power += std::norm(t.gain);
    const double scale = 1.0 / std::sqrt(power);
    for (auto& t : profile.taps) t.gain *= scale;
    return profile;
}

std::vector<PathSpec> brazil_a_paths() {
    return {{0.0, 0.0},      {0.15e-6, 13.8}, {2.2e-6, 16.2},
            {3.05e-6, 14.9}, {5.86e-6, 13.6}, {5.93e-6, 16.4}};
}

ChannelProfile brazil_a_profile(double sample_rate) {
    return resolve_profile(brazil_a_paths(), sample_rate);
}

std::vector<PathSpec> paths_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("channel profile must be a JSON array");
    std::vector<PathSpec> out;
    try {
        for (const auto& e : j)
            out.push_back({e.at("delay_us").get<double>() * 1e-6, e.at("attenuation_db").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad channel profile: ") + e.what());
    }
    return out;
}

std::vector<PathSpec> load_paths(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open channel profile " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse channel profile " + file.string() + ": " + e.what());
    }
    return paths_from_json(j);
}

SampleStream apply_multipath(std::span<const cplx> stream, const ChannelProfile& profile) {
    if (stream.empty()) return {};
    SampleStream out(stream.size() + profile.max_delay());
    for (const ResolvedTap& tap : profile.taps)
        for (std::size_t n = 0; n < stream.size(); ++n) out[n + tap.delay_samples] += tap.gain * stream[n];
    return out;
}

double NoiseSpec::noise_variance(double signal_power) const {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return signal_power / std::pow(10.0, snr_db / 10.0);
}

SampleStream apply_awgn(std::span<const cplx> stream, double snr_db, std::uint64_t seed,
                        std::optional<double> signal_power) {
    if (stream.empty()) throw std::invalid_argument("apply_awgn on an empty stream");
    SampleStream out(stream.begin(), stream.end());
    if (std::isinf(snr_db) && snr_db > 0) return out;

    double power = 0.0;
    if (signal_power) {
        power = *signal_power;
    } else {
        for (const cplx& v : stream) power += std::norm(v);
        power /= static_cast<double>(stream.size());
    }
    const double sigma = std::sqrt(NoiseSpec{snr_db}.noise_variance(power) / 2.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (cplx& v : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        v += cplx{re, im};
    }
    return out;
}

std::vector<cplx> true_frequency_response(const ChannelProfile& profile, std::size_t fft_size,
                                          std::span<const std::size_t> bins) {
    std::vector<cplx> out(bins.size());
    const double m = static_cast<double>(fft_size);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        cplx acc{};
        for (const ResolvedTap& tap : profile.taps) {
            // Reduce k*d mod M first to keep the phase argument small.
            const auto phase_index = static_cast<double>((bins[i] * tap.delay_samples) % fft_size);
            acc += tap.gain * std::polar(1.0, -2.0 * std::numbers::pi * phase_index / m);
        }
        out[i] = acc;
    }
    return out;
}

std::vector<cplx> true_frequency_response(const ChannelProfile& profile, std::size_t fft_size,
                                          std::size_t band_offset, std::size_t occupied) {
    std::vector<std::size_t> bins(occupied);
    for (std::size_t i = 0; i < occupied; ++i) bins[i] = band_offset + i;
    return true_frequency_response(profile, fft_size, bins);
}

}  // namespace fbmc
