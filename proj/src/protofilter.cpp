#include "fbmc/protofilter.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "fbmc/sysconfig.hpp"

namespace fbmc {

double PrototypeFilter::energy() const noexcept {
    return std::inner_product(taps.begin(), taps.end(), taps.begin(), 0.0);
}

std::vector<double> design_coeffs(std::size_t overlap) {
    switch (overlap) {
    case 1: return {1.0};
    case 4: return {1.0, -0.9719598, 0.7071068, -0.2351470};
    default: throw ConfigError("prototype filter is only defined for K = 1 or K = 4");
    }
}

std::vector<double> impulse_response(std::span<const double> coeffs, std::size_t subcarriers) {
    if (subcarriers < 8 || !std::has_single_bit(subcarriers))
        throw ConfigError("prototype needs M >= 8, power of two");
    if (coeffs.empty()) throw ConfigError("empty coefficient set");
    const std::size_t overlap = coeffs.size();
    const std::size_t span = overlap * subcarriers;
    std::vector<double> taps(span - 1);
    for (std::size_t i = 0; i < taps.size(); ++i) {
        double v = coeffs[0];
        for (std::size_t k = 1; k < overlap; ++k)
            v += 2.0 * coeffs[k] *
                 std::cos(2.0 * std::numbers::pi * static_cast<double>(k * (i + 1)) /
                          static_cast<double>(span));
        taps[i] = v;
    }
    const double centre = taps[span / 2 - 1];
    for (double& t : taps) t /= centre;
    return taps;
}

PrototypeFilter make_prototype(std::size_t overlap, std::size_t subcarriers) {
    PrototypeFilter f;
    f.overlap = overlap;
    f.subcarriers = subcarriers;
    f.freq_coeffs = design_coeffs(overlap);
    f.taps = impulse_response(f.freq_coeffs, subcarriers);
    return f;
}

NyquistResiduals nyquist_residuals(std::span<const double> coeffs) {
    if (coeffs.size() != 4) throw ConfigError("Nyquist residuals are defined for K = 4");
    const double h0 = coeffs[0], h1 = coeffs[1], h2 = coeffs[2], h3 = coeffs[3];
    return {h0 + 2.0 * (h1 + h2 + h3), h1 * h1 + h3 * h3 - 1.0, 2.0 * h2 * h2 - 1.0};
}

namespace {

double dtft_magnitude(std::span<const double> taps, double frequency) {
    std::complex<double> acc{};
    for (std::size_t n = 0; n < taps.size(); ++n)
        acc += taps[n] * std::polar(1.0, -2.0 * std::numbers::pi * frequency * static_cast<double>(n));
    return std::abs(acc);
}

}  // namespace

double magnitude_db(const PrototypeFilter& filter, double frequency) {
    const double dc = dtft_magnitude(filter.taps, 0.0);
    const double mag = dtft_magnitude(filter.taps, frequency);
    return 20.0 * std::log10(std::max(mag / dc, 1e-300));
}

std::vector<FrequencyPoint> frequency_response(const PrototypeFilter& filter, std::size_t n_points,
                                               double f_lo, double f_hi) {
    if (n_points < 64) throw ConfigError("frequency_response needs at least 64 points");
    if (!(f_hi > f_lo)) throw ConfigError("frequency_response needs f_hi > f_lo");
    const double dc = dtft_magnitude(filter.taps, 0.0);
    std::vector<FrequencyPoint> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double f = f_lo + (f_hi - f_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double mag = dtft_magnitude(filter.taps, f);
        out[i] = {f, 20.0 * std::log10(std::max(mag / dc, 1e-300))};
    }
    return out;
}

}  // namespace fbmc
