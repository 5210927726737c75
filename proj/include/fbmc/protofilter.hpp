#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbmc {

/// Nyquist prototype filter of an FBMC filter bank.
///
/// `freq_coeffs` are the frequency-domain samples h_0..h_{K-1} and `taps` the
/// real, linear-phase impulse response of length K*M - 1, scaled so the
/// centre tap is 1.
struct PrototypeFilter {
    std::size_t overlap = 0;
    std::size_t subcarriers = 0;
    std::vector<double> freq_coeffs;
    std::vector<double> taps;

    std::size_t length() const noexcept { return taps.size(); }
    /// Sum of squared taps.
    double energy() const noexcept;
};

/// Frequency coefficients for overlap factor K (1 or 4).
std::vector<double> design_coeffs(std::size_t overlap);

/// Frequency-sampling synthesis:
///   taps[i] = h_0 + 2 * sum_{k>=1} h_k cos(2 pi k (i+1) / (K M)),  i = 0..KM-2,
/// normalized so the centre tap (i = KM/2 - 1) equals 1.
std::vector<double> impulse_response(std::span<const double> coeffs, std::size_t subcarriers);

PrototypeFilter make_prototype(std::size_t overlap, std::size_t subcarriers);

struct NyquistResiduals {
    double sum;           // h0 + 2(h1 + h2 + h3)
    double odd_pair;      // h1^2 + h3^2 - 1
    double middle;        // 2 h2^2 - 1
};

NyquistResiduals nyquist_residuals(std::span<const double> coeffs);

struct FrequencyPoint {
    double frequency;     // cycles per sample
    double magnitude_db;  // relative to the DC response
};

/// |DTFT| of the taps at one frequency, in dB relative to DC.
double magnitude_db(const PrototypeFilter& filter, double frequency);

/// Uniform grid of n_points over [f_lo, f_hi] inclusive.
std::vector<FrequencyPoint> frequency_response(const PrototypeFilter& filter, std::size_t n_points,
                                               double f_lo, double f_hi);

}  // namespace fbmc
