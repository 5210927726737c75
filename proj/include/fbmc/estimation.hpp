#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fbmc/grid.hpp"

namespace fbmc {

enum class EstimatorKind { Linear, Cubic, Neural, Ideal };

std::string to_string(EstimatorKind kind);
/// Accepts "linear", "cubic", "neural" or "ideal".
EstimatorKind parse_estimator(const std::string& text);

/// Channel response per occupied carrier, ascending occupied-band index.
struct ChannelEstimate {
    std::vector<cplx> response;
};

/// H_p(m) = Y_p(m) / X_p(m). `rx_pilots` has one row per pilot and one column
/// per received symbol in the averaging window; the result is the mean of the
/// per-symbol quotients.
std::vector<cplx> raw_pilot_estimates(const ComplexGrid& rx_pilots, std::span<const double> tx_pilots);

/// Piecewise-linear interpolation between pilot knots.
ChannelEstimate interpolate_linear(std::span<const cplx> pilot_estimates,
                                   std::span<const std::size_t> pilot_positions, std::size_t occupied);

/// Second derivatives of the natural cubic spline through (x, y):
/// z_0 = z_{n-1} = 0 and, for the interior knots,
///   h_{i-1} z_{i-1} + 2 (h_{i-1} + h_i) z_i + h_i z_{i+1}
///     = 6 ((y_{i+1} - y_i) / h_i - (y_i - y_{i-1}) / h_{i-1}),
/// solved with the Thomas algorithm.
std::vector<cplx> spline_second_derivatives(std::span<const double> x, std::span<const cplx> y);

/// Natural cubic spline between pilot knots. For a carrier at fractional
/// position a in [pos_m, pos_{m+1}] with spacing d:
///   H = A y_m + B y_{m+1} + C z_m + D z_{m+1},
///   A = 1 - a, B = a, C = (A^3 - A) d^2 / 6, D = (B^3 - B) d^2 / 6.
ChannelEstimate interpolate_cubic(std::span<const cplx> pilot_estimates,
                                  std::span<const std::size_t> pilot_positions, std::size_t occupied);

inline constexpr double kErasureThreshold = 1e-9;

struct Equalized {
    std::vector<cplx> values;
    std::vector<std::uint8_t> erased;

    std::size_t erasures() const;
};

/// One-tap zero forcing: values[i] = rx[i] / response[i]. Entries where
/// |response| <= kErasureThreshold are flagged and set to zero.
Equalized equalize(std::span<const cplx> rx, std::span<const cplx> response);

}  // namespace fbmc
