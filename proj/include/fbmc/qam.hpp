#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fbmc/grid.hpp"

namespace fbmc {

using Bits = std::vector<std::uint8_t>;

/// Gray-labelled square QAM with unit average energy.
///
/// A label's leading half of bits selects the in-phase level and the trailing
/// half the quadrature level; each half is a Gray-coded PAM index where the
/// all-zero pattern is the most positive amplitude. For 4-QAM, label 00 maps
/// to (1 + j)/sqrt(2).
class QamMap {
public:
    explicit QamMap(int order);

    int order() const noexcept { return order_; }
    std::size_t bits_per_symbol() const noexcept { return bits_per_symbol_; }
    /// Points indexed by label value (first bit is the label's MSB).
    std::span<const cplx> points() const noexcept { return points_; }

private:
    int order_;
    std::size_t bits_per_symbol_;
    std::vector<cplx> points_;
};

std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, const QamMap& map);

/// Hard decision to the nearest point; equidistant points resolve to the
/// lowest label.
Bits demap_symbols(std::span<const cplx> symbols, const QamMap& map);

}  // namespace fbmc
