#include "fbmc/qam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbmc/sysconfig.hpp"

namespace fbmc {

namespace {

unsigned gray_decode(unsigned g) {
    unsigned b = g;
    for (unsigned shift = g >> 1; shift != 0; shift >>= 1) b ^= shift;
    return b;
}

}  // namespace

QamMap::QamMap(int order) : order_(order) {
    unsigned axis_bits = 0;
    switch (order) {
    case 4: axis_bits = 1; break;
    case 16: axis_bits = 2; break;
    case 64: axis_bits = 3; break;
    default: throw ConfigError("QAM order must be 4, 16 or 64");
    }
    bits_per_symbol_ = 2 * axis_bits;
    const unsigned levels = 1u << axis_bits;
    // Mean energy of the odd-integer grid {±1, ±3, ...}^2 is 2(L^2 - 1)/3.
    const double scale = 1.0 / std::sqrt(2.0 * (levels * levels - 1.0) / 3.0);

    auto amplitude = [&](unsigned gray) {
        const unsigned index = gray_decode(gray);
        return (static_cast<double>(levels) - 1.0 - 2.0 * index) * scale;
    };

    points_.resize(static_cast<std::size_t>(order));
    for (unsigned label = 0; label < static_cast<unsigned>(order); ++label) {
        const unsigned i_bits = label >> axis_bits;
        const unsigned q_bits = label & (levels - 1);
        points_[label] = {amplitude(i_bits), amplitude(q_bits)};
    }
}

std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, const QamMap& map) {
    const std::size_t bps = map.bits_per_symbol();
    if (bits.size() % bps != 0)
        throw std::invalid_argument("bit count is not a multiple of bits_per_symbol");
    std::vector<cplx> out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (std::size_t b = 0; b < bps; ++b) label = (label << 1) | (bits[s * bps + b] & 1u);
        out[s] = map.points()[label];
    }
    return out;
}

Bits demap_symbols(std::span<const cplx> symbols, const QamMap& map) {
    const std::size_t bps = map.bits_per_symbol();
    const auto points = map.points();
    Bits out(symbols.size() * bps);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        unsigned best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (unsigned label = 0; label < points.size(); ++label) {
            const double dist = std::norm(symbols[s] - points[label]);
            if (dist < best_dist) {
                best_dist = dist;
                best = label;
            }
        }
        for (std::size_t b = 0; b < bps; ++b)
            out[s * bps + b] = static_cast<std::uint8_t>((best >> (bps - 1 - b)) & 1u);
    }
    return out;
}

}  // namespace fbmc
