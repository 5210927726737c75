#pragma once

#include <cstddef>

#include "fbmc/grid.hpp"

namespace fbmc {

// OQAM staggering convention:
//   phase    theta[k, m] = j^(k + m)
//   stagger  even k emits (Re, Im) at half-symbols (2n, 2n+1), odd k emits (Im, Re)

inline cplx oqam_phase(std::size_t carrier, std::size_t half_symbol) {
    switch ((carrier + half_symbol) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

/// 0 when carrier k sends the real part first, 1 when it sends it second.
inline std::size_t real_half(std::size_t carrier) { return carrier % 2; }

/// Splits each complex symbol into two staggered real half-symbol samples.
/// The phase theta is not applied here; synthesis applies it.
RealGrid preprocess(const ComplexGrid& symbols);

/// Multiplies each half-symbol sample by theta[k, m].
HalfSymbolGrid apply_phase(const RealGrid& grid);

/// Multiplies each half-symbol sample by conj(theta[k, m]).
HalfSymbolGrid derotate(const HalfSymbolGrid& grid);

/// Keeps the real part of each (already derotated) half-symbol and joins
/// the staggered pairs back into complex symbols.
ComplexGrid recombine(const HalfSymbolGrid& derotated);

/// derotate followed by recombine.
ComplexGrid postprocess(const HalfSymbolGrid& grid);

}  // namespace fbmc
