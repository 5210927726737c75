#include "fbmc/oqam.hpp"

#include <stdexcept>

namespace fbmc {

RealGrid preprocess(const ComplexGrid& symbols) {
    RealGrid out(symbols.rows(), 2 * symbols.cols());
    for (std::size_t k = 0; k < symbols.rows(); ++k) {
        const std::size_t re_slot = real_half(k);
        for (std::size_t n = 0; n < symbols.cols(); ++n) {
            const cplx c = symbols(k, n);
            out(k, 2 * n + re_slot) = c.real();
            out(k, 2 * n + 1 - re_slot) = c.imag();
        }
    }
    return out;
}

HalfSymbolGrid apply_phase(const RealGrid& grid) {
    HalfSymbolGrid out(grid.rows(), grid.cols());
    for (std::size_t k = 0; k < grid.rows(); ++k)
        for (std::size_t m = 0; m < grid.cols(); ++m) out(k, m) = oqam_phase(k, m) * grid(k, m);
    return out;
}

HalfSymbolGrid derotate(const HalfSymbolGrid& grid) {
    HalfSymbolGrid out(grid.rows(), grid.cols());
    for (std::size_t k = 0; k < grid.rows(); ++k)
        for (std::size_t m = 0; m < grid.cols(); ++m)
            out(k, m) = std::conj(oqam_phase(k, m)) * grid(k, m);
    return out;
}

ComplexGrid recombine(const HalfSymbolGrid& derotated) {
    if (derotated.cols() % 2 != 0)
        throw std::invalid_argument("OQAM post-processing needs an even number of half-symbols");
    ComplexGrid out(derotated.rows(), derotated.cols() / 2);
    for (std::size_t k = 0; k < derotated.rows(); ++k) {
        const std::size_t re_slot = real_half(k);
        for (std::size_t n = 0; n < out.cols(); ++n)
            out(k, n) = {derotated(k, 2 * n + re_slot).real(), derotated(k, 2 * n + 1 - re_slot).real()};
    }
    return out;
}

ComplexGrid postprocess(const HalfSymbolGrid& grid) {
    if (grid.cols() % 2 != 0)
        throw std::invalid_argument("OQAM post-processing needs an even number of half-symbols");
    return recombine(derotate(grid));
}

}  // namespace fbmc
