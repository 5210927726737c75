#pragma once

#include <cstddef>
#include <span>

#include "fbmc/grid.hpp"

namespace fbmc {

/// Unitary DFT of a fixed size backed by FFTW.
///
/// Plans are created once per size and shared; transforms on distinct
/// buffers may run concurrently.
class Dft {
public:
    explicit Dft(std::size_t size);

    std::size_t size() const noexcept { return size_; }

    /// out[k] = (1/sqrt(N)) sum_n in[n] exp(-j 2 pi k n / N)
    void forward(std::span<const cplx> in, std::span<cplx> out) const;
    /// out[n] = (1/sqrt(N)) sum_k in[k] exp(+j 2 pi k n / N)
    void inverse(std::span<const cplx> in, std::span<cplx> out) const;

private:
    std::size_t size_;
    void* forward_plan_;
    void* inverse_plan_;
};

}  // namespace fbmc
