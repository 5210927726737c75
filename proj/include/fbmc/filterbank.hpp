#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fbmc/grid.hpp"
#include "fbmc/protofilter.hpp"

namespace fbmc {

using SampleStream = std::vector<cplx>;
using BetaVector = std::vector<cplx>;

/// beta_k = (-1)^k exp(-j pi k (Lp - 1) / M), Lp = K M - 1.
BetaVector beta_coeffs(std::size_t subcarriers, std::size_t overlap);

/// Samples produced by synthesizing `half_symbols` columns:
/// (2N - 1) M / 2 + Lp for 2N half-symbols, 0 for an empty grid.
std::size_t stream_length(const PrototypeFilter& filter, std::size_t half_symbols);

/// Polyphase synthesis bank. Column m of `grid` is phased by j^(k+m),
/// weighted by beta, taken through a unitary M-point IDFT, filtered by the
/// polyphase branches of the prototype and overlap-added at stride M/2.
SampleStream synthesize(const RealGrid& grid, const PrototypeFilter& filter, const BetaVector& beta);

/// Reference synthesis as a sum of modulated FIR filters
/// b_k[i] = taps[i] exp(j 2 pi i k / M) / sqrt(M), one per subcarrier.
/// Quadratic cost; intended as a test oracle.
SampleStream direct_synthesize(const RealGrid& grid, const PrototypeFilter& filter,
                               const BetaVector& beta);

/// Matched analysis bank: for each half-symbol window of Lp samples starting
/// at m M/2, weight by the prototype, fold onto M branches, apply a unitary
/// DFT and conj(beta), and normalize by M / energy so that an ideal cascade
/// has unit gain. The OQAM phase is left in place for the post-processor.
///
/// `columns` defaults to every complete window in the stream.
HalfSymbolGrid analyze(std::span<const cplx> stream, const PrototypeFilter& filter,
                       const BetaVector& beta, std::optional<std::size_t> columns = std::nullopt);

struct PipelineDelay {
    /// Column offset between a synthesized half-symbol and its analysis output.
    std::size_t half_symbols = 0;
    /// Latency in samples from the first sample of a pulse to the peak of
    /// the synthesis-analysis cascade response (Lp - 1 for a symmetric FIR).
    std::size_t samples = 0;

    friend bool operator==(const PipelineDelay&, const PipelineDelay&) = default;
};

/// Measured once per (M, K) by pulse propagation and cached.
PipelineDelay pipeline_delay(std::size_t subcarriers, std::size_t overlap);

/// Long-run average power of the synthesized stream when carrier k carries
/// complex symbols of mean power P_k and `carrier_power_sum` = sum_k P_k.
double nominal_stream_power(const PrototypeFilter& filter, double carrier_power_sum);

}  // namespace fbmc
