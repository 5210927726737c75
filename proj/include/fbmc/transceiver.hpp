#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fbmc/channel.hpp"
#include "fbmc/estimation.hpp"
#include "fbmc/filterbank.hpp"
#include "fbmc/framing.hpp"
#include "fbmc/neural.hpp"
#include "fbmc/protofilter.hpp"
#include "fbmc/qam.hpp"
#include "fbmc/sysconfig.hpp"

namespace fbmc {

/// Receiver options that select how the channel is removed.
struct ReceiverConfig {
    EstimatorKind estimator = EstimatorKind::Cubic;
    /// Moving-average length, in symbols, applied to raw pilot estimates.
    std::size_t pilot_window = 1;
};

struct Demodulated {
    std::vector<cplx> data;  // symbol-major, data_carriers per symbol
    std::size_t erasures = 0;
};

/// Transmitter and receiver for one SystemParams, holding the prototype
/// filter, beta vector, pilot values and constellation. Immutable after
/// construction.
///
/// The receiver works in the derotated half-symbol domain: the channel is
/// removed from each complex half-symbol sample before the OQAM real-part
/// projection, which is the only place a complex channel gain can be undone
/// without mixing in the intrinsic (imaginary) interference.
class Transceiver {
public:
    explicit Transceiver(SystemParams params);

    const SystemParams& params() const noexcept { return params_; }
    const PrototypeFilter& filter() const noexcept { return filter_; }
    const BetaVector& beta() const noexcept { return beta_; }
    const QamMap& qam() const noexcept { return qam_; }
    std::span<const double> pilots() const noexcept { return pilots_; }
    std::span<const std::size_t> pilot_positions() const noexcept { return pilot_positions_; }

    /// Sum over occupied carriers of the mean symbol power (unit-energy data,
    /// 16/9 for pilots).
    double carrier_power_sum() const noexcept;
    /// Long-run mean power of the transmitted stream.
    double nominal_power() const;
    /// Stream-level SNR that gives the requested Es/N0 on each data carrier.
    double stream_snr_db(double es_n0_db) const;

    /// OQAM pre-processing followed by the synthesis bank.
    SampleStream transmit(const SymbolGrid& frame) const;

    /// Analysis bank over 2 * symbols half-symbols followed by OQAM derotation.
    HalfSymbolGrid receive(std::span<const cplx> stream, std::size_t symbols) const;

    /// Received values at the pilots' real-valued half-symbols: one row per
    /// pilot, one column per symbol.
    ComplexGrid pilot_observations(const HalfSymbolGrid& derotated) const;

    /// Per-carrier estimate for symbol `symbol` from the pilot observations.
    ChannelEstimate estimate(const ComplexGrid& pilot_obs, std::size_t symbol, const ReceiverConfig& config) const;

    /// Estimate from a known frame: each pilot's received real-half value is
    /// divided by the same position of `reference` (the frame through an ideal
    /// chain, intrinsic interference included), averaged over the frame, then
    /// interpolated across the band.
    ChannelEstimate estimate_from_reference(const HalfSymbolGrid& received, const HalfSymbolGrid& reference,
                                            EstimatorKind interpolation) const;

    /// Pairs every occupied carrier's received half-symbols with the clean
    /// reference obtained by passing the same known frame through an ideal
    /// chain.
    TrainingSet training_set(const HalfSymbolGrid& received, const HalfSymbolGrid& reference) const;

    /// Removes the channel, projects onto the real axis, joins the OQAM pairs
    /// and strips pilots and nulls. The neural estimator needs `nn`. Otherwise
    /// a given `response` (one value per occupied carrier) is used for every
    /// symbol, and without one the frame's own pilots are interpolated.
    Demodulated demodulate(const HalfSymbolGrid& derotated, const ReceiverConfig& config,
                           const std::vector<cplx>* response = nullptr, const NeuralEqualizer* nn = nullptr) const;

private:
    SystemParams params_;
    PrototypeFilter filter_;
    BetaVector beta_;
    QamMap qam_;
    std::vector<double> pilots_;
    std::vector<std::size_t> pilot_positions_;
};

}  // namespace fbmc
