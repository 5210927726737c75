#include "fbmc/transceiver.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmc/oqam.hpp"

namespace fbmc {

Transceiver::Transceiver(SystemParams params)
    : params_((params.validate(), params)),
      filter_(make_prototype(params_.overlap_factor, params_.fft_size)),
      beta_(beta_coeffs(params_.fft_size, params_.overlap_factor)),
      qam_(params_.qam_order),
      pilots_(pilot_values(params_, params_.pilot_carriers)),
      pilot_positions_(fbmc::pilot_positions(params_)) {}

double Transceiver::carrier_power_sum() const noexcept {
    return static_cast<double>(params_.data_carriers) +
           static_cast<double>(params_.pilot_carriers) * kPilotAmplitude * kPilotAmplitude;
}

double Transceiver::nominal_power() const { return nominal_stream_power(filter_, carrier_power_sum()); }

double Transceiver::stream_snr_db(double es_n0_db) const {
    if (std::isinf(es_n0_db)) return es_n0_db;
    return es_n0_db + 10.0 * std::log10(carrier_power_sum() / static_cast<double>(params_.fft_size));
}

SampleStream Transceiver::transmit(const SymbolGrid& frame) const {
    if (frame.values.rows() != params_.fft_size) throw std::invalid_argument("frame does not match the FFT size");
    return synthesize(preprocess(frame.values), filter_, beta_);
}

HalfSymbolGrid Transceiver::receive(std::span<const cplx> stream, std::size_t symbols) const {
    if (symbols == 0) throw std::invalid_argument("nothing to receive");
    return derotate(analyze(stream, filter_, beta_, 2 * symbols));
}

ComplexGrid Transceiver::pilot_observations(const HalfSymbolGrid& derotated) const {
    const std::size_t n_sym = derotated.cols() / 2;
    const std::size_t offset = params_.band_offset();
    ComplexGrid obs(pilot_positions_.size(), n_sym);
    for (std::size_t p = 0; p < pilot_positions_.size(); ++p) {
        const std::size_t k = offset + pilot_positions_[p];
        for (std::size_t n = 0; n < n_sym; ++n) obs(p, n) = derotated(k, 2 * n + real_half(k));
    }
    return obs;
}

ChannelEstimate Transceiver::estimate(const ComplexGrid& pilot_obs, std::size_t symbol,
                                      const ReceiverConfig& config) const {
    const std::size_t n_sym = pilot_obs.cols();
    if (symbol >= n_sym) throw std::out_of_range("symbol outside the observed frame");
    const std::size_t window = std::min(std::max<std::size_t>(config.pilot_window, 1), n_sym);
    // Centered where possible, pushed inward at the frame edges.
    std::size_t lo = symbol >= (window - 1) / 2 ? symbol - (window - 1) / 2 : 0;
    if (lo + window > n_sym) lo = n_sym - window;

    ComplexGrid slice(pilot_obs.rows(), window);
    for (std::size_t p = 0; p < pilot_obs.rows(); ++p)
        for (std::size_t w = 0; w < window; ++w) slice(p, w) = pilot_obs(p, lo + w);
    const std::vector<cplx> raw = raw_pilot_estimates(slice, pilots_);

    switch (config.estimator) {
    case EstimatorKind::Linear:
        return interpolate_linear(raw, pilot_positions_, params_.occupied_carriers);
    case EstimatorKind::Cubic:
        return interpolate_cubic(raw, pilot_positions_, params_.occupied_carriers);
    default:
        throw std::invalid_argument("estimator '" + to_string(config.estimator) + "' does not use pilots");
    }
}

ChannelEstimate Transceiver::estimate_from_reference(const HalfSymbolGrid& received, const HalfSymbolGrid& reference,
                                                     EstimatorKind interpolation) const {
    if (received.rows() != reference.rows() || received.cols() != reference.cols() || received.cols() < 2)
        throw std::invalid_argument("reference grid does not match the received grid");
    const std::size_t n_sym = received.cols() / 2;
    const std::size_t offset = params_.band_offset();
    std::vector<cplx> raw(pilot_positions_.size());
    for (std::size_t p = 0; p < pilot_positions_.size(); ++p) {
        const std::size_t k = offset + pilot_positions_[p];
        cplx acc{};
        for (std::size_t n = 0; n < n_sym; ++n) {
            const std::size_t m = 2 * n + real_half(k);
            acc += received(k, m) / reference(k, m);
        }
        raw[p] = acc / static_cast<double>(n_sym);
    }
    switch (interpolation) {
    case EstimatorKind::Linear:
        return interpolate_linear(raw, pilot_positions_, params_.occupied_carriers);
    case EstimatorKind::Cubic:
        return interpolate_cubic(raw, pilot_positions_, params_.occupied_carriers);
    default:
        throw std::invalid_argument("estimator '" + to_string(interpolation) + "' does not interpolate pilots");
    }
}

TrainingSet Transceiver::training_set(const HalfSymbolGrid& received, const HalfSymbolGrid& reference) const {
    if (received.rows() != reference.rows() || received.cols() != reference.cols())
        throw std::invalid_argument("training grids differ in shape");
    const std::size_t offset = params_.band_offset();
    TrainingSet set;
    set.inputs.resize(params_.occupied_carriers);
    set.targets.resize(params_.occupied_carriers);
    for (std::size_t i = 0; i < params_.occupied_carriers; ++i) {
        for (std::size_t m = 0; m < received.cols(); ++m) {
            set.inputs[i].push_back(received(offset + i, m));
            set.targets[i].push_back(reference(offset + i, m));
        }
    }
    return set;
}

Demodulated Transceiver::demodulate(const HalfSymbolGrid& derotated, const ReceiverConfig& config,
                                    const std::vector<cplx>* response, const NeuralEqualizer* nn) const {
    if (derotated.rows() != params_.fft_size || derotated.cols() % 2 != 0)
        throw std::invalid_argument("received grid has the wrong shape");
    const std::size_t n_sym = derotated.cols() / 2;
    const std::size_t occ = params_.occupied_carriers;
    const std::size_t offset = params_.band_offset();

    HalfSymbolGrid eq(params_.fft_size, derotated.cols());
    std::size_t erasures = 0;

    if (config.estimator == EstimatorKind::Neural) {
        if (nn == nullptr || nn->carriers() != occ) throw std::logic_error("neural receiver needs a trained equalizer");
        for (std::size_t i = 0; i < occ; ++i)
            for (std::size_t m = 0; m < derotated.cols(); ++m) eq(offset + i, m) = nn->apply(i, derotated(offset + i, m));
    } else {
        if (response != nullptr && response->size() != occ)
            throw std::invalid_argument("channel response does not cover the occupied band");
        if (response == nullptr && config.estimator == EstimatorKind::Ideal)
            throw std::logic_error("ideal receiver needs the true channel response");
        const ComplexGrid obs = response != nullptr ? ComplexGrid{} : pilot_observations(derotated);
        std::vector<cplx> rx(2 * occ), h(2 * occ);
        for (std::size_t n = 0; n < n_sym; ++n) {
            const std::vector<cplx> resp = response != nullptr ? *response : estimate(obs, n, config).response;
            for (std::size_t i = 0; i < occ; ++i) {
                rx[2 * i] = derotated(offset + i, 2 * n);
                rx[2 * i + 1] = derotated(offset + i, 2 * n + 1);
                h[2 * i] = h[2 * i + 1] = resp[i];
            }
            const Equalized e = equalize(rx, h);
            for (std::size_t i = 0; i < occ; ++i) {
                eq(offset + i, 2 * n) = e.values[2 * i];
                eq(offset + i, 2 * n + 1) = e.values[2 * i + 1];
                if (e.erased[2 * i] != 0 || e.erased[2 * i + 1] != 0) ++erasures;
            }
        }
    }

    SymbolGrid grid{recombine(eq), carrier_roles(params_), offset};
    Demodulated out;
    out.data = deframe(grid, params_).data;
    out.erasures = erasures;
    return out;
}

}  // namespace fbmc
