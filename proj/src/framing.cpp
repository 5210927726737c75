#include "fbmc/framing.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fbmc {

const char* to_string(CarrierRole role) {
    switch (role) {
    case CarrierRole::Null: return "null";
    case CarrierRole::Data: return "data";
    case CarrierRole::Pilot: return "pilot";
    }
    return "null";
}

Bits prbs_sequence(std::size_t length) {
    Bits out;
    out.reserve(length);
    PrbsState state;
    for (std::size_t i = 0; i < length; ++i) {
        auto [bit, next] = state.step();
        out.push_back(bit);
        state = next;
    }
    return out;
}

std::vector<double> pilot_values(const SystemParams& /*params*/, std::size_t count) {
    const Bits w = prbs_sequence(count);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = kPilotAmplitude * (1.0 - 2.0 * w[i]);
    return out;
}

std::vector<CarrierRole> carrier_roles(const SystemParams& params) {
    std::vector<CarrierRole> roles(params.fft_size, CarrierRole::Null);
    const std::size_t offset = params.band_offset();
    for (std::size_t i = 0; i < params.occupied_carriers; ++i)
        roles[offset + i] = params.is_pilot_index(i) ? CarrierRole::Pilot : CarrierRole::Data;
    return roles;
}

std::vector<std::size_t> pilot_positions(const SystemParams& params) {
    std::vector<std::size_t> out;
    out.reserve(params.pilot_carriers);
    for (std::size_t i = 0; i < params.occupied_carriers; i += params.pilot_spacing) out.push_back(i);
    return out;
}

std::vector<std::size_t> data_positions(const SystemParams& params) {
    std::vector<std::size_t> out;
    out.reserve(params.data_carriers);
    for (std::size_t i = 0; i < params.occupied_carriers; ++i)
        if (!params.is_pilot_index(i)) out.push_back(i);
    return out;
}

SymbolGrid build_frame(std::span<const cplx> data, const SystemParams& params) {
    if (params.data_carriers == 0 || data.size() % params.data_carriers != 0)
        throw std::invalid_argument("data length is not a multiple of data_carriers");
    const std::size_t n_sym = data.size() / params.data_carriers;
    SymbolGrid grid{ComplexGrid(params.fft_size, n_sym), carrier_roles(params), params.band_offset()};
    const std::vector<double> pilots = pilot_values(params, params.pilot_carriers);
    const std::size_t offset = grid.band_offset;

    for (std::size_t n = 0; n < n_sym; ++n) {
        std::size_t d = n * params.data_carriers;
        std::size_t p = 0;
        for (std::size_t i = 0; i < params.occupied_carriers; ++i) {
            if (params.is_pilot_index(i))
                grid.values(offset + i, n) = pilots[p++];
            else
                grid.values(offset + i, n) = data[d++];
        }
    }
    return grid;
}

Deframed deframe(const SymbolGrid& grid, const SystemParams& params) {
    if (grid.values.rows() != params.fft_size || grid.roles.size() != params.fft_size)
        throw std::invalid_argument("frame does not have fft_size rows");
    if (grid.roles != carrier_roles(params) || grid.band_offset != params.band_offset())
        throw std::invalid_argument("frame role mask does not match the configured layout");

    const std::size_t n_sym = grid.symbols();
    Deframed out{std::vector<cplx>(), ComplexGrid(params.pilot_carriers, n_sym)};
    out.data.reserve(params.data_carriers * n_sym);
    const std::size_t offset = grid.band_offset;
    for (std::size_t n = 0; n < n_sym; ++n) {
        std::size_t p = 0;
        for (std::size_t i = 0; i < params.occupied_carriers; ++i) {
            if (params.is_pilot_index(i))
                out.pilot_obs(p++, n) = grid.values(offset + i, n);
            else
                out.data.push_back(grid.values(offset + i, n));
        }
    }
    return out;
}

TrainingFrame training_frame(const SystemParams& params, std::uint64_t seed) {
    const QamMap qam(params.qam_order);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, qam.points().size() - 1);
    std::vector<cplx> payload(params.data_carriers * kTrainingSymbols);
    for (auto& v : payload) v = qam.points()[pick(rng)];
    TrainingFrame tf{build_frame(payload, params), std::move(payload)};
    return tf;
}

void write_frame_csv(std::ostream& os, const SymbolGrid& grid) {
    os << "symbol,carrier,role,re,im\n";
    os << std::setprecision(17);
    for (std::size_t n = 0; n < grid.symbols(); ++n)
        for (std::size_t k = 0; k < grid.values.rows(); ++k)
            os << n << ',' << k << ',' << to_string(grid.roles[k]) << ',' << grid.values(k, n).real() << ','
               << grid.values(k, n).imag() << '\n';
}

}  // namespace fbmc
