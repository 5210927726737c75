#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "fbmc/grid.hpp"
#include "fbmc/qam.hpp"
#include "fbmc/sysconfig.hpp"

namespace fbmc {

enum class CarrierRole : std::uint8_t { Null, Data, Pilot };

const char* to_string(CarrierRole role);

/// Frequency frame: M subcarrier rows x N symbol columns plus the per-row
/// role mask, which is the same for every column.
struct SymbolGrid {
    ComplexGrid values;
    std::vector<CarrierRole> roles;
    std::size_t band_offset = 0;

    std::size_t symbols() const noexcept { return values.cols(); }
};

/// Eleven-stage Fibonacci LFSR for x^11 + x^9 + 1.
///
/// Bit i of `registers` holds stage b_{i+1}. Each step outputs b11, shifts
/// every stage up by one and loads b9 XOR b11 into b1.
struct PrbsState {
    std::uint16_t registers = 0x7FF;

    static constexpr unsigned kStages = 11;
    static constexpr unsigned kPeriod = (1u << kStages) - 1;

    /// Returns the output bit and the successor state.
    std::pair<std::uint8_t, PrbsState> step() const noexcept {
        const auto b9 = static_cast<unsigned>((registers >> 8) & 1u);
        const auto b11 = static_cast<unsigned>((registers >> 10) & 1u);
        const auto next = static_cast<std::uint16_t>(((registers << 1) | (b9 ^ b11)) & kPeriod);
        return {static_cast<std::uint8_t>(b11), PrbsState{next}};
    }

    friend bool operator==(const PrbsState&, const PrbsState&) = default;
};

Bits prbs_sequence(std::size_t length);

/// Pilot amplitude: (4/3)(1 - 2 w_i) for the i-th PRBS bit w_i.
inline constexpr double kPilotAmplitude = 4.0 / 3.0;

std::vector<double> pilot_values(const SystemParams& params, std::size_t count);

/// Role of each of the M rows for `params`.
std::vector<CarrierRole> carrier_roles(const SystemParams& params);

/// Occupied-band indices of the pilots / data carriers, ascending.
std::vector<std::size_t> pilot_positions(const SystemParams& params);
std::vector<std::size_t> data_positions(const SystemParams& params);

/// Places `data` (symbol-major, data_carriers values per column) and the
/// standard pilots into a frame of data.size() / data_carriers columns.
SymbolGrid build_frame(std::span<const cplx> data, const SystemParams& params);

struct Deframed {
    std::vector<cplx> data;   // symbol-major
    ComplexGrid pilot_obs;    // pilot_carriers rows x N columns
};

Deframed deframe(const SymbolGrid& grid, const SystemParams& params);

struct TrainingFrame {
    SymbolGrid grid;
    std::vector<cplx> payload;  // the data values that were placed, symbol-major
};

inline constexpr std::size_t kTrainingSymbols = 4;

/// Four columns of seeded pseudo-random QAM data plus standard pilots.
TrainingFrame training_frame(const SystemParams& params, std::uint64_t seed);

/// CSV dump: symbol, carrier, role, re, im.
void write_frame_csv(std::ostream& os, const SymbolGrid& grid);

}  // namespace fbmc
