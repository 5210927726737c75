#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fbmc/grid.hpp"
#include "fbmc/protofilter.hpp"

namespace fbmc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline constexpr double kSirFloorDb = 50.0;

/// Symbol-domain SIR of the ideal-channel chain (OQAM, synthesis, analysis,
/// inverse OQAM) for random 4-QAM on every carrier. Both banks use `filter`.
double back_to_back_sir_db(const PrototypeFilter& filter, std::size_t symbols = 16, std::uint64_t seed = 7);

/// Relative L2 distance between the polyphase and direct synthesis outputs
/// on a random real grid.
double polyphase_error(std::size_t subcarriers, std::size_t half_symbols, std::uint64_t seed);

/// Closed-form least squares for y -> d with d ~ W (Re y, Im y): solves the
/// 2x2 normal equations. Throws when the inputs are rank deficient.
std::array<std::array<double, 2>, 2> least_squares_2x2(const std::vector<cplx>& inputs,
                                                        const std::vector<cplx>& targets);

std::vector<CheckResult> selftest();
/// Same checks, with the back-to-back SIR run on `sir_filter` (M = 16).
std::vector<CheckResult> selftest(const PrototypeFilter& sir_filter);

}  // namespace fbmc
