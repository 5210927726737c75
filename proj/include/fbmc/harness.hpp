#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fbmc/scenario.hpp"

namespace fbmc {

struct BerRecord {
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    std::string estimator;
    std::string channel;
    int qam_order = 4;
    std::uint64_t seed = 0;
    double wall_time_seconds = 0.0;
    bool training_converged = true;
};

/// Equal in everything except wall time.
bool same_outcome(const BerRecord& a, const BerRecord& b);

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of sweep point `index`: master ^ splitmix64(index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// One Monte-Carlo trial at scenario.snr_db. Frames are simulated in batches
/// of `threads` (0 picks the hardware concurrency) but counted in order, so
/// the result does not depend on the thread count.
BerRecord run_trial(const Scenario& scenario, unsigned threads = 1);

/// One trial per SNR, seeds from derive_seed(scenario.seed, index). Points
/// run concurrently when threads > 1.
std::vector<BerRecord> sweep(const Scenario& scenario, std::span<const double> snr_list, unsigned threads = 1);

/// Inclusive arithmetic range start, start + step, ... up to stop.
std::vector<double> snr_range(double start, double stop, double step);

inline constexpr const char* kCsvHeader =
    "snr_db,bits_sent,bit_errors,ber,estimator,channel,qam_order,seed,wall_time_seconds,training_converged";

void emit_csv(std::ostream& os, std::span<const BerRecord> records);
void emit_csv(const std::filesystem::path& path, std::span<const BerRecord> records);
std::vector<BerRecord> parse_csv(std::istream& is);

}  // namespace fbmc
