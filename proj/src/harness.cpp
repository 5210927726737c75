#include "fbmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fbmc/transceiver.hpp"

namespace fbmc {

bool same_outcome(const BerRecord& a, const BerRecord& b) {
    const bool snr_equal = a.snr_db == b.snr_db || (std::isnan(a.snr_db) && std::isnan(b.snr_db));
    return snr_equal && a.bits_sent == b.bits_sent && a.bit_errors == b.bit_errors && a.ber == b.ber &&
           a.estimator == b.estimator && a.channel == b.channel && a.qam_order == b.qam_order && a.seed == b.seed &&
           a.training_converged == b.training_converged;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return master ^ splitmix64(index); }

namespace {

// Independent RNG streams inside one trial.
enum : std::uint64_t { kTrainPayload = 1, kTrainNoise = 2, kFrameBase = 16 };

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ splitmix64(~tag)); }

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

BerRecord run_trial(const Scenario& scenario, unsigned threads) {
    const auto t0 = std::chrono::steady_clock::now();
    scenario.validate();
    threads = resolve_threads(threads);

    const Transceiver trx(scenario.params);
    const ChannelProfile profile = scenario.channel_profile();
    const double snr = trx.stream_snr_db(scenario.snr_db);
    const double power = trx.nominal_power();
    const ReceiverConfig rc{scenario.estimator, scenario.pilot_window};
    const std::size_t n_sym = scenario.frame_symbols;

    auto through_channel = [&](const SymbolGrid& grid, std::uint64_t noise_seed) {
        const SampleStream s = trx.transmit(grid);
        return apply_awgn(apply_multipath(s, profile), snr, noise_seed, power);
    };

    BerRecord rec;
    rec.snr_db = scenario.snr_db;
    rec.estimator = to_string(scenario.estimator);
    rec.channel = to_string(scenario.channel);
    rec.qam_order = scenario.params.qam_order;
    rec.seed = scenario.seed;

    // The known training frame, through the channel and through an ideal chain.
    const bool uses_training =
        scenario.estimator == EstimatorKind::Neural ||
        (scenario.estimator != EstimatorKind::Ideal && scenario.pilot_source == PilotSource::Training);
    NeuralEqualizer nn;
    std::optional<std::vector<cplx>> response;
    if (uses_training) {
        const TrainingFrame tf = training_frame(scenario.params, stream_seed(scenario.seed, kTrainPayload));
        const HalfSymbolGrid rx =
            trx.receive(through_channel(tf.grid, stream_seed(scenario.seed, kTrainNoise)), kTrainingSymbols);
        const HalfSymbolGrid ref = trx.receive(trx.transmit(tf.grid), kTrainingSymbols);
        if (scenario.estimator == EstimatorKind::Neural) {
            nn = nn_train(trx.training_set(rx, ref), scenario.nn);
            rec.training_converged = nn.converged();
        } else {
            response = trx.estimate_from_reference(rx, ref, scenario.estimator).response;
        }
    }
    if (scenario.estimator == EstimatorKind::Ideal)
        response = true_frequency_response(profile, scenario.params.fft_size, scenario.params.band_offset(),
                                           scenario.params.occupied_carriers);

    const std::size_t bps = scenario.params.bits_per_symbol();
    const std::size_t frame_bits = n_sym * scenario.params.data_carriers * bps;

    auto simulate = [&](std::size_t frame) -> std::uint64_t {
        std::mt19937_64 rng(stream_seed(scenario.seed, kFrameBase + 2 * frame));
        Bits bits(frame_bits);
        for (std::size_t i = 0; i < frame_bits; i += 64) {
            const std::uint64_t word = rng();
            for (std::size_t b = 0; b < 64 && i + b < frame_bits; ++b) bits[i + b] = (word >> b) & 1U;
        }
        const SymbolGrid grid = build_frame(map_bits(bits, trx.qam()), scenario.params);
        const SampleStream y = through_channel(grid, stream_seed(scenario.seed, kFrameBase + 2 * frame + 1));
        const HalfSymbolGrid rx = trx.receive(y, n_sym);
        if (rx.cols() != 2 * n_sym) throw std::logic_error("receiver lost frame alignment");
        const Demodulated d = trx.demodulate(rx, rc, response ? &*response : nullptr, &nn);
        const Bits hat = demap_symbols(d.data, trx.qam());
        if (hat.size() != bits.size()) throw std::logic_error("demapped bit count does not match the frame");
        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != hat[i];
        return errors;
    };

    const std::size_t batch = std::max<std::size_t>(1, threads);
    std::vector<std::uint64_t> errors(batch);
    std::size_t frame = 0;
    bool done = false;
    while (!done) {
        parallel_for(batch, threads, [&](std::size_t i) { errors[i] = simulate(frame + i); });
        for (std::size_t i = 0; i < batch && !done; ++i) {
            rec.bits_sent += frame_bits;
            rec.bit_errors += errors[i];
            done = rec.bit_errors >= scenario.min_errors || rec.bits_sent >= scenario.max_bits;
        }
        frame += batch;
    }

    rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_sent);
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<BerRecord> sweep(const Scenario& scenario, std::span<const double> snr_list, unsigned threads) {
    if (snr_list.empty()) throw std::invalid_argument("empty SNR list");
    for (std::size_t i = 1; i < snr_list.size(); ++i)
        if (!(snr_list[i] > snr_list[i - 1])) throw std::invalid_argument("SNR list must be strictly increasing");
    threads = resolve_threads(threads);

    std::vector<BerRecord> out(snr_list.size());
    // Spread the thread budget across points first, then inside each trial.
    const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(threads, snr_list.size()));
    const unsigned inner = std::max(1U, threads / std::max(1U, outer));
    parallel_for(snr_list.size(), outer, [&](std::size_t i) {
        Scenario s = scenario;
        s.snr_db = snr_list[i];
        s.seed = derive_seed(scenario.seed, i);
        out[i] = run_trial(s, inner);
    });
    return out;
}

std::vector<double> snr_range(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("SNR step must be positive");
    if (stop < start) throw std::invalid_argument("SNR stop is below start");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Splits one CSV record; quoted fields may contain separators and newlines.
bool read_record(std::istream& is, std::vector<std::string>& fields) {
    fields.clear();
    if (is.peek() == std::char_traits<char>::eof()) return false;
    std::string cur;
    bool quoted = false;
    char c;
    while (is.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (is.peek() == '"') {
                    cur += '"';
                    is.get();
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw std::runtime_error("unterminated quoted CSV field");
    fields.push_back(std::move(cur));
    return true;
}

}  // namespace

void emit_csv(std::ostream& os, std::span<const BerRecord> records) {
    os << kCsvHeader << "\r\n";
    for (const BerRecord& r : records) {
        os << number(r.snr_db) << ',' << r.bits_sent << ',' << r.bit_errors << ',' << number(r.ber) << ','
           << quote(r.estimator) << ',' << quote(r.channel) << ',' << r.qam_order << ',' << r.seed << ','
           << number(r.wall_time_seconds) << ',' << (r.training_converged ? "true" : "false") << "\r\n";
    }
}

void emit_csv(const std::filesystem::path& path, std::span<const BerRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    emit_csv(out, records);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<BerRecord> parse_csv(std::istream& is) {
    std::vector<std::string> f;
    if (!read_record(is, f)) throw std::runtime_error("CSV is empty");
    std::string header;
    for (std::size_t i = 0; i < f.size(); ++i) header += (i ? "," : "") + f[i];
    if (header != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + header);

    std::vector<BerRecord> out;
    while (read_record(is, f)) {
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 10) throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields");
        BerRecord r;
        r.snr_db = std::stod(f[0]);
        r.bits_sent = std::stoull(f[1]);
        r.bit_errors = std::stoull(f[2]);
        r.ber = std::stod(f[3]);
        r.estimator = f[4];
        r.channel = f[5];
        r.qam_order = std::stoi(f[6]);
        r.seed = std::stoull(f[7]);
        r.wall_time_seconds = std::stod(f[8]);
        if (f[9] != "true" && f[9] != "false") throw std::runtime_error("bad training_converged value " + f[9]);
        r.training_converged = f[9] == "true";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace fbmc
