#include "fbmc/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fbmc/fft.hpp"
#include "fbmc/oqam.hpp"

namespace fbmc {

BetaVector beta_coeffs(std::size_t subcarriers, std::size_t overlap) {
    if (subcarriers == 0 || overlap == 0) throw std::invalid_argument("beta_coeffs needs M, K > 0");
    const double lp = static_cast<double>(overlap * subcarriers) - 1.0;
    const double m = static_cast<double>(subcarriers);
    BetaVector beta(subcarriers);
    for (std::size_t k = 0; k < subcarriers; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        beta[k] = sign * std::polar(1.0, -std::numbers::pi * static_cast<double>(k) * (lp - 1.0) / m);
    }
    return beta;
}

std::size_t stream_length(const PrototypeFilter& filter, std::size_t half_symbols) {
    if (half_symbols == 0) return 0;
    return (half_symbols - 1) * (filter.subcarriers / 2) + filter.length();
}

namespace {

void check_dims(const RealGrid& grid, const PrototypeFilter& filter, const BetaVector& beta) {
    if (grid.rows() != filter.subcarriers || beta.size() != filter.subcarriers)
        throw std::invalid_argument("grid, filter and beta disagree on the subcarrier count");
}

}  // namespace

SampleStream synthesize(const RealGrid& grid, const PrototypeFilter& filter, const BetaVector& beta) {
    check_dims(grid, filter, beta);
    const std::size_t m_sub = filter.subcarriers;
    const std::size_t hop = m_sub / 2;
    const std::size_t lp = filter.length();
    SampleStream out(stream_length(filter, grid.cols()));
    if (out.empty()) return out;

    const Dft dft(m_sub);
    std::vector<cplx> carriers(m_sub), branch(m_sub);
    for (std::size_t m = 0; m < grid.cols(); ++m) {
        for (std::size_t k = 0; k < m_sub; ++k)
            carriers[k] = beta[k] * oqam_phase(k, m) * grid(k, m);
        dft.inverse(carriers, branch);
        // Branch p feeds samples p, p + M, p + 2M, ... through taps[p + qM].
        cplx* dst = out.data() + m * hop;
        for (std::size_t i = 0; i < lp; ++i) dst[i] += filter.taps[i] * branch[i % m_sub];
    }
    return out;
}

SampleStream direct_synthesize(const RealGrid& grid, const PrototypeFilter& filter,
                               const BetaVector& beta) {
    check_dims(grid, filter, beta);
    const std::size_t m_sub = filter.subcarriers;
    const std::size_t hop = m_sub / 2;
    const std::size_t lp = filter.length();
    SampleStream out(stream_length(filter, grid.cols()));
    if (out.empty()) return out;

    const double norm = 1.0 / std::sqrt(static_cast<double>(m_sub));
    std::vector<cplx> modulated(lp);
    for (std::size_t k = 0; k < m_sub; ++k) {
        for (std::size_t i = 0; i < lp; ++i)
            modulated[i] = filter.taps[i] * norm *
                           std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i * k % m_sub) /
                                               static_cast<double>(m_sub));
        // Upsample by M/2 and convolve.
        for (std::size_t m = 0; m < grid.cols(); ++m) {
            const cplx x = beta[k] * oqam_phase(k, m) * grid(k, m);
            if (x == cplx{}) continue;
            for (std::size_t i = 0; i < lp; ++i) out[m * hop + i] += x * modulated[i];
        }
    }
    return out;
}

HalfSymbolGrid analyze(std::span<const cplx> stream, const PrototypeFilter& filter,
                       const BetaVector& beta, std::optional<std::size_t> columns) {
    const std::size_t m_sub = filter.subcarriers;
    const std::size_t hop = m_sub / 2;
    const std::size_t lp = filter.length();
    if (beta.size() != m_sub) throw std::invalid_argument("beta size does not match the filter");
    if (stream.size() < lp) throw std::invalid_argument("stream shorter than the prototype filter");

    const std::size_t available = (stream.size() - lp) / hop + 1;
    const std::size_t n_cols = columns.value_or(available);
    if (n_cols > available) throw std::invalid_argument("stream too short for the requested columns");

    const Dft dft(m_sub);
    const double gain = static_cast<double>(m_sub) / filter.energy();
    HalfSymbolGrid out(m_sub, n_cols);
    std::vector<cplx> folded(m_sub), spectrum(m_sub);
    for (std::size_t m = 0; m < n_cols; ++m) {
        std::fill(folded.begin(), folded.end(), cplx{});
        const cplx* src = stream.data() + m * hop;
        for (std::size_t i = 0; i < lp; ++i) folded[i % m_sub] += filter.taps[i] * src[i];
        dft.forward(folded, spectrum);
        for (std::size_t k = 0; k < m_sub; ++k) out(k, m) = gain * std::conj(beta[k]) * spectrum[k];
    }
    return out;
}

namespace {

PipelineDelay measure_delay(std::size_t subcarriers, std::size_t overlap) {
    const PrototypeFilter filter = make_prototype(overlap, subcarriers);
    const BetaVector beta = beta_coeffs(subcarriers, overlap);
    const std::size_t carrier = 1;
    const std::size_t pulse_col = 2 * overlap;
    const std::size_t n_cols = 4 * overlap + 1;

    RealGrid grid(subcarriers, n_cols);
    grid(carrier, pulse_col) = 1.0;
    const SampleStream stream = synthesize(grid, filter, beta);

    const HalfSymbolGrid rx = analyze(stream, filter, beta, n_cols);
    std::size_t best_col = 0;
    for (std::size_t m = 1; m < n_cols; ++m)
        if (std::abs(rx(carrier, m)) > std::abs(rx(carrier, best_col))) best_col = m;

    // Causal matched filter of the pulse's subcarrier: conj(b[Lp - 1 - i]).
    const std::size_t lp = filter.length();
    std::vector<cplx> matched(lp);
    for (std::size_t i = 0; i < lp; ++i) {
        const std::size_t t = lp - 1 - i;
        matched[i] = filter.taps[t] *
                     std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t * carrier % subcarriers) /
                                         static_cast<double>(subcarriers));
    }
    const std::size_t start = pulse_col * (subcarriers / 2);
    std::size_t best_lag = 0;
    double best_mag = -1.0;
    for (std::size_t n = start; n < stream.size(); ++n) {
        cplx acc{};
        for (std::size_t i = 0; i < lp && i <= n; ++i) acc += matched[i] * stream[n - i];
        if (std::abs(acc) > best_mag) {
            best_mag = std::abs(acc);
            best_lag = n - start;
        }
    }
    return {best_col - pulse_col, best_lag};
}

}  // namespace

PipelineDelay pipeline_delay(std::size_t subcarriers, std::size_t overlap) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, std::size_t>, PipelineDelay> cache;
    const auto key = std::make_pair(subcarriers, overlap);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const PipelineDelay d = measure_delay(subcarriers, overlap);
    std::lock_guard lock(mutex);
    return cache.emplace(key, d).first->second;
}

double nominal_stream_power(const PrototypeFilter& filter, double carrier_power_sum) {
    const double m = static_cast<double>(filter.subcarriers);
    return carrier_power_sum * filter.energy() / (m * m);
}

}  // namespace fbmc
