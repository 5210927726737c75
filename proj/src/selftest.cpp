#include "fbmc/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fbmc/estimation.hpp"
#include "fbmc/filterbank.hpp"
#include "fbmc/framing.hpp"
#include "fbmc/neural.hpp"
#include "fbmc/oqam.hpp"

namespace fbmc {

double back_to_back_sir_db(const PrototypeFilter& filter, std::size_t symbols, std::uint64_t seed) {
    const std::size_t m = filter.subcarriers;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin;
    const double a = 1.0 / std::sqrt(2.0);
    ComplexGrid x(m, symbols);
    for (auto& v : x.flat()) v = {coin(rng) ? a : -a, coin(rng) ? a : -a};

    const BetaVector beta = beta_coeffs(m, filter.overlap);
    const SampleStream s = synthesize(preprocess(x), filter, beta);
    const ComplexGrid y = postprocess(analyze(s, filter, beta, 2 * symbols));

    double sig = 0.0, err = 0.0;
    for (std::size_t i = 0; i < x.flat().size(); ++i) {
        sig += std::norm(x.flat()[i]);
        err += std::norm(y.flat()[i] - x.flat()[i]);
    }
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(sig / err);
}

double polyphase_error(std::size_t subcarriers, std::size_t half_symbols, std::uint64_t seed) {
    const PrototypeFilter filter = make_prototype(kOverlapFactor, subcarriers);
    const BetaVector beta = beta_coeffs(subcarriers, kOverlapFactor);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    RealGrid grid(subcarriers, half_symbols);
    for (auto& v : grid.flat()) v = g(rng);
    const SampleStream fast = synthesize(grid, filter, beta);
    const SampleStream slow = direct_synthesize(grid, filter, beta);
    if (fast.size() != slow.size()) return std::numeric_limits<double>::infinity();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
        num += std::norm(fast[i] - slow[i]);
        den += std::norm(slow[i]);
    }
    return std::sqrt(num / den);
}

std::array<std::array<double, 2>, 2> least_squares_2x2(const std::vector<cplx>& inputs,
                                                        const std::vector<cplx>& targets) {
    if (inputs.size() != targets.size() || inputs.empty()) throw std::invalid_argument("bad least-squares data");
    // R = sum x x^T, P_r = sum d_r x; W_r = R^-1 P_r.
    double r00 = 0, r01 = 0, r11 = 0;
    std::array<std::array<double, 2>, 2> p{};
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double x0 = inputs[i].real(), x1 = inputs[i].imag();
        r00 += x0 * x0;
        r01 += x0 * x1;
        r11 += x1 * x1;
        const double d[2] = {targets[i].real(), targets[i].imag()};
        for (int r = 0; r < 2; ++r) {
            p[r][0] += d[r] * x0;
            p[r][1] += d[r] * x1;
        }
    }
    const double det = r00 * r11 - r01 * r01;
    if (std::abs(det) <= 1e-12 * (r00 * r11 + 1e-300)) throw std::domain_error("least-squares inputs are rank deficient");
    std::array<std::array<double, 2>, 2> w{};
    for (int r = 0; r < 2; ++r) {
        w[r][0] = (r11 * p[r][0] - r01 * p[r][1]) / det;
        w[r][1] = (r00 * p[r][1] - r01 * p[r][0]) / det;
    }
    return w;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

CheckResult check_polyphase() {
    double worst = 0.0;
    for (std::size_t m : {8, 16, 32})
        for (std::uint64_t s = 0; s < 4; ++s) worst = std::max(worst, polyphase_error(m, 16, 100 + s + m));
    return {"polyphase-vs-direct", worst <= 1e-9, "max relative error " + fmt(worst)};
}

CheckResult check_oqam_round_trip() {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    ComplexGrid x(16, 6);
    for (auto& v : x.flat()) v = {g(rng), g(rng)};
    const ComplexGrid back = postprocess(apply_phase(preprocess(x)));
    double worst = 0.0;
    for (std::size_t i = 0; i < x.flat().size(); ++i) worst = std::max(worst, std::abs(back.flat()[i] - x.flat()[i]));
    return {"oqam-round-trip", worst <= 1e-12, "max abs error " + fmt(worst)};
}

CheckResult check_sir(const PrototypeFilter& filter) {
    const double sir = back_to_back_sir_db(filter);
    return {"back-to-back-sir", sir >= kSirFloorDb,
            "M=" + std::to_string(filter.subcarriers) + " SIR " + fmt(sir) + " dB (floor " + fmt(kSirFloorDb) + ")"};
}

CheckResult check_nyquist() {
    const NyquistResiduals r = nyquist_residuals(design_coeffs(kOverlapFactor));
    const double worst = std::max({std::abs(r.sum), std::abs(r.odd_pair), std::abs(r.middle)});
    return {"nyquist-residuals", worst <= 1e-6, "max residual " + fmt(worst)};
}

CheckResult check_prbs() {
    PrbsState state;
    const PrbsState start = state;
    std::size_t period = 0;
    do {
        state = state.step().second;
        ++period;
    } while (!(state.registers == start.registers) && period <= 4096);
    const Bits head = prbs_sequence(12);
    const Bits expect{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
    const bool ok = period == PrbsState::kPeriod && head == expect;
    return {"prbs-period", ok, "period " + std::to_string(period)};
}

CheckResult check_spline_knots() {
    const std::vector<std::size_t> pos{0, 9, 18, 27, 36};
    std::vector<cplx> y;
    for (std::size_t i = 0; i < pos.size(); ++i) y.push_back({std::sin(0.7 * double(i)), std::cos(1.3 * double(i))});
    const ChannelEstimate e = interpolate_cubic(y, pos, 37);
    double worst = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) worst = std::max(worst, std::abs(e.response[pos[i]] - y[i]));
    return {"spline-knot-pass-through", worst <= 1e-12, "max knot error " + fmt(worst)};
}

CheckResult check_lms() {
    // Noiseless flat gain: the delta rule should settle on the least-squares map.
    std::mt19937_64 rng(5);
    std::bernoulli_distribution coin;
    const cplx gain = std::polar(0.8, 0.6);
    TrainingSet set;
    set.inputs.resize(1);
    set.targets.resize(1);
    for (int i = 0; i < 8; ++i) {
        const cplx d{coin(rng) ? 0.7 : -0.7, coin(rng) ? 0.9 : -0.9};
        set.targets[0].push_back(d);
        set.inputs[0].push_back(gain * d);
    }
    NnHyperParams hp;
    hp.tolerance = 0.0;
    hp.max_epochs = 2000;
    const NeuralEqualizer eq = nn_train(set, hp);
    const auto ls = least_squares_2x2(set.inputs[0], set.targets[0]);
    double f = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) f += std::pow(eq.carrier(0).weights[r][c] - ls[r][c], 2);
    f = std::sqrt(f);
    return {"lms-vs-least-squares", f <= 1e-2, "Frobenius distance " + fmt(f)};
}

}  // namespace

std::vector<CheckResult> selftest(const PrototypeFilter& sir_filter) {
    return {check_polyphase(), check_oqam_round_trip(), check_sir(sir_filter), check_nyquist(),
            check_prbs(), check_spline_knots(), check_lms()};
}

std::vector<CheckResult> selftest() { return selftest(make_prototype(kOverlapFactor, 16)); }

}  // namespace fbmc
