#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fbmc/filterbank.hpp"
#include "fbmc/oqam.hpp"
#include "fbmc/selftest.hpp"
#include "fbmc/sysconfig.hpp"

using namespace fbmc;

namespace {

RealGrid random_grid(std::size_t m, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    RealGrid grid(m, cols);
    for (auto& v : grid.flat()) v = g(rng);
    return grid;
}

double rel_l2(std::span<const cplx> a, std::span<const cplx> b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("beta coefficients") {
    const BetaVector b = beta_coeffs(8, 4);
    REQUIRE(b.size() == 8);
    CHECK(b[0] == cplx(1.0, 0.0));
    CHECK(b[1].real() == doctest::Approx(-0.70711).epsilon(1e-5));
    CHECK(b[1].imag() == doctest::Approx(-0.70711).epsilon(1e-5));
    for (const cplx& v : beta_coeffs(64, 4)) CHECK(std::abs(v) == doctest::Approx(1.0));
    // (-1)^k e^{-j pi k (Lp - 1) / M}
    const BetaVector b16 = beta_coeffs(16, 4);
    for (std::size_t k = 0; k < 16; ++k) {
        const cplx expect = (k % 2 ? -1.0 : 1.0) * std::polar(1.0, -std::numbers::pi * double(k) * 62.0 / 16.0);
        CHECK(std::abs(b16[k] - expect) < 1e-12);
    }
}

TEST_CASE("stream length") {
    const PrototypeFilter f = make_prototype(4, 16);
    CHECK(stream_length(f, 0) == 0);
    CHECK(stream_length(f, 16) == 15 * 8 + 63);
    CHECK(synthesize(random_grid(16, 16, 1), f, beta_coeffs(16, 4)).size() == 15 * 8 + 63);
}

TEST_CASE("polyphase synthesis matches the direct modulated filter bank") {
    int grids = 0;
    for (std::size_t m : {8, 16, 32}) {
        const PrototypeFilter f = make_prototype(4, m);
        const BetaVector beta = beta_coeffs(m, 4);
        for (std::uint64_t s = 0; s < 7; ++s, ++grids) {
            const RealGrid g = random_grid(m, 16, 1000 * m + s);
            CHECK(rel_l2(synthesize(g, f, beta), direct_synthesize(g, f, beta)) <= 1e-9);
        }
    }
    CHECK(grids >= 20);
}

TEST_CASE("direct synthesis against an explicit double sum") {
    const std::size_t m = 8;
    const PrototypeFilter f = make_prototype(4, m);
    const BetaVector beta = beta_coeffs(m, 4);
    const RealGrid g = random_grid(m, 4, 3);
    const SampleStream s = direct_synthesize(g, f, beta);
    for (std::size_t n : {std::size_t{0}, std::size_t{17}, s.size() - 1}) {
        cplx acc;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                if (n < c * m / 2 || n - c * m / 2 >= f.length()) continue;
                const std::size_t i = n - c * m / 2;
                acc += g(k, c) * oqam_phase(k, c) * beta[k] * f.taps[i] *
                       std::polar(1.0 / std::sqrt(double(m)), 2 * std::numbers::pi * double(i * k) / double(m));
            }
        CHECK(std::abs(acc - s[n]) < 1e-12);
    }
}

TEST_CASE("analysis against the explicit correlator") {
    const std::size_t m = 16;
    const PrototypeFilter f = make_prototype(4, m);
    const BetaVector beta = beta_coeffs(m, 4);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    SampleStream s(f.length() + 5 * m / 2);
    for (auto& v : s) v = {g(rng), g(rng)};
    const HalfSymbolGrid out = analyze(s, f, beta);
    CHECK(out.cols() == 6);
    for (std::size_t c = 0; c < out.cols(); ++c)
        for (std::size_t k = 0; k < m; ++k) {
            cplx acc;
            for (std::size_t i = 0; i < f.length(); ++i)
                acc += f.taps[i] * s[c * m / 2 + i] *
                       std::polar(1.0 / std::sqrt(double(m)), -2 * std::numbers::pi * double(i * k) / double(m));
            CHECK(std::abs(out(k, c) - double(m) / f.energy() * std::conj(beta[k]) * acc) < 1e-10);
        }
    CHECK_THROWS(analyze(std::span(s).first(10), f, beta));
    CHECK_THROWS(analyze(s, f, beta, 7));
}

TEST_CASE("a single pulse comes back with unit gain at its own position") {
    const std::size_t m = 32;
    const PrototypeFilter f = make_prototype(4, m);
    const BetaVector beta = beta_coeffs(m, 4);
    for (std::size_t k : {0, 5, 31})
        for (std::size_t c : {0, 3, 8}) {
            RealGrid grid(m, 9);
            grid(k, c) = 1.0;
            const HalfSymbolGrid d = derotate(analyze(synthesize(grid, f, beta), f, beta, 9));
            CHECK(std::abs(d(k, c) - cplx(1.0, 0.0)) < 1e-12);
            // Real-part orthogonality everywhere else.
            for (std::size_t kk = 0; kk < m; ++kk)
                for (std::size_t cc = 0; cc < 9; ++cc)
                    if (kk != k || cc != c) CHECK(std::abs(d(kk, cc).real()) < 2e-3);
        }
}

TEST_CASE("back-to-back reconstruction") {
    for (std::size_t m : {16, 64, 512}) CHECK(back_to_back_sir_db(make_prototype(4, m)) >= 50.0);

    // A 1 % centre-tap error in both banks breaks the floor.
    PrototypeFilter bad = make_prototype(4, 16);
    bad.taps[bad.length() / 2] *= 1.01;
    CHECK(back_to_back_sir_db(bad) < 50.0);
}

TEST_CASE("pipeline delay") {
    for (std::size_t m : {16, 64}) {
        const PipelineDelay d = pipeline_delay(m, 4);
        CHECK(d.half_symbols == 0);
        CHECK(d.samples == 4 * m - 2);
        CHECK(pipeline_delay(m, 4) == d);
    }
    CHECK(pipeline_delay(16, 1).samples == 14);
}

TEST_CASE("nominal stream power") {
    const std::size_t m = 64, cols = 400;
    const PrototypeFilter f = make_prototype(4, m);
    std::mt19937_64 rng(2);
    std::bernoulli_distribution coin;
    const double a = std::sqrt(0.5);
    ComplexGrid x(m, cols / 2);
    for (auto& v : x.flat()) v = {coin(rng) ? a : -a, coin(rng) ? a : -a};
    const SampleStream s = synthesize(preprocess(x), f, beta_coeffs(m, 4));
    double p = 0;
    const std::size_t lo = f.length(), hi = s.size() - f.length();
    for (std::size_t i = lo; i < hi; ++i) p += std::norm(s[i]);
    p /= double(hi - lo);
    CHECK(p == doctest::Approx(nominal_stream_power(f, double(m))).epsilon(0.03));
}
