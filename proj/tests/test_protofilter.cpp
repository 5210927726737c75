#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fbmc/protofilter.hpp"
#include "fbmc/sysconfig.hpp"

using namespace fbmc;

TEST_CASE("K=4 coefficients") {
    const auto h = design_coeffs(4);
    REQUIRE(h.size() == 4);
    CHECK(h[0] == 1.0);
    CHECK(h[1] == doctest::Approx(-0.97195983).epsilon(1e-7));
    CHECK(h[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
    CHECK(h[3] == doctest::Approx(-std::sqrt(1.0 - 0.97195983 * 0.97195983)).epsilon(1e-6));
    CHECK(design_coeffs(1) == std::vector<double>{1.0});
    CHECK_THROWS_AS(design_coeffs(3), ConfigError);
}

TEST_CASE("Nyquist residuals") {
    const NyquistResiduals r = nyquist_residuals(design_coeffs(4));
    CHECK(std::abs(r.sum) <= 1e-6);
    CHECK(std::abs(r.odd_pair) <= 1e-6);
    CHECK(std::abs(r.middle) <= 1e-6);

    auto bent = design_coeffs(4);
    bent[2] += 0.1;  // 2 (0.8071068)^2 - 1
    CHECK(nyquist_residuals(bent).middle == doctest::Approx(0.30284).epsilon(1e-4));
}

TEST_CASE("impulse response shape") {
    for (std::size_t m : {8, 16, 64}) {
        const PrototypeFilter f = make_prototype(4, m);
        const std::size_t lp = 4 * m - 1;
        REQUIRE(f.length() == lp);
        CHECK(f.taps[lp / 2] == doctest::Approx(1.0));
        for (std::size_t i = 0; i < lp; ++i) CHECK(f.taps[i] == doctest::Approx(f.taps[lp - 1 - i]).epsilon(1e-12));
        // Direct cosine-series evaluation.
        const auto h = design_coeffs(4);
        for (std::size_t i : {std::size_t{0}, lp / 3, lp - 1}) {
            double v = h[0];
            for (std::size_t k = 1; k < 4; ++k)
                v += 2 * h[k] * std::cos(2 * std::numbers::pi * double(k) * double(i + 1) / double(4 * m));
            CHECK(f.taps[i] == doctest::Approx(v / (1 + 2 * (0.97195983 + std::sqrt(0.5) + 0.23514695))).epsilon(1e-6));
        }
    }
    CHECK_THROWS(impulse_response(design_coeffs(4), 12));
    CHECK_THROWS(impulse_response(design_coeffs(4), 4));
}

TEST_CASE("filter energy") {
    // Full-period Parseval: K M (h0^2 + 2 sum h_k^2) = 4 K M, divided by the
    // squared centre value; the omitted last sample is a zero of the series.
    const double centre = 1 + 2 * (0.97195983 + std::sqrt(0.5) + 0.23514695);
    for (std::size_t m : {16, 512}) {
        const PrototypeFilter f = make_prototype(4, m);
        CHECK(f.energy() / double(m) == doctest::Approx(16.0 / (centre * centre)).epsilon(1e-6));
    }
    CHECK(make_prototype(4, 64).energy() / 64 == doctest::Approx(0.6863).epsilon(1e-4));
}

TEST_CASE("frequency response against a brute-force DTFT") {
    const PrototypeFilter f = make_prototype(4, 16);
    auto dtft = [&](double freq) {
        std::complex<double> acc;
        for (std::size_t n = 0; n < f.taps.size(); ++n)
            acc += f.taps[n] * std::polar(1.0, -2 * std::numbers::pi * freq * double(n));
        return std::abs(acc);
    };
    const double dc = dtft(0.0);
    for (double freq : {0.01, 1.0 / 32, 1.0 / 16, 0.2}) {
        CHECK(magnitude_db(f, freq) == doctest::Approx(20 * std::log10(dtft(freq) / dc)).epsilon(1e-9));
    }
    // Half a carrier spacing is the k = 2 frequency sample of the design.
    CHECK(magnitude_db(f, 1.0 / 32) == doctest::Approx(20 * std::log10(std::sqrt(0.5))).epsilon(1e-3));

    const auto grid = frequency_response(f, 65, -0.25, 0.25);
    REQUIRE(grid.size() == 65);
    CHECK(grid.front().frequency == doctest::Approx(-0.25));
    CHECK(grid[32].frequency == doctest::Approx(0.0));
    CHECK(grid[32].magnitude_db == doctest::Approx(0.0));
    CHECK_THROWS(frequency_response(f, 10, 0.0, 0.5));
}
