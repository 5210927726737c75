#include <doctest.h>

#include <cmath>
#include <random>

#include "fbmc/channel.hpp"
#include "fbmc/estimation.hpp"
#include "fbmc/sysconfig.hpp"

using namespace fbmc;

namespace {

std::vector<std::size_t> grid_positions(std::size_t occupied) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < occupied; i += 9) pos.push_back(i);
    return pos;
}

double max_error(const ChannelEstimate& e, const std::vector<cplx>& truth) {
    double worst = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) worst = std::max(worst, std::abs(e.response[i] - truth[i]));
    return worst;
}

}  // namespace

TEST_CASE("raw pilot estimates") {
    ComplexGrid rx(2, 1);
    rx(0, 0) = cplx(4.0 / 3.0, 0);
    rx(1, 0) = cplx(2.0 / 3.0, 2.0 / 3.0);
    const std::vector<double> tx{4.0 / 3.0, 4.0 / 3.0};
    const auto h = raw_pilot_estimates(rx, tx);
    CHECK(std::abs(h[0] - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(h[1] - cplx(0.5, 0.5)) < 1e-15);
    CHECK_THROWS(raw_pilot_estimates(rx, std::vector<double>{1.0, 0.0}));
    CHECK_THROWS(raw_pilot_estimates(rx, std::vector<double>{1.0}));
}

TEST_CASE("averaging shrinks the pilot estimate error") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 0.1);
    const std::size_t pilots = 4000;
    const std::vector<double> tx(pilots, 4.0 / 3.0);
    auto rms = [&](std::size_t window) {
        ComplexGrid rx(pilots, window);
        for (auto& v : rx.flat()) v = cplx(4.0 / 3.0, 0) + cplx(g(rng), g(rng));
        double e = 0;
        for (const cplx& h : raw_pilot_estimates(rx, tx)) e += std::norm(h - 1.0);
        return std::sqrt(e / double(pilots));
    };
    CHECK(rms(1) / rms(16) == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("linear interpolation") {
    const std::vector<cplx> h{1.0, 3.0};
    const std::vector<std::size_t> pos{0, 9};
    const ChannelEstimate e = interpolate_linear(h, pos, 10);
    CHECK(e.response[4].real() == doctest::Approx(17.0 / 9.0));
    CHECK(e.response[0] == cplx(1.0));
    CHECK(e.response[9] == cplx(3.0));
    CHECK_THROWS(interpolate_linear(std::vector<cplx>{1.0}, std::vector<std::size_t>{0}, 1));
    CHECK_THROWS(interpolate_linear(h, pos, 11));
    CHECK_THROWS(interpolate_linear(h, std::vector<std::size_t>{9, 0}, 10));
}

TEST_CASE("both interpolators are exact on affine responses") {
    const std::size_t occ = 91;
    const auto pos = grid_positions(occ);
    const cplx alpha(0.3, -0.2), beta(0.01, 0.004);
    std::vector<cplx> truth(occ), knots;
    for (std::size_t i = 0; i < occ; ++i) truth[i] = alpha + beta * double(i);
    for (std::size_t p : pos) knots.push_back(truth[p]);
    CHECK(max_error(interpolate_linear(knots, pos, occ), truth) < 1e-14);
    CHECK(max_error(interpolate_cubic(knots, pos, occ), truth) < 1e-14);
    std::vector<double> x(pos.begin(), pos.end());
    for (const cplx& z : spline_second_derivatives(x, knots)) CHECK(std::abs(z) < 1e-14);

    const ChannelEstimate c = interpolate_cubic(std::vector<cplx>(pos.size(), cplx(2, 1)), pos, occ);
    for (const cplx& v : c.response) CHECK(std::abs(v - cplx(2, 1)) < 1e-14);
    CHECK_THROWS(interpolate_cubic(std::vector<cplx>{1.0, 2.0}, std::vector<std::size_t>{0, 9}, 10));
}

TEST_CASE("spline second derivatives against a dense solve") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    const std::vector<double> x{0, 9, 18, 27, 36, 45, 54};
    std::vector<cplx> y;
    for (std::size_t i = 0; i < x.size(); ++i) y.push_back({g(rng), g(rng)});
    const std::vector<cplx> z = spline_second_derivatives(x, y);
    REQUIRE(z.size() == x.size());
    CHECK(z.front() == cplx{});
    CHECK(z.back() == cplx{});

    // Gaussian elimination with partial pivoting on the full interior system.
    const std::size_t n = x.size() - 2;
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
        if (i > 0) a[i][i - 1] = h0;
        a[i][i] = 2 * (h0 + h1);
        if (i + 1 < n) a[i][i + 1] = h1;
        a[i][n] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const cplx f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z[i + 1] - a[i][n] / a[i][i]) < 1e-10);

    // Knot pass-through and C2 continuity at an interior knot.
    std::vector<std::size_t> pos(x.begin(), x.end());
    const ChannelEstimate e = interpolate_cubic(y, pos, 55);
    for (std::size_t i = 0; i < pos.size(); ++i) CHECK(std::abs(e.response[pos[i]] - y[i]) < 1e-12);
}

TEST_CASE("two-tap channel: spline beats linear") {
    // Echo at 18 samples, M = 8192, pilots every 9 carriers, noiseless.
    const SystemParams p = mode_params(Mode::Mode3);
    const ChannelProfile ch = resolve_profile({{0.0, 0.0}, {18.0 / p.sample_rate, 6.0}}, p.sample_rate);
    REQUIRE(ch.max_delay() == 18);
    const auto truth = true_frequency_response(ch, p.fft_size, p.band_offset(), p.occupied_carriers);
    const auto pos = grid_positions(p.occupied_carriers);
    std::vector<cplx> knots;
    for (std::size_t q : pos) knots.push_back(truth[q]);
    const double lin = max_error(interpolate_linear(knots, pos, p.occupied_carriers), truth);
    const double cub = max_error(interpolate_cubic(knots, pos, p.occupied_carriers), truth);
    CHECK(cub < lin);
}

TEST_CASE("zero-forcing equalizer") {
    const std::vector<cplx> x{{1, 1}, {-1, 1}, {0.5, -2}};
    const std::vector<cplx> h{{1, 0}, {0, 2}, {0.3, -0.4}};
    std::vector<cplx> y(3);
    for (std::size_t i = 0; i < 3; ++i) y[i] = h[i] * x[i];
    const Equalized e = equalize(y, h);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e.values[i] - x[i]) < 1e-15);
    CHECK(e.erasures() == 0);
    CHECK(equalize(x, std::vector<cplx>(3, 1.0)).values == x);

    const Equalized notch = equalize(y, std::vector<cplx>{{1, 0}, {1e-12, 0}, {0, 0}});
    CHECK(notch.erasures() == 2);
    for (const cplx& v : notch.values) CHECK(std::isfinite(v.real()));
    CHECK_THROWS(equalize(y, std::vector<cplx>(2)));
}

TEST_CASE("estimator names") {
    for (auto k : {EstimatorKind::Linear, EstimatorKind::Cubic, EstimatorKind::Neural, EstimatorKind::Ideal})
        CHECK(parse_estimator(to_string(k)) == k);
    CHECK_THROWS_AS(parse_estimator("spline"), ConfigError);
}
