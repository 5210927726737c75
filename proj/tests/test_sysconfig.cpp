#include <doctest.h>

#include "fbmc/sysconfig.hpp"

using namespace fbmc;

TEST_CASE("mode table") {
    const SystemParams m1 = mode_params(Mode::Mode1);
    CHECK(m1.fft_size == 2048);
    CHECK(m1.occupied_carriers == 1405);
    CHECK(m1.symbol_period == doctest::Approx(0.252e-3));
    const SystemParams m2 = mode_params(Mode::Mode2);
    CHECK(m2.fft_size == 4096);
    CHECK(m2.occupied_carriers == 2809);
    CHECK(m2.symbol_period == doctest::Approx(0.504e-3));
    const SystemParams m3 = mode_params(Mode::Mode3, 64);
    CHECK(m3.fft_size == 8192);
    CHECK(m3.occupied_carriers == 5617);
    CHECK(m3.symbol_period == doctest::Approx(1.008e-3));
    CHECK(m3.qam_order == 64);
    CHECK(m3.bits_per_symbol() == 6);
}

TEST_CASE("pilot and data split") {
    // Pilots at occupied indices 0, 9, 18, ...; both edges are pilots.
    for (Mode mode : {Mode::Mode1, Mode::Mode2, Mode::Mode3}) {
        const SystemParams p = mode_params(mode);
        CHECK(p.pilot_carriers == (p.occupied_carriers - 1) / 9 + 1);
        CHECK(p.pilot_carriers + p.data_carriers == p.occupied_carriers);
        CHECK(p.is_pilot_index(p.occupied_carriers - 1));
    }
    CHECK(mode_params(Mode::Mode1).pilot_carriers == 157);
    CHECK(mode_params(Mode::Mode1).data_carriers == 1248);
    CHECK(mode_params(Mode::Mode3).pilot_carriers == 625);
    CHECK(mode_params(Mode::Mode3).data_carriers == 4992);

    const SystemParams t = toy_params(128, 91);
    CHECK(t.pilot_carriers == 11);
    CHECK(t.data_carriers == 80);
    CHECK(t.band_offset() == 18);
    CHECK(t.fft_size - t.occupied_carriers - t.band_offset() == 19);

    const SystemParams t2 = toy_params(64, 55);
    CHECK(t2.pilot_carriers == 7);
    CHECK(t2.data_carriers == 48);
}

TEST_CASE("toy sample rate is pinned to the Mode 3 rate") {
    const SystemParams t = toy_params(512, 352);
    CHECK(t.sample_rate == doctest::Approx(8192.0 / 1.008e-3));
    CHECK(t.symbol_period * t.sample_rate == doctest::Approx(512.0));
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(toy_params(100, 91), ConfigError);
    CHECK_THROWS_AS(toy_params(128, 92), ConfigError);
    CHECK_THROWS_AS(toy_params(128, 136), ConfigError);
    CHECK_THROWS_AS(toy_params(8, 1), ConfigError);
    CHECK_THROWS_AS(toy_params(128, 91, 8), ConfigError);
    CHECK_THROWS_AS(mode_params(Mode::Mode3, 32), ConfigError);
    CHECK_THROWS_AS(parse_mode("Mode4"), ConfigError);

    SystemParams p = mode_params(Mode::Mode1);
    p.data_carriers += 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("mode parsing") {
    CHECK(parse_mode("Mode3") == Mode::Mode3);
    CHECK(parse_mode("mode1") == Mode::Mode1);
    CHECK(parse_mode("2") == Mode::Mode2);
}

TEST_CASE("json round trip") {
    const SystemParams p = toy_params(256, 190, 16);
    const nlohmann::json j = p;
    CHECK(j.at("fft_size") == 256);
    CHECK(j.get<SystemParams>() == p);

    nlohmann::json bad = j;
    bad["occupied_carriers"] = 191;
    CHECK_THROWS_AS(bad.get<SystemParams>(), ConfigError);
    bad.erase("sample_rate");
    CHECK_THROWS_AS(bad.get<SystemParams>(), ConfigError);
}
