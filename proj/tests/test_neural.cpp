#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbmc/neural.hpp"
#include "fbmc/selftest.hpp"
#include "fbmc/sysconfig.hpp"
#include "fbmc/transceiver.hpp"

using namespace fbmc;

namespace {

using Mat = std::array<std::array<double, 2>, 2>;

double frobenius(const Mat& a, const Mat& b) {
    double f = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) f += std::pow(a[r][c] - b[r][c], 2);
    return std::sqrt(f);
}

// Inverse of multiplication by g as a real 2x2 map.
Mat inverse_gain(cplx g) {
    const cplx v = 1.0 / g;
    return {{{v.real(), -v.imag()}, {v.imag(), v.real()}}};
}

// Training set from the known frame sent through a flat gain on the stream.
TrainingSet flat_channel_set(const Transceiver& trx, cplx gain) {
    const TrainingFrame tf = training_frame(trx.params(), 99);
    SampleStream s = trx.transmit(tf.grid);
    const HalfSymbolGrid ref = trx.receive(s, kTrainingSymbols);
    for (cplx& v : s) v *= gain;
    return trx.training_set(trx.receive(s, kTrainingSymbols), ref);
}

}  // namespace

TEST_CASE("activation and error") {
    CHECK(activation(0.0, Activation::Sigmoid) == 0.5);
    CHECK(activation(50.0, Activation::Sigmoid) == doctest::Approx(1.0));
    CHECK(activation(-2.5, Activation::Linear) == -2.5);
    CHECK(training_error(1.0, 0.0) == 0.5);
    CHECK(training_error(0.3, 0.3) == 0.0);
    CHECK(training_error(0.2, -1.1) == training_error(-1.1, 0.2));
}

TEST_CASE("weight update rules") {
    const std::vector<double> w{0.4, -0.2}, x{1.0, 2.0};
    CHECK(weight_update(w, x, 0.7, 0.7, 0.1, UpdateRule::Delta) == w);
    CHECK(weight_update(w, x, 0.7, 0.7, 0.1, UpdateRule::Literal) == w);
    CHECK(weight_update(std::vector<double>{0.0}, std::vector<double>{1.0}, 1.0, 0.0, 0.5, UpdateRule::Delta)[0] ==
          0.5);
    // Literal rule: w - rate * 0.5 (d - y)^2 x, independent of the error sign.
    const auto up = weight_update(w, x, 1.0, 0.0, 0.2, UpdateRule::Literal);
    const auto down = weight_update(w, x, -1.0, 0.0, 0.2, UpdateRule::Literal);
    CHECK(up == down);
    CHECK(up[1] == doctest::Approx(-0.2 - 0.2 * 0.5 * 2.0));
    CHECK_THROWS(weight_update(w, std::vector<double>{1.0}, 0, 0, 0.1, UpdateRule::Delta));
    CHECK_THROWS(weight_update(w, x, 0, 0, 0.0, UpdateRule::Delta));
}

TEST_CASE("scalar delta rule contracts geometrically") {
    const double x = 1.3, d = 0.8, rate = 0.4;
    const double ratio = std::abs(1 - rate * x * x);
    double w = 0.0;
    const double e0 = d - w * x;
    for (int t = 1; t <= 20; ++t) {
        w = weight_update(std::vector<double>{w}, std::vector<double>{x}, d, w * x, rate, UpdateRule::Delta)[0];
        CHECK(std::abs(d - w * x) == doctest::Approx(std::abs(e0) * std::pow(ratio, t)).epsilon(1e-9));
    }
}

TEST_CASE("training through a flat channel") {
    const Transceiver trx(toy_params(128, 91));
    const NnHyperParams hp;

    const NeuralEqualizer eq1 = nn_train(flat_channel_set(trx, 1.0), hp);
    REQUIRE(eq1.carriers() == 91);
    for (std::size_t c = 0; c < 91; ++c) CHECK(frobenius(eq1.carrier(c).weights, inverse_gain(1.0)) < 1e-3);

    for (cplx g : {cplx(0.5, 0), cplx(0, 1)}) {
        const NeuralEqualizer eq = nn_train(flat_channel_set(trx, g), hp);
        CHECK(eq.converged());
        for (std::size_t c = 0; c < 91; ++c) CHECK(frobenius(eq.carrier(c).weights, inverse_gain(g)) < 1e-2);
    }
    const Mat rot{{{0, 1}, {-1, 0}}};
    CHECK(frobenius(inverse_gain(cplx(0, 1)), rot) < 1e-15);

    // Matches the closed-form least-squares fit of the same pairs.
    const TrainingSet set = flat_channel_set(trx, std::polar(0.8, std::numbers::pi / 4));
    const NeuralEqualizer eq = nn_train(set, hp);
    for (std::size_t c = 0; c < 91; ++c)
        CHECK(frobenius(eq.carrier(c).weights, least_squares_2x2(set.inputs[c], set.targets[c])) < 1e-2);
}

TEST_CASE("applying the equalizer") {
    const Transceiver trx(toy_params(64, 55));
    const NeuralEqualizer id = nn_train(flat_channel_set(trx, 1.0), NnHyperParams{});
    const cplx y(0.3, -0.7);
    CHECK(std::abs(id.apply(3, y) - y) < 1e-3);

    const NeuralEqualizer eq = nn_train(flat_channel_set(trx, cplx(0.6, 0.6)), NnHyperParams{});
    const std::vector<cplx> a{{1, 2}}, b{{-0.5, 0.25}}, ab{{0.5, 2.25}};
    const cplx sum = nn_equalize(a, 7, eq)[0] + nn_equalize(b, 7, eq)[0];
    CHECK(std::abs(sum - nn_equalize(ab, 7, eq)[0]) < 1e-12);
    const cplx x(-0.7, 0.7);
    CHECK(std::abs(eq.apply(7, cplx(0.6, 0.6) * x) - x) < 1e-2);

    CHECK_THROWS_AS(nn_equalize(a, 0, NeuralEqualizer{}), std::logic_error);
}

TEST_CASE("divergence is reported with the carrier") {
    TrainingSet set;
    set.inputs = {{{1, 1}}, {{30, -30}}};
    set.targets = {{{1, 1}}, {{1, -1}}};
    NnHyperParams hp;
    hp.delta = 1.0;
    try {
        nn_train(set, hp);
        FAIL("expected a training failure");
    } catch (const TrainingError& e) {
        CHECK(e.carrier() == 1);
        CHECK(std::string(e.what()).find("delta=1") != std::string::npos);
    }
    hp.delta = 0.0;
    CHECK_THROWS_AS(nn_train(set, hp), ConfigError);
}

TEST_CASE("sigmoid and literal modes run") {
    const Transceiver trx(toy_params(64, 55));
    NnHyperParams hp;
    hp.activation = Activation::Sigmoid;
    hp.rule = UpdateRule::Literal;
    hp.max_epochs = 20;
    const NeuralEqualizer eq = nn_train(flat_channel_set(trx, 1.0), hp);
    CHECK(eq.carrier(0).epochs == 20);
    CHECK_FALSE(eq.converged());
    const cplx out = eq.apply(0, cplx(0.5, -0.5));
    CHECK(out.real() > 0.0);
    CHECK(out.real() < 1.0);
    CHECK(parse_activation("sigmoid") == Activation::Sigmoid);
    CHECK(parse_update_rule("literal") == UpdateRule::Literal);
    CHECK_THROWS_AS(parse_activation("relu"), ConfigError);
}
