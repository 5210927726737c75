#include "fbmc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbmc/sysconfig.hpp"

namespace fbmc {

std::string to_string(EstimatorKind kind) {
    switch (kind) {
    case EstimatorKind::Linear: return "linear";
    case EstimatorKind::Cubic: return "cubic";
    case EstimatorKind::Neural: return "neural";
    case EstimatorKind::Ideal: return "ideal";
    }
    return "linear";
}

EstimatorKind parse_estimator(const std::string& text) {
    if (text == "linear") return EstimatorKind::Linear;
    if (text == "cubic") return EstimatorKind::Cubic;
    if (text == "neural") return EstimatorKind::Neural;
    if (text == "ideal") return EstimatorKind::Ideal;
    throw ConfigError("unknown estimator '" + text + "'");
}

std::vector<cplx> raw_pilot_estimates(const ComplexGrid& rx_pilots, std::span<const double> tx_pilots) {
    if (rx_pilots.rows() != tx_pilots.size())
        throw std::invalid_argument("pilot observation rows do not match the transmitted pilots");
    if (rx_pilots.cols() == 0) throw std::invalid_argument("no received pilot symbols");
    std::vector<cplx> out(tx_pilots.size());
    const double window = static_cast<double>(rx_pilots.cols());
    for (std::size_t p = 0; p < tx_pilots.size(); ++p) {
        if (tx_pilots[p] == 0.0) throw std::invalid_argument("transmitted pilot value is zero");
        cplx acc{};
        for (std::size_t n = 0; n < rx_pilots.cols(); ++n) acc += rx_pilots(p, n) / tx_pilots[p];
        out[p] = acc / window;
    }
    return out;
}

namespace {

void check_knots(std::span<const cplx> values, std::span<const std::size_t> positions, std::size_t occupied,
                 std::size_t minimum) {
    if (values.size() != positions.size())
        throw std::invalid_argument("pilot estimates and positions differ in length");
    if (positions.size() < minimum)
        throw std::invalid_argument("too few pilots for the requested interpolation");
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (positions[i] <= positions[i - 1]) throw std::invalid_argument("pilot positions must increase");
    if (positions.front() != 0 || positions.back() + 1 != occupied)
        throw std::invalid_argument("pilots must sit on both band edges");
}

}  // namespace

ChannelEstimate interpolate_linear(std::span<const cplx> pilot_estimates,
                                   std::span<const std::size_t> pilot_positions, std::size_t occupied) {
    check_knots(pilot_estimates, pilot_positions, occupied, 2);
    ChannelEstimate est{std::vector<cplx>(occupied)};
    for (std::size_t m = 0; m + 1 < pilot_positions.size(); ++m) {
        const std::size_t lo = pilot_positions[m];
        const std::size_t hi = pilot_positions[m + 1];
        const double span = static_cast<double>(hi - lo);
        for (std::size_t k = lo; k <= hi; ++k) {
            const double a = static_cast<double>(k - lo) / span;
            est.response[k] = (1.0 - a) * pilot_estimates[m] + a * pilot_estimates[m + 1];
        }
    }
    return est;
}

std::vector<cplx> spline_second_derivatives(std::span<const double> x, std::span<const cplx> y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("spline knots and values differ in length");
    std::vector<cplx> z(n);
    if (n < 3) return z;

    // Interior unknowns z_1..z_{n-2}; tridiagonal with sub/super diagonal h.
    const std::size_t inner = n - 2;
    std::vector<double> diag(inner), upper(inner), lower(inner);
    std::vector<cplx> rhs(inner);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1];
        const double h1 = x[i + 1] - x[i];
        lower[i - 1] = h0;
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < inner; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    z[inner] = rhs[inner - 1] / diag[inner - 1];
    for (std::size_t i = inner - 1; i-- > 0;) z[i + 1] = (rhs[i] - upper[i] * z[i + 2]) / diag[i];
    return z;
}

ChannelEstimate interpolate_cubic(std::span<const cplx> pilot_estimates,
                                  std::span<const std::size_t> pilot_positions, std::size_t occupied) {
    check_knots(pilot_estimates, pilot_positions, occupied, 3);
    std::vector<double> x(pilot_positions.begin(), pilot_positions.end());
    const std::vector<cplx> z = spline_second_derivatives(x, pilot_estimates);

    ChannelEstimate est{std::vector<cplx>(occupied)};
    for (std::size_t m = 0; m + 1 < pilot_positions.size(); ++m) {
        const std::size_t lo = pilot_positions[m];
        const std::size_t hi = pilot_positions[m + 1];
        const double d = static_cast<double>(hi - lo);
        for (std::size_t k = lo; k <= hi; ++k) {
            const double b = static_cast<double>(k - lo) / d;
            const double a = 1.0 - b;
            const double c = (a * a * a - a) * d * d / 6.0;
            const double dd = (b * b * b - b) * d * d / 6.0;
            est.response[k] = a * pilot_estimates[m] + b * pilot_estimates[m + 1] + c * z[m] + dd * z[m + 1];
        }
    }
    return est;
}

std::size_t Equalized::erasures() const {
    return static_cast<std::size_t>(std::count(erased.begin(), erased.end(), std::uint8_t{1}));
}

Equalized equalize(std::span<const cplx> rx, std::span<const cplx> response) {
    if (rx.size() != response.size()) throw std::invalid_argument("equalizer input size mismatch");
    Equalized out{std::vector<cplx>(rx.size()), std::vector<std::uint8_t>(rx.size(), 0)};
    for (std::size_t i = 0; i < rx.size(); ++i) {
        if (!(std::abs(response[i]) > kErasureThreshold)) {
            out.erased[i] = 1;
            continue;
        }
        out.values[i] = rx[i] / response[i];
    }
    return out;
}

}  // namespace fbmc
