#include "fbmc/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fbmc {

namespace {

struct PlanPair {
    fftw_plan forward;
    fftw_plan inverse;
};

// FFTW's planner is not reentrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

PlanPair plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(planner_mutex());
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    std::vector<cplx> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags)};
    if (!p.forward || !p.inverse) throw std::runtime_error("FFTW planning failed");
    cache.emplace(n, p);
    return p;
}

void run(void* plan, std::span<const cplx> in, std::span<cplx> out, std::size_t n) {
    if (in.size() != n || out.size() != n) throw std::invalid_argument("DFT buffer size mismatch");
    // FFTW takes a non-const input pointer but does not write to it for
    // out-of-place transforms.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    if (in.data() == out.data()) {
        std::vector<cplx> copy(in.begin(), in.end());
        fftw_execute_dft(static_cast<fftw_plan>(plan), reinterpret_cast<fftw_complex*>(copy.data()), dst);
    } else {
        fftw_execute_dft(static_cast<fftw_plan>(plan), src, dst);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= scale;
}

}  // namespace

Dft::Dft(std::size_t size) : size_(size) {
    if (size == 0) throw std::invalid_argument("DFT size must be positive");
    const PlanPair p = plans_for(size);
    forward_plan_ = p.forward;
    inverse_plan_ = p.inverse;
}

void Dft::forward(std::span<const cplx> in, std::span<cplx> out) const {
    run(forward_plan_, in, out, size_);
}

void Dft::inverse(std::span<const cplx> in, std::span<cplx> out) const {
    run(inverse_plan_, in, out, size_);
}

}  // namespace fbmc
