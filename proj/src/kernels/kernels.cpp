#include "traceforge/kernels.hpp"

#include <atomic>
#include <cmath>

namespace traceforge::kernels {

void horner_batch_scalar(const double* coeffs, int deg, const double* xs, double* out,
                         std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        double acc = coeffs[deg];
        for (int k = deg - 1; k >= 0; --k) acc = std::fma(acc, x, coeffs[k]);
        out[i] = acc;
    }
}

namespace {

using Fn = void (*)(const double*, int, const double*, double*, std::size_t);

Fn pick() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2_fma()) return horner_batch_avx2;
#endif
    return horner_batch_scalar;
}

std::atomic<bool> g_force_scalar{false};

}  // namespace

void horner_batch(const double* coeffs, int deg, const double* xs, double* out, std::size_t n) {
    static const Fn dispatched = pick();
    (g_force_scalar.load(std::memory_order_relaxed) ? horner_batch_scalar : dispatched)(
        coeffs, deg, xs, out, n);
}

const char* active_kernel() {
    if (g_force_scalar.load(std::memory_order_relaxed)) return "scalar";
    return pick() == horner_batch_scalar ? "scalar" : "avx2";
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace traceforge::kernels
