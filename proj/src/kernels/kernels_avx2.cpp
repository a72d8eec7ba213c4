// AVX2+FMA variant of the batch Horner kernel. This translation unit is the
// only one compiled with -mavx2 -mfma; the dispatcher guards the call behind
// a cpuid check.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "traceforge/kernels.hpp"

namespace traceforge::kernels {

bool cpu_has_avx2_fma() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void horner_batch_avx2(const double* coeffs, int deg, const double* xs, double* out,
                       std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        __m256d acc = _mm256_set1_pd(coeffs[deg]);
        for (int k = deg - 1; k >= 0; --k)
            acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coeffs[k]));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        const double x = xs[i];
        double acc = coeffs[deg];
        for (int k = deg - 1; k >= 0; --k) acc = std::fma(acc, x, coeffs[k]);
        out[i] = acc;
    }
}

}  // namespace traceforge::kernels

#endif
