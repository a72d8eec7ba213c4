#ifndef TRACEFORGE_KERNELS_HPP
#define TRACEFORGE_KERNELS_HPP

#include <cstddef>

namespace traceforge::kernels {

// Batch Horner evaluation: out[i] = sum_k coeffs[k] * xs[i]^k for each of
// the n sample points. coeffs is little-endian (coeffs[0] is the constant
// term), deg >= 0. Every variant performs the identical fused-multiply-add
// recurrence, so scalar and SIMD results are bitwise equal; the equivalence
// suite asserts exactly that.
void horner_batch(const double* coeffs, int deg, const double* xs, double* out, std::size_t n);

// reference kernel (std::fma per step)
void horner_batch_scalar(const double* coeffs, int deg, const double* xs, double* out,
                         std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
// AVX2+FMA kernel; call only when cpu_has_avx2_fma() is true
void horner_batch_avx2(const double* coeffs, int deg, const double* xs, double* out,
                       std::size_t n);
bool cpu_has_avx2_fma();
#endif

// name of the variant horner_batch dispatches to ("avx2" or "scalar")
const char* active_kernel();

// test hook: force the scalar path (true) or restore runtime dispatch (false)
void force_scalar(bool on);

}  // namespace traceforge::kernels

#endif
