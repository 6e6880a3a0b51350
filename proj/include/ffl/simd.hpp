#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace ffl::simd {

// Batched kernels with a scalar reference and an AVX2 variant picked at runtime.
struct Kernels {
    const char* name;
    // Residue of D modulo `count` primes of equal degree d, returned as base-q indices.
    // xmod layout: [(i * d + j) * stride + p] = coefficient j of x^i mod P_p, i = 0..n.
    void (*residue_indices)(const std::int32_t* xmod, std::size_t stride, const std::int32_t* dcoef, int n, int d,
                            std::size_t count, int q, std::uint32_t* out);
    // Sum of int8 values.
    std::int64_t (*sum_i8)(const std::int8_t* v, std::size_t n);
    // Horner at real x for `count` polynomials stored coefficient-major: c[n * stride + p].
    void (*horner_batch)(const double* c, std::size_t stride, int degree, std::size_t count, double x, double* out);
    // sum_i w[i] * v[i]
    double (*dot)(const double* w, const double* v, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the binary was built without AVX2 support
const Kernels* avx2_kernels();
bool cpu_has_avx2();
// AVX2 when available unless FFL_SIMD=scalar is set.
const Kernels& active();

}  // namespace ffl::simd
