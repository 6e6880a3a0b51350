#include "ffl/simd.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace ffl::simd {

namespace {

void residue_indices_avx2(const std::int32_t* xmod, std::size_t stride, const std::int32_t* dcoef, int n, int d,
                          std::size_t count, int q, std::uint32_t* out) {
    const __m256i vq = _mm256_set1_epi32(q);
    const __m256i zero = _mm256_setzero_si256();
    const __m256 invq = _mm256_set1_ps(1.0f / static_cast<float>(q));
    std::size_t p = 0;
    for (; p + 8 <= count; p += 8) {
        __m256i idx = _mm256_setzero_si256();
        for (int j = d - 1; j >= 0; --j) {
            __m256i acc = _mm256_setzero_si256();
            for (int i = 0; i <= n; ++i) {
                if (dcoef[i] == 0) continue;
                const __m256i x = _mm256_loadu_si256(
                    reinterpret_cast<const __m256i*>(xmod + (static_cast<std::size_t>(i) * d + j) * stride + p));
                acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(x, _mm256_set1_epi32(dcoef[i])));
            }
            __m256i t = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(acc), invq));
            __m256i r = _mm256_sub_epi32(acc, _mm256_mullo_epi32(t, vq));
            r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, _mm256_sub_epi32(vq, _mm256_set1_epi32(1))), vq));
            r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vq));
            idx = _mm256_add_epi32(_mm256_mullo_epi32(idx, vq), r);
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + p), idx);
    }
    if (p < count) {
        // tail through the scalar kernel, offset by p within each row
        for (std::size_t t = p; t < count; ++t) {
            std::uint32_t idx = 0;
            for (int j = d - 1; j >= 0; --j) {
                std::int32_t acc = 0;
                for (int i = 0; i <= n; ++i) acc += dcoef[i] * xmod[(static_cast<std::size_t>(i) * d + j) * stride + t];
                idx = idx * q + static_cast<std::uint32_t>(acc % q);
            }
            out[t] = idx;
        }
    }
}

std::int64_t sum_i8_avx2(const std::int8_t* v, std::size_t n) {
    std::size_t i = 0;
    __m256i acc64 = _mm256_setzero_si256();
    const __m256i ones = _mm256_set1_epi8(1);
    const __m256i ones16 = _mm256_set1_epi16(1);
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
        // sign-correct widening: maddubs(1, x) treats x as signed
        __m256i s16 = _mm256_maddubs_epi16(ones, x);
        __m256i s32 = _mm256_madd_epi16(s16, ones16);
        __m256i lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(s32));
        __m256i hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(s32, 1));
        acc64 = _mm256_add_epi64(acc64, _mm256_add_epi64(lo, hi));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc64);
    std::int64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += v[i];
    return s;
}

void horner_batch_avx2(const double* c, std::size_t stride, int degree, std::size_t count, double x, double* out) {
    const __m256d vx = _mm256_set1_pd(x);
    std::size_t p = 0;
    for (; p + 4 <= count; p += 4) {
        __m256d acc = _mm256_loadu_pd(c + static_cast<std::size_t>(degree) * stride + p);
        for (int k = degree - 1; k >= 0; --k)
            acc = _mm256_fmadd_pd(acc, vx, _mm256_loadu_pd(c + static_cast<std::size_t>(k) * stride + p));
        _mm256_storeu_pd(out + p, acc);
    }
    for (; p < count; ++p) {
        double acc = c[static_cast<std::size_t>(degree) * stride + p];
        for (int k = degree - 1; k >= 0; --k) acc = acc * x + c[static_cast<std::size_t>(k) * stride + p];
        out[p] = acc;
    }
}

double dot_avx2(const double* w, const double* v, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(v + i + 4), a1);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(a0, a1));
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += w[i] * v[i];
    return s;
}

const Kernels kAvx2{"avx2", residue_indices_avx2, sum_i8_avx2, horner_batch_avx2, dot_avx2};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace ffl::simd

#else

namespace ffl::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace ffl::simd

#endif
