#include <cstdlib>
#include <cstring>

#include "ffl/simd.hpp"

namespace ffl::simd {

namespace {

void residue_indices_scalar(const std::int32_t* xmod, std::size_t stride, const std::int32_t* dcoef, int n, int d,
                            std::size_t count, int q, std::uint32_t* out) {
    for (std::size_t p = 0; p < count; ++p) {
        std::uint32_t idx = 0;
        for (int j = d - 1; j >= 0; --j) {
            std::int32_t acc = 0;
            for (int i = 0; i <= n; ++i) acc += dcoef[i] * xmod[(static_cast<std::size_t>(i) * d + j) * stride + p];
            idx = idx * q + static_cast<std::uint32_t>(acc % q);
        }
        out[p] = idx;
    }
}

std::int64_t sum_i8_scalar(const std::int8_t* v, std::size_t n) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

void horner_batch_scalar(const double* c, std::size_t stride, int degree, std::size_t count, double x, double* out) {
    for (std::size_t p = 0; p < count; ++p) {
        double acc = c[static_cast<std::size_t>(degree) * stride + p];
        for (int k = degree - 1; k >= 0; --k) acc = acc * x + c[static_cast<std::size_t>(k) * stride + p];
        out[p] = acc;
    }
}

double dot_scalar(const double* w, const double* v, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
    return s;
}

const Kernels kScalar{"scalar", residue_indices_scalar, sum_i8_scalar, horner_batch_scalar, dot_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("FFL_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
        const Kernels* k = avx2_kernels();
        return (k && cpu_has_avx2()) ? k : &kScalar;
    }();
    return *chosen;
}

}  // namespace ffl::simd
