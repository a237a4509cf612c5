// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <cstddef>

#include "evq/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define EVQ_HAVE_AVX2 1
#else
#define EVQ_HAVE_AVX2 0
#endif

namespace evq::simd::avx2 {

#if EVQ_HAVE_AVX2

namespace {

inline double horizontal_sum(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

bool compiled() noexcept { return true; }

double sum(std::span<const double> values) noexcept {
    const double* p = values.data();
    const std::size_t n = values.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    double tail = 0.0;
    for (; i < n; ++i) tail += p[i];
    return horizontal_sum(_mm256_add_pd(acc0, acc1)) + tail;
}

double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept {
    const double* x = values.data();
    const double* w = weights.data();
    const std::size_t n = values.size();
    const __m256d c = _mm256_set1_pd(center);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c);
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(d0, d0), _mm256_loadu_pd(w + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_mul_pd(d1, d1), _mm256_loadu_pd(w + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(d, d), _mm256_loadu_pd(w + i), acc0);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = x[i] - center;
        tail += d * d * w[i];
    }
    return horizontal_sum(_mm256_add_pd(acc0, acc1)) + tail;
}

void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept {
    const double* src = in.data();
    double* dst = out.data();
    const std::size_t n = out.size();
    const __m256d lim = _mm256_set1_pd(floor);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(src + k + 1), _mm256_loadu_pd(src + k));
        const __m256d keep = _mm256_cmp_pd(d, lim, _CMP_NLT_UQ);
        _mm256_storeu_pd(dst + k, _mm256_and_pd(d, keep));
    }
    for (; k < n; ++k) {
        const double d = src[k + 1] - src[k];
        dst[k] = d < floor ? 0.0 : d;
    }
}

#else

bool compiled() noexcept { return false; }

double sum(std::span<const double> values) noexcept { return scalar::sum(values); }

double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept {
    return scalar::weighted_squared_deviation(values, weights, center);
}

void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept {
    scalar::clamped_differences(in, out, floor);
}

#endif

}  // namespace evq::simd::avx2
