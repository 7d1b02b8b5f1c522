// AVX2+FMA variants of the reduction kernels. Compiled with -mavx2 -mfma in
// its own translation unit; only reached when the CPU reports AVX2 at runtime.

#include "lmcf/kern.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace lmcf::kern {

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double avx2_sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

// exp(x) for x <= 0 (the only range the kernels feed): Cody-Waite range
// reduction x = n ln2 + r, degree-13 Taylor on |r| <= ln2/2, 2^n by exponent
// bits. Values below the underflow cutoff flush to 0.
inline __m256d exp_neg(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d underflow = _mm256_set1_pd(-708.0);

    __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    // Taylor coefficients 1/13! ... 1/2!, then 1, 1 via Horner.
    __m256d p = _mm256_set1_pd(1.6059043836821613e-10);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.0876756987868098e-09));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.5052108385441720e-08));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985893e-07));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985888e-06));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.4801587301587302e-05));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.9841269841269841e-04));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.3888888888888889e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.3333333333333333e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.1666666666666664e-02));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.6666666666666666e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(5.0e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^k via the exponent field; k in [-1075, 1] here.
    __m128i ki = _mm256_cvtpd_epi32(k);
    __m256i ki64 = _mm256_cvtepi32_epi64(ki);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ki64, _mm256_set1_epi64x(1023)), 52);
    __m256d scale = _mm256_castsi256_pd(bits);
    __m256d result = _mm256_mul_pd(p, scale);

    __m256d ok = _mm256_cmp_pd(x, underflow, _CMP_GT_OQ);
    return _mm256_and_pd(result, ok);
}

double avx2_weighted_exp_sum(const double* w, const double* s, std::size_t n, double scale) {
    const __m256d ms = _mm256_set1_pd(-scale);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_mul_pd(ms, _mm256_loadu_pd(s + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), exp_neg(x), acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += w[i] * std::exp(-scale * s[i]);
    return out;
}

void avx2_squared_distances(const double* pts, std::size_t n, const double* center, int dim,
                            double* out) {
    if (dim == 4) {
        const __m256d c = _mm256_loadu_pd(center);
        for (std::size_t i = 0; i < n; ++i) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pts + 4 * i), c);
            __m256d sq = _mm256_mul_pd(d, d);
            out[i] = hsum(sq);
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = 0.0;
        const double* p = pts + i * static_cast<std::size_t>(dim);
        for (int k = 0; k < dim; ++k) {
            const double d = p[k] - center[k];
            d2 += d * d;
        }
        out[i] = d2;
    }
}

const Backend kAvx2{"avx2", avx2_sum, avx2_dot, avx2_weighted_exp_sum, avx2_squared_distances};

}  // namespace

const Backend& avx2_backend() { return kAvx2; }

}  // namespace lmcf::kern

#else

namespace lmcf::kern {
bool cpu_has_avx2() { return false; }
const Backend& avx2_backend() { return scalar_backend(); }
}  // namespace lmcf::kern

#endif
