#include "lmcf/kern.hpp"

#include <atomic>
#include <cmath>

namespace lmcf::kern {

namespace {

double scalar_sum(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

double scalar_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double scalar_weighted_exp_sum(const double* w, const double* s, std::size_t n, double scale) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::exp(-scale * s[i]);
    return acc;
}

void scalar_squared_distances(const double* pts, std::size_t n, const double* center, int dim,
                              double* out) {
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

const Backend kScalar{"scalar", scalar_sum, scalar_dot, scalar_weighted_exp_sum,
                      scalar_squared_distances};

}  // namespace

#if defined(LMCF_HAVE_AVX2_TU)
const Backend& avx2_backend();  // defined in kern_avx2.cpp
bool cpu_has_avx2();
#endif

const Backend& scalar_backend() { return kScalar; }

namespace {

const Backend* select_auto() {
#if defined(LMCF_HAVE_AVX2_TU)
    if (cpu_has_avx2()) return &avx2_backend();
#endif
    return &kScalar;
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = select_auto();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool force_backend(const std::string& name) {
    if (name == "auto") {
        g_active.store(select_auto(), std::memory_order_release);
        return true;
    }
    if (name == "scalar") {
        g_active.store(&kScalar, std::memory_order_release);
        return true;
    }
#if defined(LMCF_HAVE_AVX2_TU)
    if (name == "avx2" && cpu_has_avx2()) {
        g_active.store(&avx2_backend(), std::memory_order_release);
        return true;
    }
#endif
    return false;
}

std::vector<std::string> available_backends() {
    std::vector<std::string> v{"scalar"};
#if defined(LMCF_HAVE_AVX2_TU)
    if (cpu_has_avx2()) v.push_back("avx2");
#endif
    return v;
}

}  // namespace lmcf::kern
