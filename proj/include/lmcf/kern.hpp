#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lmcf::kern {

/// Reduction kernels behind the quadrature hot loops. Every entry point has a
/// scalar reference implementation; on x86 with AVX2+FMA a vector variant is
/// selected at runtime. Variants agree to ~1e-13 relative (rounding order
/// differs), which the kernel tests pin down.
struct Backend {
    const char* name;
    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i w[i] * exp(-scale * s[i]);  s[i] >= 0, scale >= 0.
    double (*weighted_exp_sum)(const double* w, const double* s, std::size_t n, double scale);
    /// out[i] = |pts[i] - center|^2 for interleaved dim-vectors.
    void (*squared_distances)(const double* pts, std::size_t n, const double* center, int dim,
                              double* out);
};

const Backend& scalar_backend();

/// Currently active backend (auto-selected on first use).
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Returns false if the
/// backend is unavailable on this machine.
bool force_backend(const std::string& name);

std::vector<std::string> available_backends();

}  // namespace lmcf::kern
