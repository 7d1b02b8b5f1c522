#include "lmcf/ambient.hpp"

#include <stdexcept>

namespace lmcf {

double kahler_form(const CVector& u, const CVector& v) {
    u.check_same(v);
    double s = 0.0;
    for (int j = 0; j < u.n(); ++j) s += u.x(j) * v.y(j) - u.y(j) * v.x(j);
    return s;
}

double liouville_form(const CVector& p, const CVector& v) {
    return kahler_form(p, v);
}

std::complex<double> holomorphic_volume(std::span<const CVector> frame) {
    if (frame.empty()) throw DimensionError("holomorphic_volume: empty frame");
    const int n = frame[0].n();
    if (static_cast<int>(frame.size()) != n)
        throw DimensionError("holomorphic_volume: frame must have n vectors");

    // Column j of the matrix is frame[j]; Gaussian elimination with partial
    // pivoting on the n x n complex matrix (n <= 4).
    std::complex<double> m[kMaxComplexDim][kMaxComplexDim];
    for (int j = 0; j < n; ++j) {
        if (frame[j].n() != n) throw DimensionError("holomorphic_volume: mixed dimensions");
        for (int i = 0; i < n; ++i) m[i][j] = frame[j].z(i);
    }

    std::complex<double> det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(m[k][j], m[piv][j]);
            det = -det;
        }
        if (m[k][k] == 0.0) return 0.0;
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            const std::complex<double> f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

CVector hyperkahler_rotate(const CVector& p) {
    if (p.n() != 2) throw DimensionError("hyperkahler_rotate: requires n = 2");
    CVector out(2);
    out.set_z(0, {p.x(0), p.x(1)});
    out.set_z(1, {p.y(0), -p.y(1)});
    return out;
}

}  // namespace lmcf
