#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace lmcf {

/// Largest complex dimension the library handles (the surfaces of interest
/// live in C^2 and C^3).
inline constexpr int kMaxComplexDim = 4;

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point or vector of C^n stored as 2n interleaved reals (x1,y1,...,xn,yn),
/// so the complex view of coordinate j is O(1).
class CVector {
public:
    CVector() : n_(0) { c_.fill(0.0); }
    explicit CVector(int n) : n_(n) {
        if (n < 1 || n > kMaxComplexDim) throw DimensionError("CVector: bad complex dimension");
        c_.fill(0.0);
    }

    static CVector zero(int n) { return CVector(n); }

    /// Real coordinate basis vector: axis = 2j for x_j, 2j+1 for y_j.
    static CVector unit(int n, int axis) {
        CVector v(n);
        v.c_.at(static_cast<size_t>(axis)) = 1.0;
        return v;
    }

    int n() const { return n_; }
    int real_dim() const { return 2 * n_; }

    double  operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<size_t>(k)]; }

    double  x(int j) const { return c_[static_cast<size_t>(2 * j)]; }
    double& x(int j) { return c_[static_cast<size_t>(2 * j)]; }
    double  y(int j) const { return c_[static_cast<size_t>(2 * j + 1)]; }
    double& y(int j) { return c_[static_cast<size_t>(2 * j + 1)]; }

    std::complex<double> z(int j) const { return {x(j), y(j)}; }
    void set_z(int j, std::complex<double> w) {
        x(j) = w.real();
        y(j) = w.imag();
    }

    CVector& operator+=(const CVector& o) {
        check_same(o);
        for (int k = 0; k < real_dim(); ++k) c_[static_cast<size_t>(k)] += o[k];
        return *this;
    }
    CVector& operator-=(const CVector& o) {
        check_same(o);
        for (int k = 0; k < real_dim(); ++k) c_[static_cast<size_t>(k)] -= o[k];
        return *this;
    }
    CVector& operator*=(double s) {
        for (int k = 0; k < real_dim(); ++k) c_[static_cast<size_t>(k)] *= s;
        return *this;
    }

    friend CVector operator+(CVector a, const CVector& b) { return a += b; }
    friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
    friend CVector operator*(double s, CVector a) { return a *= s; }
    friend CVector operator*(CVector a, double s) { return a *= s; }

    /// Euclidean inner product on R^{2n}.
    friend double dot(const CVector& a, const CVector& b) {
        a.check_same(b);
        double s = 0.0;
        for (int k = 0; k < a.real_dim(); ++k) s += a[k] * b[k];
        return s;
    }

    double norm2() const { return dot(*this, *this); }
    double norm() const { return std::sqrt(norm2()); }

    bool finite() const {
        for (int k = 0; k < real_dim(); ++k)
            if (!std::isfinite(c_[static_cast<size_t>(k)])) return false;
        return true;
    }

    void check_same(const CVector& o) const {
        if (n_ != o.n_) throw DimensionError("CVector: dimension mismatch");
    }

private:
    int n_;
    std::array<double, 2 * kMaxComplexDim> c_;
};

inline CVector make_cvector2(std::complex<double> z1, std::complex<double> z2) {
    CVector v(2);
    v.set_z(0, z1);
    v.set_z(1, z2);
    return v;
}

inline CVector make_cvector3(std::complex<double> z1, std::complex<double> z2,
                             std::complex<double> z3) {
    CVector v(3);
    v.set_z(0, z1);
    v.set_z(1, z2);
    v.set_z(2, z3);
    return v;
}

}  // namespace lmcf
