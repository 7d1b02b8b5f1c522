#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lmcf/errors.hpp"

namespace lmcf {

using Cx = std::complex<double>;

/// Sparse complex polynomial in two variables, canonical form: no stored
/// zero coefficients.
class BiPoly {
public:
    using Key = std::pair<int, int>;  // (i, j) exponents of x^i y^j
    using Map = std::map<Key, Cx>;

    BiPoly() = default;

    static BiPoly zero() { return {}; }
    static BiPoly constant(Cx c);
    static BiPoly monomial(int i, int j, Cx c);
    static BiPoly x() { return monomial(1, 0, 1.0); }
    static BiPoly y() { return monomial(0, 1, 1.0); }

    bool is_zero() const { return c_.empty(); }
    int degree() const;  // max i+j, -1 for the zero polynomial
    int degree_x() const;
    int degree_y() const;

    Cx coeff(int i, int j) const;
    void set_coeff(int i, int j, Cx c);
    void add_coeff(int i, int j, Cx c);
    const Map& terms() const { return c_; }
    std::size_t term_count() const { return c_.size(); }
    double max_abs_coeff() const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(Cx s, BiPoly a);
    BiPoly pow(int e) const;

    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

    Cx eval(Cx xv, Cx yv) const;
    BiPoly dx() const;
    BiPoly dy() const;

    /// Coefficients in y of P(x0, .), ascending.
    std::vector<Cx> univariate_in_y(Cx x0) const;
    /// Coefficients in x of P(., y0), ascending.
    std::vector<Cx> univariate_in_x(Cx y0) const;

    /// P_k: monomials with i + j = k.
    BiPoly homogeneous_part(int k) const;
    /// [P_0, ..., P_d]; errors on the zero polynomial.
    std::vector<BiPoly> homogeneous_parts() const;
    bool is_homogeneous() const;

    /// P^lambda(x,y) = lambda^d P(x/lambda, y/lambda): c_ij -> lambda^{d-i-j} c_ij.
    BiPoly rescale(double lambda) const;

    /// Substitute x = m00 u + m01 v, y = m10 u + m11 v.
    BiPoly linear_substitute(Cx m00, Cx m01, Cx m10, Cx m11) const;

    /// Grammar-conformant canonical print; parse(print(P)) == P exactly.
    std::string to_string() const;

private:
    Map c_;
    void prune(int i, int j);
};

/// Homogeneous trivariate P~(x,y,z) of degree d; the z-exponent of the (i,j)
/// entry is d-i-j.
struct HomoPoly3 {
    int d = 0;
    BiPoly::Map c;

    static HomoPoly3 homogenize(const BiPoly& p);
    BiPoly dehomogenize() const;  // z = 1
    Cx eval(Cx x, Cx y, Cx z) const;
    HomoPoly3 ddx() const;
    HomoPoly3 ddy() const;
    HomoPoly3 ddz() const;
    bool is_zero() const { return c.empty(); }
};

}  // namespace lmcf
