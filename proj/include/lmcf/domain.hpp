#pragma once

#include <array>
#include <cmath>

#include "lmcf/errors.hpp"

namespace lmcf {

/// One parameter axis: an interval, possibly periodic (a circle factor), and
/// possibly a truncation of a non-compact surface at either end.
struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
    bool truncated_lo = false;
    bool truncated_hi = false;

    double length() const { return hi - lo; }
};

using ParamPoint = std::array<double, 3>;

/// Product parameter domain: intervals and circles, up to 3 axes. Matches the
/// chart parametrizations in use (rectangles, annuli in log-polar form,
/// interval x torus).
struct ParamDomain {
    int dim = 2;
    std::array<AxisSpec, 3> axis{};
    ParamPoint basepoint{0, 0, 0};  // reference point for angle branch / potentials

    double wrap(int a, double u) const {
        const AxisSpec& ax = axis[static_cast<size_t>(a)];
        if (!ax.periodic) return u;
        const double L = ax.length();
        double t = std::fmod(u - ax.lo, L);
        if (t < 0) t += L;
        return ax.lo + t;
    }

    bool contains(const ParamPoint& u, double tol = 1e-9) const {
        for (int a = 0; a < dim; ++a) {
            const AxisSpec& ax = axis[static_cast<size_t>(a)];
            if (ax.periodic) continue;
            if (u[static_cast<size_t>(a)] < ax.lo - tol || u[static_cast<size_t>(a)] > ax.hi + tol)
                return false;
        }
        return true;
    }

    void require_contains(const ParamPoint& u, const char* who) const {
        if (!contains(u)) throw DomainError(std::string(who) + ": parameter point outside domain");
    }
};

/// Per-axis sample counts for grids.
struct GridSpec {
    std::array<int, 3> n{64, 64, 64};

    GridSpec() = default;
    GridSpec(int n0, int n1) : n{n0, n1, 1} {}
    GridSpec(int n0, int n1, int n2) : n{n0, n1, n2} {}

    GridSpec refined() const { return scaled(2); }
    GridSpec scaled(int f) const {
        GridSpec g = *this;
        for (auto& c : g.n) c = c > 1 ? c * f : c;
        return g;
    }
    long total(int dim) const {
        long t = 1;
        for (int a = 0; a < dim; ++a) t *= n[static_cast<size_t>(a)];
        return t;
    }
};

/// Midpoint-rule grid over a domain: cell centers and the parameter cell
/// volume. Periodic axes sample at i*h (every node is a cell center).
struct MidpointGrid {
    const ParamDomain& dom;
    GridSpec spec;

    explicit MidpointGrid(const ParamDomain& d, const GridSpec& s) : dom(d), spec(s) {}

    double step(int a) const {
        return dom.axis[static_cast<size_t>(a)].length() / spec.n[static_cast<size_t>(a)];
    }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dom.dim; ++a) v *= step(a);
        return v;
    }

    ParamPoint point(const std::array<int, 3>& idx) const {
        ParamPoint u{0, 0, 0};
        for (int a = 0; a < dom.dim; ++a) {
            const AxisSpec& ax = dom.axis[static_cast<size_t>(a)];
            const double h = step(a);
            const double off = ax.periodic ? 0.0 : 0.5;
            u[static_cast<size_t>(a)] =
                ax.lo + (static_cast<double>(idx[static_cast<size_t>(a)]) + off) * h;
        }
        return u;
    }

    template <typename F>
    void for_each(F&& f) const {
        std::array<int, 3> idx{0, 0, 0};
        const int n0 = spec.n[0], n1 = dom.dim > 1 ? spec.n[1] : 1,
                  n2 = dom.dim > 2 ? spec.n[2] : 1;
        for (idx[0] = 0; idx[0] < n0; ++idx[0])
            for (idx[1] = 0; idx[1] < n1; ++idx[1])
                for (idx[2] = 0; idx[2] < n2; ++idx[2]) f(idx, point(idx));
    }
};

}  // namespace lmcf
