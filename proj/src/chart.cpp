#include "lmcf/chart.hpp"

#include <algorithm>
#include <cmath>

namespace lmcf {

GridChart::GridChart(const ParamDomain& dom, std::array<int, 3> nodes, std::vector<CVector> values,
                     int cdim)
    : dom_(dom), nodes_(nodes), values_(std::move(values)), cdim_(cdim) {
    std::size_t expect = 1;
    for (int a = 0; a < dom_.dim; ++a) {
        const auto& ax = dom_.axis[static_cast<size_t>(a)];
        const int nn = nodes_[static_cast<size_t>(a)];
        if (nn < 2) throw LmcfError("GridChart: need at least 2 nodes per axis");
        // periodic axes store n distinct nodes (the node after the last is the first)
        step_[static_cast<size_t>(a)] = ax.length() / (ax.periodic ? nn : nn - 1);
        expect *= static_cast<size_t>(nn);
    }
    if (values_.size() != expect) throw LmcfError("GridChart: node count mismatch");
    min_step_ = step_[0];
    for (int a = 1; a < dom_.dim; ++a) min_step_ = std::min(min_step_, step_[static_cast<size_t>(a)]);
}

std::size_t GridChart::flat(const std::array<int, 3>& idx) const {
    std::size_t f = 0;
    for (int a = 0; a < dom_.dim; ++a) {
        f = f * static_cast<size_t>(nodes_[static_cast<size_t>(a)]) +
            static_cast<size_t>(idx[static_cast<size_t>(a)]);
    }
    return f;
}

ParamPoint GridChart::node_point(const std::array<int, 3>& idx) const {
    ParamPoint u{0, 0, 0};
    for (int a = 0; a < dom_.dim; ++a)
        u[static_cast<size_t>(a)] = dom_.axis[static_cast<size_t>(a)].lo +
                                    step_[static_cast<size_t>(a)] * idx[static_cast<size_t>(a)];
    return u;
}

bool GridChart::interior(const std::array<int, 3>& idx) const {
    for (int a = 0; a < dom_.dim; ++a) {
        const auto& ax = dom_.axis[static_cast<size_t>(a)];
        if (ax.periodic) continue;
        const int i = idx[static_cast<size_t>(a)];
        if (i == 0 || i == nodes_[static_cast<size_t>(a)] - 1) return false;
    }
    return true;
}

CVector GridChart::position(const ParamPoint& u) const {
    // multilinear interpolation
    int base[3] = {0, 0, 0};
    double frac[3] = {0, 0, 0};
    for (int a = 0; a < dom_.dim; ++a) {
        const auto& ax = dom_.axis[static_cast<size_t>(a)];
        const int nn = nodes_[static_cast<size_t>(a)];
        double t = (dom_.wrap(a, u[static_cast<size_t>(a)]) - ax.lo) / step_[static_cast<size_t>(a)];
        if (ax.periodic) {
            base[a] = static_cast<int>(std::floor(t)) % nn;
            if (base[a] < 0) base[a] += nn;
            frac[a] = t - std::floor(t);
        } else {
            // extrapolate linearly outside the node range (FD stencils at the
            // boundary reach half a cell out)
            base[a] = std::clamp(static_cast<int>(std::floor(t)), 0, nn - 2);
            frac[a] = t - base[a];
        }
    }
    CVector out(cdim_);
    const int corners = 1 << dom_.dim;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < dom_.dim; ++a) {
            const int bit = (c >> a) & 1;
            w *= bit ? frac[a] : 1.0 - frac[a];
            int i = base[a] + bit;
            const int nn = nodes_[static_cast<size_t>(a)];
            if (dom_.axis[static_cast<size_t>(a)].periodic) i %= nn;
            idx[static_cast<size_t>(a)] = i;
        }
        if (w != 0.0) out += w * values_[flat(idx)];
    }
    return out;
}

}  // namespace lmcf
