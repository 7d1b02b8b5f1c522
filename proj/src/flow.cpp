#include "lmcf/flow.hpp"

#include <cmath>

#include "lmcf/util.hpp"

namespace lmcf {

PrescribedMotion PrescribedMotion::make_static(LagrangianPatch p) {
    return PrescribedMotion{std::move(p), Kind::Static, CVector(p.n()), 0.0, CVector(p.n())};
}

PrescribedMotion PrescribedMotion::translation(LagrangianPatch p, CVector v) {
    if (!v.finite()) throw LmcfError("PrescribedMotion: velocity must be finite");
    const int n = p.n();
    return PrescribedMotion{std::move(p), Kind::Translation, std::move(v), 0.0, CVector(n)};
}

PrescribedMotion PrescribedMotion::dilation(LagrangianPatch p, double rate, CVector center) {
    if (!std::isfinite(rate)) throw LmcfError("PrescribedMotion: rate must be finite");
    const int n = p.n();
    return PrescribedMotion{std::move(p), Kind::Dilation, CVector(n), rate, std::move(center)};
}

LagrangianPatch PrescribedMotion::at_time(double t) const {
    switch (kind) {
        case Kind::Static:
            return base;
        case Kind::Translation: {
            CVector off = translation_velocity;
            off *= -t;
            auto chart = std::make_shared<TransformedChart>(base.chart_ptr(), 1.0, off);
            LagrangianPatch p(base.name() + "@t", chart, base.domain(), base.orientation(),
                              base.geom());
            check_lagrangian(p, std::max(1e-8, base.certification_residual() * 4));
            return p;
        }
        case Kind::Dilation: {
            const double s = 1.0 + dilation_rate * t;
            if (!(s > 0)) throw DomainError("PrescribedMotion: dilation factor not positive");
            // s (F - c) + c  ==  s (F - off), off = c (1 - 1/s)
            CVector off = dilation_center;
            off *= 1.0 - 1.0 / s;
            auto chart = std::make_shared<TransformedChart>(base.chart_ptr(), s, off);
            LagrangianPatch p(base.name() + "@t", chart, base.domain(), base.orientation(),
                              base.geom());
            check_lagrangian(p, std::max(1e-8 * std::max(1.0, s * s),
                                         base.certification_residual() * s * s * 4));
            return p;
        }
    }
    throw LmcfError("PrescribedMotion: bad kind");
}

CVector PrescribedMotion::velocity_at(const CVector& x) const {
    switch (kind) {
        case Kind::Static:
            return CVector(x.n());
        case Kind::Translation:
            return translation_velocity;
        case Kind::Dilation: {
            CVector v = x - dilation_center;
            v *= dilation_rate;
            return v;
        }
    }
    throw LmcfError("PrescribedMotion: bad kind");
}

namespace {

double soliton_sup(const LagrangianPatch& p, const GridSpec& grid,
                   const std::function<double(const GeometrySample&, int, double*)>& covector) {
    p.require_certified("soliton residual");
    double sup = 0.0;
    for_each_sample(p, grid, GeomDepth::Full,
                    [&](const std::array<int, 3>&, const GeometrySample& s) {
                        double c[3] = {0, 0, 0};
                        for (int a = 0; a < p.pdim(); ++a) covector(s, a, &c[a]);
                        double v = 0.0;
                        for (int a = 0; a < p.pdim(); ++a)
                            for (int b = 0; b < p.pdim(); ++b) v += s.ginv[a][b] * c[a] * c[b];
                        sup = std::max(sup, std::sqrt(std::max(v, 0.0)));
                    });
    return sup;
}

}  // namespace

double shrinker_residual(const LagrangianPatch& p, double t, const GridSpec& grid) {
    if (!(t < 0)) throw DomainError("shrinker_residual: requires t < 0");
    return soliton_sup(p, grid, [t](const GeometrySample& s, int a, double* out) {
        *out = s.dtheta[static_cast<size_t>(a)] + s.liouville[static_cast<size_t>(a)] / (2 * t);
    });
}

double shrinker_residual(const std::vector<const LagrangianPatch*>& ps, double t,
                         const GridSpec& grid) {
    double sup = 0.0;
    for (const auto* p : ps) sup = std::max(sup, shrinker_residual(*p, t, grid));
    return sup;
}

double translator_residual(const LagrangianPatch& p, const CVector& alpha,
                           const GridSpec& grid) {
    return soliton_sup(p, grid, [&alpha](const GeometrySample& s, int a, double* out) {
        double av = 0.0;
        for (int k = 0; k < 2 * s.position.n(); ++k)
            av += alpha[k] * s.tangent[static_cast<size_t>(a)][k];
        *out = s.dtheta[static_cast<size_t>(a)] - av;
    });
}

double evolution_residual_theta(const PrescribedMotion& motion, const ParamPoint& u, double t,
                                double h_t, double h_x) {
    LagrangianPatch now = motion.at_time(t);
    LagrangianPatch fwd = motion.at_time(t + h_t);
    LagrangianPatch bwd = motion.at_time(t - h_t);

    GeometrySample s = geometry_at(now, u, GeomDepth::Full);
    const double th_f = geometry_at(fwd, u, GeomDepth::FirstOrder).theta_raw;
    const double th_b = geometry_at(bwd, u, GeomDepth::FirstOrder).theta_raw;
    const double dtheta_dt = wrap_angle(th_f - th_b) / (2 * h_t);

    const double lap = angle_laplacian(now, u, h_x);

    const CVector W = motion.velocity_at(s.position);
    double advect = 0.0;
    for (int a = 0; a < now.pdim(); ++a) {
        double ca = 0.0;
        for (int b = 0; b < now.pdim(); ++b)
            ca += s.ginv[a][b] * dot(W, s.tangent[static_cast<size_t>(b)]);
        advect += ca * s.dtheta[static_cast<size_t>(a)];
    }
    return std::abs(dtheta_dt - lap - advect);
}

LagrangianPatch euler_step(const LagrangianPatch& p, double dt, std::array<int, 3> nodes) {
    if (!(dt > 0)) throw DomainError("euler_step: dt must be positive");
    p.require_certified("euler_step");
    const ParamDomain& dom = p.domain();
    const int dim = p.pdim();

    std::vector<CVector> values;
    std::array<int, 3> counts{1, 1, 1};
    for (int a = 0; a < dim; ++a) counts[static_cast<size_t>(a)] = nodes[static_cast<size_t>(a)];
    values.reserve(static_cast<size_t>(counts[0]) * counts[1] * counts[2]);

    // node positions first (grid geometry needs all nodes)
    auto node_point = [&](const std::array<int, 3>& idx) {
        ParamPoint u{0, 0, 0};
        for (int a = 0; a < dim; ++a) {
            const AxisSpec& ax = dom.axis[static_cast<size_t>(a)];
            const int nn = counts[static_cast<size_t>(a)];
            const double h = ax.length() / (ax.periodic ? nn : nn - 1);
            u[static_cast<size_t>(a)] = ax.lo + h * idx[static_cast<size_t>(a)];
        }
        return u;
    };

    std::array<int, 3> idx{0, 0, 0};
    for (idx[0] = 0; idx[0] < counts[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < counts[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < counts[2]; ++idx[2])
                values.push_back(p.chart().position(node_point(idx)));

    GridChart probe(dom, counts, values, p.n());  // for interiority and steps
    std::vector<CVector> stepped = values;
    std::size_t flat = 0;
    for (idx[0] = 0; idx[0] < counts[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < counts[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < counts[2]; ++idx[2], ++flat) {
                if (!probe.interior(idx)) continue;
                GeometrySample s = geometry_at(p, node_point(idx), GeomDepth::Full);
                stepped[flat] += dt * s.mean_curvature;
            }

    auto chart = std::make_shared<GridChart>(dom, counts, std::move(stepped), p.n());
    LagrangianPatch out(p.name() + "+step", chart, dom, p.orientation());
    const double h = chart->natural_step();
    check_lagrangian(out, 10 * h * h);
    // immersion is re-checked by the metric inversions inside check_lagrangian
    return out;
}

}  // namespace lmcf
