#include "lmcf/patch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <random>
#include <vector>

#include "lmcf/util.hpp"

namespace lmcf {

namespace {

void invert_metric(const double g[3][3], int dim, double ginv[3][3], double& det) {
    double scale = 0.0;
    for (int a = 0; a < dim; ++a) scale = std::max(scale, g[a][a]);
    const double floor = 1e-13 * std::pow(scale, dim);
    if (dim == 1) {
        det = g[0][0];
        if (det <= floor) throw NotImmersedError("degenerate metric");
        ginv[0][0] = 1.0 / det;
        return;
    }
    if (dim == 2) {
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if (det <= floor) throw NotImmersedError("degenerate metric");
        const double inv = 1.0 / det;
        ginv[0][0] = g[1][1] * inv;
        ginv[1][1] = g[0][0] * inv;
        ginv[0][1] = ginv[1][0] = -g[0][1] * inv;
        return;
    }
    det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
          g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
          g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    if (det <= floor) throw NotImmersedError("degenerate metric");
    const double inv = 1.0 / det;
    ginv[0][0] = (g[1][1] * g[2][2] - g[1][2] * g[2][1]) * inv;
    ginv[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) * inv;
    ginv[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) * inv;
    ginv[1][0] = ginv[0][1];
    ginv[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) * inv;
    ginv[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) * inv;
    ginv[2][0] = ginv[0][2];
    ginv[2][1] = ginv[1][2];
    ginv[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) * inv;
}

ParamPoint shifted(const ParamPoint& u, int axis, double h) {
    ParamPoint v = u;
    v[static_cast<size_t>(axis)] += h;
    return v;
}

struct Evaluator {
    std::shared_ptr<const Chart> chart_keepalive;
    const Chart& chart;
    int dim;
    int orientation;
    GeomOptions geo;
    bool analytic;

    Evaluator(std::shared_ptr<const Chart> c, int orientation_, GeomOptions g)
        : chart_keepalive(std::move(c)),
          chart(*chart_keepalive),
          dim(chart.pdim()),
          orientation(orientation_),
          geo(g) {
        analytic = chart.analytic_tangents() && !geo.force_fd;
        if (geo.step <= 0) geo.step = chart.natural_step() > 0 ? chart.natural_step() : 1e-5;
    }

    Evaluator(const LagrangianPatch& p, const GeomOptions& g)
        : Evaluator(p.chart_ptr(), p.orientation(), g) {}

    CVector pos(const ParamPoint& u) const { return chart.position(u); }

    CVector tan(const ParamPoint& u, int a) const {
        if (analytic) return chart.tangent(u, a);
        const double h = geo.step;
        return (1.0 / (2 * h)) * (pos(shifted(u, a, h)) - pos(shifted(u, a, -h)));
    }

    void frame(const ParamPoint& u, std::array<CVector, 3>& T) const {
        for (int a = 0; a < dim; ++a) T[static_cast<size_t>(a)] = tan(u, a);
    }

    double theta_raw(const ParamPoint& u) const {
        std::array<CVector, 3> T;
        frame(u, T);
        return theta_raw_from_frame(T);
    }

    double theta_raw_from_frame(const std::array<CVector, 3>& T) const {
        std::complex<double> vol =
            holomorphic_volume(std::span<const CVector>(T.data(), static_cast<size_t>(dim)));
        if (std::abs(vol) == 0.0)
            throw LmcfError("lagrangian_angle: vanishing holomorphic volume");
        if (orientation < 0) vol = -vol;
        return std::arg(vol);
    }

    /// Second derivative d_a d_b F. Analytic charts difference the analytic
    /// tangents; FD charts use position stencils at the same step.
    CVector second(const ParamPoint& u, int a, int b) const {
        const double h = geo.step;
        if (analytic) {
            CVector sab = (1.0 / (2 * h)) *
                          (chart.tangent(shifted(u, a, h), b) - chart.tangent(shifted(u, a, -h), b));
            CVector sba = (1.0 / (2 * h)) *
                          (chart.tangent(shifted(u, b, h), a) - chart.tangent(shifted(u, b, -h), a));
            return 0.5 * (sab + sba);
        }
        if (a == b) {
            CVector c = pos(u);
            return (1.0 / (h * h)) * (pos(shifted(u, a, h)) - 2.0 * c + pos(shifted(u, a, -h)));
        }
        ParamPoint pp = shifted(shifted(u, a, h), b, h);
        ParamPoint pm = shifted(shifted(u, a, h), b, -h);
        ParamPoint mp = shifted(shifted(u, a, -h), b, h);
        ParamPoint mm = shifted(shifted(u, a, -h), b, -h);
        return (1.0 / (4 * h * h)) * (pos(pp) - pos(pm) - pos(mp) + pos(mm));
    }
};

int sym_index(int a, int b) {
    if (a > b) std::swap(a, b);
    // (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    static constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[a][b];
}

GeometrySample evaluate(const Evaluator& ev, const ParamPoint& u, GeomDepth depth) {
    GeometrySample s;
    s.param = u;
    const int dim = ev.dim;
    s.position = ev.pos(u);
    ev.frame(u, s.tangent);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b <= a; ++b) {
            s.g[a][b] = s.g[b][a] = dot(s.tangent[static_cast<size_t>(a)],
                                        s.tangent[static_cast<size_t>(b)]);
        }
    invert_metric(s.g, dim, s.ginv, s.det_g);
    s.sqrt_det_g = std::sqrt(s.det_g);
    s.theta_raw = ev.theta_raw_from_frame(s.tangent);

    for (int a = 0; a < dim; ++a)
        s.liouville[static_cast<size_t>(a)] =
            liouville_form(s.position, s.tangent[static_cast<size_t>(a)]);

    if (depth == GeomDepth::FirstOrder) return s;

    // normal projection helper
    auto normal_part = [&](const CVector& v) {
        CVector out = v;
        double coeff[3];
        for (int a = 0; a < dim; ++a) {
            coeff[a] = 0.0;
            for (int b = 0; b < dim; ++b)
                coeff[a] += s.ginv[a][b] * dot(v, s.tangent[static_cast<size_t>(b)]);
        }
        for (int a = 0; a < dim; ++a) out -= coeff[a] * s.tangent[static_cast<size_t>(a)];
        return out;
    };

    std::array<CVector, 6> A;  // normal parts of second derivatives
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) A[static_cast<size_t>(sym_index(a, b))] =
            normal_part(ev.second(u, a, b));

    CVector H(ev.chart.cdim());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            H += s.ginv[a][b] * A[static_cast<size_t>(sym_index(a, b))];
    s.mean_curvature = H;

    double a2 = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d)
                    a2 += s.ginv[a][c] * s.ginv[b][d] *
                          dot(A[static_cast<size_t>(sym_index(a, b))],
                              A[static_cast<size_t>(sym_index(c, d))]);
    s.a2 = std::max(a2, 0.0);

    const double h = ev.geo.step;
    for (int a = 0; a < dim; ++a) {
        const double tp = ev.theta_raw(shifted(u, a, h));
        const double tm = ev.theta_raw(shifted(u, a, -h));
        s.dtheta[static_cast<size_t>(a)] = wrap_angle(tp - tm) / (2 * h);
    }

    s.position_normal = normal_part(s.position);

    double cH[3], cL[3];
    for (int a = 0; a < dim; ++a) {
        cH[a] = kahler_form(H, s.tangent[static_cast<size_t>(a)]) + s.dtheta[static_cast<size_t>(a)];
        cL[a] = kahler_form(s.position_normal, s.tangent[static_cast<size_t>(a)]) -
                s.liouville[static_cast<size_t>(a)];
    }
    auto gnorm = [&](const double c[3]) {
        double v = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) v += s.ginv[a][b] * c[a] * c[b];
        return std::sqrt(std::max(v, 0.0));
    };
    s.residual_H = gnorm(cH);
    s.residual_lambda = gnorm(cL);
    return s;
}

}  // namespace

LagrangianPatch::LagrangianPatch(std::string name, std::shared_ptr<const Chart> chart,
                                 ParamDomain domain, int orientation, GeomOptions geo)
    : name_(std::move(name)),
      chart_(std::move(chart)),
      domain_(std::move(domain)),
      orientation_(orientation),
      geo_(geo) {
    if (!chart_) throw LmcfError("LagrangianPatch: null chart");
    if (chart_->pdim() != domain_.dim) throw DimensionError("LagrangianPatch: domain/chart dim");
    if (chart_->pdim() != chart_->cdim())
        throw DimensionError("LagrangianPatch: parameter dimension must equal complex dimension");
}

GeometrySample geometry_at(const LagrangianPatch& p, const ParamPoint& u, GeomDepth depth) {
    return geometry_at(p, u, depth, p.geom());
}

GeometrySample geometry_at(const LagrangianPatch& p, const ParamPoint& u, GeomDepth depth,
                           const GeomOptions& geo) {
    Evaluator ev(p, geo);
    return evaluate(ev, u, depth);
}

void induced_metric(const LagrangianPatch& p, const ParamPoint& u, double g[3][3]) {
    GeometrySample s = geometry_at(p, u, GeomDepth::FirstOrder);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) g[a][b] = s.g[a][b];
}

double check_lagrangian(const LagrangianPatch& p, double tol, const GridSpec& grid) {
    Evaluator ev(p, p.geom());
    double worst = 0.0;
    MidpointGrid mg(p.domain(), grid);
    std::array<CVector, 3> T;
    mg.for_each([&](const std::array<int, 3>&, const ParamPoint& u) {
        ev.frame(u, T);
        // immersion invariant
        double g[3][3] = {}, gi[3][3], det;
        for (int a = 0; a < p.pdim(); ++a)
            for (int b = 0; b <= a; ++b)
                g[a][b] = g[b][a] =
                    dot(T[static_cast<size_t>(a)], T[static_cast<size_t>(b)]);
        invert_metric(g, p.pdim(), gi, det);
        for (int a = 0; a < p.pdim(); ++a)
            for (int b = a + 1; b < p.pdim(); ++b)
                worst = std::max(worst, std::abs(kahler_form(T[static_cast<size_t>(a)],
                                                             T[static_cast<size_t>(b)])));
    });
    p.cert_residual_ = worst;
    p.certified_ = worst <= tol;
    return worst;
}

namespace {

/// Total continued-angle increment along the straight parameter segment from
/// a to b, by adaptive unwrapping.
double angle_increment(const Evaluator& ev, const ParamPoint& a, const ParamPoint& b) {
    int steps = 24;
    for (;;) {
        double total = 0.0;
        bool ok = true;
        double prev = ev.theta_raw(a);
        for (int k = 1; k <= steps; ++k) {
            ParamPoint u;
            const double t = static_cast<double>(k) / steps;
            for (int i = 0; i < 3; ++i)
                u[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] +
                                            t * (b[static_cast<size_t>(i)] - a[static_cast<size_t>(i)]);
            const double cur = ev.theta_raw(u);
            const double d = wrap_angle(cur - prev);
            if (std::abs(d) > 0.8) {
                ok = false;
                break;
            }
            total += d;
            prev = cur;
        }
        if (ok) return total;
        steps *= 2;
        if (steps > 16384) throw LmcfError("lagrangian_angle: branch continuation did not resolve");
    }
}

/// Axis-ordered polyline from the basepoint to u (stays inside a product
/// domain).
std::vector<ParamPoint> basepoint_path(const ParamDomain& dom, const ParamPoint& u,
                                       bool reverse_axes = false) {
    std::vector<ParamPoint> nodes;
    ParamPoint cur = dom.basepoint;
    nodes.push_back(cur);
    for (int k = 0; k < dom.dim; ++k) {
        const int a = reverse_axes ? dom.dim - 1 - k : k;
        cur[static_cast<size_t>(a)] = u[static_cast<size_t>(a)];
        nodes.push_back(cur);
    }
    return nodes;
}

}  // namespace

double lagrangian_angle(const LagrangianPatch& p, const ParamPoint& u) {
    p.require_certified("lagrangian_angle");
    p.domain().require_contains(u, "lagrangian_angle");
    Evaluator ev(p, p.geom());
    const auto path = basepoint_path(p.domain(), u);
    double theta = ev.theta_raw(p.domain().basepoint);
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        theta += angle_increment(ev, path[k], path[k + 1]);
    return theta;
}

CVector mean_curvature(const LagrangianPatch& p, const ParamPoint& u) {
    p.require_certified("mean_curvature");
    return geometry_at(p, u, GeomDepth::Full).mean_curvature;
}

double second_fundamental_norm2(const LagrangianPatch& p, const ParamPoint& u) {
    return geometry_at(p, u, GeomDepth::Full).a2;
}

std::array<double, 3> pullback_liouville(const LagrangianPatch& p, const ParamPoint& u) {
    p.require_certified("pullback_liouville");
    return geometry_at(p, u, GeomDepth::FirstOrder).liouville;
}

Loop axis_loop(const LagrangianPatch& p, int axis, const ParamPoint& at) {
    const AxisSpec ax = p.domain().axis[static_cast<size_t>(axis)];
    if (!ax.periodic) throw DomainError("axis_loop: axis is not periodic");
    Loop loop;
    loop.gamma = [axis, ax, at](double t) {
        ParamPoint u = at;
        u[static_cast<size_t>(axis)] = ax.lo + t * ax.length();
        return u;
    };
    return loop;
}

double loop_integral(const LagrangianPatch& p, const Loop& loop, LoopForm form) {
    p.require_certified("loop_integral");
    const ParamPoint u0 = loop.gamma(0.0);
    const ParamPoint u1 = loop.gamma(1.0);
    for (int a = 0; a < p.pdim(); ++a) {
        const AxisSpec& ax = p.domain().axis[static_cast<size_t>(a)];
        double d = u1[static_cast<size_t>(a)] - u0[static_cast<size_t>(a)];
        if (ax.periodic) d = std::remainder(d, ax.length());
        if (std::abs(d) > 1e-9) throw DomainError("loop_integral: path is not closed");
    }

    Evaluator ev(p, p.geom());
    const int n = std::max(loop.segments, 16);

    if (form == LoopForm::DTheta) {
        int steps = n;
        for (;;) {
            double total = 0.0;
            bool ok = true;
            double prev = ev.theta_raw(loop.gamma(0.0));
            for (int k = 1; k <= steps; ++k) {
                ParamPoint u = loop.gamma(static_cast<double>(k) / steps);
                p.domain().require_contains(u, "loop_integral");
                const double cur = ev.theta_raw(u);
                const double d = wrap_angle(cur - prev);
                if (std::abs(d) > 0.8) {
                    ok = false;
                    break;
                }
                total += d;
                prev = cur;
            }
            if (ok) return total;
            steps *= 2;
            if (steps > 65536) throw LmcfError("loop_integral: dtheta unwrap did not resolve");
        }
    }

    // composite midpoint in t with FD parameter velocity
    double total = 0.0;
    const double dt = 1.0 / n;
    const double eps = dt / 8;
    for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) * dt;
        const ParamPoint u = loop.gamma(t);
        p.domain().require_contains(u, "loop_integral");
        const ParamPoint up = loop.gamma(t + eps);
        const ParamPoint um = loop.gamma(t - eps);
        double vel[3];
        for (int a = 0; a < p.pdim(); ++a)
            vel[a] = (up[static_cast<size_t>(a)] - um[static_cast<size_t>(a)]) / (2 * eps);
        GeometrySample s = evaluate(ev, u, GeomDepth::FirstOrder);
        double val = 0.0;
        for (int a = 0; a < p.pdim(); ++a) val += vel[a] * s.liouville[static_cast<size_t>(a)];
        total += val * dt;
    }
    return total;
}

namespace {

/// Composite-Simpson integral of the Liouville pullback along the straight
/// parameter segment a -> b.
double liouville_segment_integral(const Evaluator& ev, const ParamPoint& a, const ParamPoint& b,
                                  int segments) {
    double dir[3];
    for (int i = 0; i < 3; ++i)
        dir[i] = b[static_cast<size_t>(i)] - a[static_cast<size_t>(i)];
    auto integrand = [&](double t) {
        ParamPoint u;
        for (int i = 0; i < 3; ++i)
            u[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] + t * dir[i];
        GeometrySample s = evaluate(ev, u, GeomDepth::FirstOrder);
        double val = 0.0;
        for (int i = 0; i < ev.dim; ++i) val += dir[i] * s.liouville[static_cast<size_t>(i)];
        return val;
    };
    const int n = std::max(2, segments / 2 * 2);
    const double h = 1.0 / n;
    double sum = integrand(0.0) + integrand(1.0);
    for (int k = 1; k < n; ++k) sum += integrand(k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

PotentialField exactness_potential(const LagrangianPatch& p, double loop_tol, int probe_points) {
    p.require_certified("exactness_potential");
    // homology generators: one loop per periodic axis
    for (int a = 0; a < p.pdim(); ++a) {
        if (!p.domain().axis[static_cast<size_t>(a)].periodic) continue;
        ParamPoint mid = p.domain().basepoint;
        const double v = loop_integral(p, axis_loop(p, a, mid), LoopForm::Liouville);
        if (std::abs(v) > loop_tol)
            throw NonExactError("exactness_potential: non-exact patch (generator loop integral " +
                                    std::to_string(v) + ")",
                                v);
    }

    auto chart = p.chart_ptr();
    const ParamDomain dom = p.domain();
    const int orientation = p.orientation();
    const GeomOptions geo = p.geom();
    auto beta_via = [chart, dom, orientation, geo](const ParamPoint& u, bool reverse) {
        Evaluator ev(chart, orientation, geo);
        const auto path = basepoint_path(dom, u, reverse);
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            total += liouville_segment_integral(ev, path[k], path[k + 1], 256);
        return total;
    };

    PotentialField f;
    f.eval_ = [beta_via, dom](const ParamPoint& u) {
        dom.require_contains(u, "exactness_potential");
        return beta_via(u, false);
    };

    // path-independence residual on a deterministic probe family
    std::mt19937_64 rng(0x5eedULL);
    double worst = 0.0;
    for (int k = 0; k < probe_points; ++k) {
        ParamPoint u{0, 0, 0};
        for (int a = 0; a < p.pdim(); ++a) {
            const AxisSpec& ax = dom.axis[static_cast<size_t>(a)];
            std::uniform_real_distribution<double> dist(ax.lo, ax.hi);
            u[static_cast<size_t>(a)] = dist(rng);
        }
        worst = std::max(worst, std::abs(beta_via(u, false) - beta_via(u, true)));
    }
    f.path_residual_ = worst;
    return f;
}

namespace {

/// Flux-form Laplace-Beltrami of a scalar with exact covector field c_a(u):
/// (1/sqrt g) d_a ( sqrt g g^{ab} c_b ).
double covector_divergence(const LagrangianPatch& p, const ParamPoint& u, double h,
                           const std::function<void(const GeometrySample&, double*)>& covector) {
    Evaluator ev(p, p.geom());
    auto flux = [&](const ParamPoint& v, int a) {
        GeometrySample s = evaluate(ev, v, GeomDepth::FirstOrder);
        double c[3] = {0, 0, 0};
        covector(s, c);
        double f = 0.0;
        for (int b = 0; b < p.pdim(); ++b) f += s.ginv[a][b] * c[b];
        return s.sqrt_det_g * f;
    };
    GeometrySample s0 = evaluate(ev, u, GeomDepth::FirstOrder);
    double div = 0.0;
    for (int a = 0; a < p.pdim(); ++a)
        div += (flux(shifted(u, a, h), a) - flux(shifted(u, a, -h), a)) / (2 * h);
    return div / s0.sqrt_det_g;
}

}  // namespace

double potential_laplacian(const LagrangianPatch& p, const ParamPoint& u, double h) {
    return covector_divergence(p, u, h, [&](const GeometrySample& s, double* c) {
        for (int a = 0; a < p.pdim(); ++a) c[a] = s.liouville[static_cast<size_t>(a)];
    });
}

double angle_laplacian(const LagrangianPatch& p, const ParamPoint& u, double h) {
    // c_a = d_a theta, by wrapped central differences of the raw angle
    Evaluator ev(p, p.geom());
    const double hs = ev.geo.step;
    return covector_divergence(p, u, h, [&](const GeometrySample& s, double* c) {
        for (int a = 0; a < p.pdim(); ++a) {
            const double tp = ev.theta_raw(shifted(s.param, a, hs));
            const double tm = ev.theta_raw(shifted(s.param, a, -hs));
            c[a] = wrap_angle(tp - tm) / (2 * hs);
        }
    });
}

void for_each_sample(const LagrangianPatch& p, const GridSpec& grid, GeomDepth depth,
                     const std::function<void(const std::array<int, 3>&, const GeometrySample&)>& f) {
    Evaluator ev(p, p.geom());
    MidpointGrid mg(p.domain(), grid);
    mg.for_each([&](const std::array<int, 3>& idx, const ParamPoint& u) {
        f(idx, evaluate(ev, u, depth));
    });
}

double almost_calibrated_margin(const LagrangianPatch& p, const GridSpec& grid) {
    p.require_certified("almost_calibrated_margin");
    // continued branch: the raw angle is unwrapped against the circular mean
    std::vector<double> thetas;
    for_each_sample(p, grid, GeomDepth::FirstOrder,
                    [&](const std::array<int, 3>&, const GeometrySample& s) {
                        thetas.push_back(s.theta_raw);
                    });
    double cx = 0, sx = 0;
    for (double t : thetas) {
        cx += std::cos(t);
        sx += std::sin(t);
    }
    const double mean = std::atan2(sx, cx);
    double m = 1.0;
    for (double t : thetas) m = std::min(m, std::cos(mean + wrap_angle(t - mean)));
    return m;
}

IntegralResult integrate_scalar(const LagrangianPatch& p,
                                const std::function<double(const GeometrySample&)>& field,
                                const GridSpec& grid) {
    auto run = [&](const GridSpec& g) {
        MidpointGrid mg(p.domain(), g);
        const double vol = mg.cell_volume();
        Evaluator ev(p, p.geom());
        double total = 0.0;
        mg.for_each([&](const std::array<int, 3>&, const ParamPoint& u) {
            GeometrySample s = evaluate(ev, u, GeomDepth::Full);
            total += field(s) * s.sqrt_det_g * vol;
        });
        return total;
    };
    IntegralResult r;
    GridSpec coarse = grid;
    for (int a = 0; a < p.pdim(); ++a)
        coarse.n[static_cast<size_t>(a)] = std::max(4, grid.n[static_cast<size_t>(a)] / 2);
    const double fine = run(grid);
    const double rough = run(coarse);
    r.value = fine;
    r.refinement_estimate = std::abs(fine - rough);
    return r;
}

SupResiduals residual_sups(const LagrangianPatch& p, const GridSpec& grid) {
    return residual_sups(p, grid, p.geom());
}

SupResiduals residual_sups(const LagrangianPatch& p, const GridSpec& grid, const GeomOptions& geo) {
    Evaluator ev(p, geo);
    MidpointGrid mg(p.domain(), grid);
    SupResiduals r;
    std::vector<double> thetas;
    mg.for_each([&](const std::array<int, 3>&, const ParamPoint& u) {
        GeometrySample s = evaluate(ev, u, GeomDepth::Full);
        r.sup_H = std::max(r.sup_H, s.mean_curvature.norm());
        r.sup_residual_H = std::max(r.sup_residual_H, s.residual_H);
        r.sup_residual_lambda = std::max(r.sup_residual_lambda, s.residual_lambda);
        thetas.push_back(s.theta_raw);
    });
    double cx = 0, sx = 0;
    for (double t : thetas) {
        cx += std::cos(t);
        sx += std::sin(t);
    }
    r.mean_theta = std::atan2(sx, cx);
    for (double t : thetas)
        r.sup_theta_dev = std::max(r.sup_theta_dev, std::abs(wrap_angle(t - r.mean_theta)));
    return r;
}

void dump_samples_csv(const LagrangianPatch& p, const GridSpec& grid, std::ostream& os) {
    os << "u0,u1,u2";
    for (int j = 0; j < p.n(); ++j) os << ",x" << j + 1 << ",y" << j + 1;
    os << ",theta,a2,h_norm";
    for (int a = 0; a < p.pdim(); ++a) os << ",lambda" << a;
    os << "\n";
    os.precision(17);
    for_each_sample(p, grid, GeomDepth::Full,
                    [&](const std::array<int, 3>&, const GeometrySample& s) {
                        os << s.param[0] << "," << s.param[1] << "," << s.param[2];
                        for (int j = 0; j < p.n(); ++j)
                            os << "," << s.position.x(j) << "," << s.position.y(j);
                        os << "," << s.theta_raw << "," << s.a2 << ","
                           << s.mean_curvature.norm();
                        for (int a = 0; a < p.pdim(); ++a)
                            os << "," << s.liouville[static_cast<size_t>(a)];
                        os << "\n";
                    });
}

}  // namespace lmcf
