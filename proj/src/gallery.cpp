#include "lmcf/gallery.hpp"

#include <cmath>
#include <complex>

#include "lmcf/curve_chart.hpp"
#include "lmcf/util.hpp"

namespace lmcf {

using cd = std::complex<double>;

PlaneSpec::PlaneSpec(std::vector<double> angles, int mult) : phi(std::move(angles)), multiplicity(mult) {
    if (phi.size() < 2 || phi.size() > static_cast<size_t>(kMaxComplexDim))
        throw DimensionError("PlaneSpec: need 2..4 angles");
    if (multiplicity < 1) throw LmcfError("PlaneSpec: multiplicity must be positive");
    for (double& a : phi) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
    }
}

PlaneSpec PlaneSpec::pair(double phi) { return PlaneSpec({phi, -phi}); }

double PlaneSpec::angle_sum() const {
    double s = 0;
    for (double a : phi) s += a;
    return wrap_angle(s);
}

CVector PlaneSpec::frame_vector(int a) const {
    CVector v(n());
    v.set_z(a, std::polar(1.0, phi[static_cast<size_t>(a)]));
    return v;
}

CVector PlaneSpec::embed(const std::vector<double>& x) const {
    CVector p(n());
    for (int a = 0; a < n(); ++a)
        p.set_z(a, x[static_cast<size_t>(a)] * std::polar(1.0, phi[static_cast<size_t>(a)]));
    return p;
}

std::vector<double> PlaneSpec::project(const CVector& z) const {
    std::vector<double> x(static_cast<size_t>(n()));
    for (int a = 0; a < n(); ++a) x[static_cast<size_t>(a)] = dot(z, frame_vector(a));
    return x;
}

double PlaneSpec::distance(const CVector& z) const {
    CVector q = z;
    for (int a = 0; a < n(); ++a) q -= dot(z, frame_vector(a)) * frame_vector(a);
    return q.norm();
}

LagrangianPatch certify_or_throw(LagrangianPatch p, double tol) {
    const double res = check_lagrangian(p, tol);
    if (!p.lagrangian_certified())
        throw NotCertifiedError(p.name() + ": certification failed, residual " +
                                std::to_string(res));
    return p;
}

LagrangianPatch make_plane(const PlaneSpec& spec, double extent) {
    const int n = spec.n();
    auto pos = [spec](const ParamPoint& u) {
        CVector p(spec.n());
        for (int a = 0; a < spec.n(); ++a)
            p.set_z(a, u[static_cast<size_t>(a)] * std::polar(1.0, spec.phi[static_cast<size_t>(a)]));
        return p;
    };
    auto tan = [spec](const ParamPoint&, int axis) { return spec.frame_vector(axis); };
    auto chart = std::make_shared<ClosedFormChart>(n, n, pos, tan);
    ParamDomain dom;
    dom.dim = n;
    for (int a = 0; a < n; ++a) dom.axis[static_cast<size_t>(a)] = {-extent, extent, false, true, true};
    dom.basepoint = {0, 0, 0};
    LagrangianPatch p("plane", chart, dom);
    p.area_ratio_bound = kPi * spec.multiplicity * 1.001;
    return certify_or_throw(std::move(p), 1e-10);
}

LagrangianPatch make_lawlor2(double a, double b, double r0, double R) {
    if (a == 0.0 && b == 0.0) throw LmcfError("make_lawlor2: (a,b) = (0,0)");
    if (!(r0 > 0 && R > r0)) throw DomainError("make_lawlor2: need 0 < r0 < R");
    const cd c(a, b);
    HolomorphicCurve curve{
        [c](cd w) { return std::array<cd, 2>{w, c / w}; },
        [c](cd w) { return std::array<cd, 2>{cd(1, 0), -c / (w * w)}; },
    };
    auto chart = std::make_shared<RotatedCurveChart>(curve, CurveParam::LogPolar);
    ParamDomain dom;
    dom.dim = 2;
    dom.axis[0] = {std::log(r0), std::log(R), false, true, true};
    dom.axis[1] = {0.0, kTwoPi, true, false, false};
    double t0 = 0.0;
    if (t0 < dom.axis[0].lo || t0 > dom.axis[0].hi) t0 = 0.5 * (dom.axis[0].lo + dom.axis[0].hi);
    dom.basepoint = {t0, 0, 0};
    LagrangianPatch p("lawlor2", chart, dom);
    p.area_ratio_bound = 2 * kPi * 1.2;
    return certify_or_throw(std::move(p));
}

LagrangianPatch make_sl_z2(double a, double b, double rmin, double R) {
    if (a == 0.0 && b == 0.0) throw LmcfError("make_sl_z2: (a,b) = (0,0)");
    if (!(rmin > 0 && R > rmin)) throw DomainError("make_sl_z2: need 0 < rmin < R");
    const cd c(a, b);
    HolomorphicCurve curve{
        [c](cd w) { return std::array<cd, 2>{c * w, w * w}; },
        [c](cd w) { return std::array<cd, 2>{c, 2.0 * w}; },
    };
    auto chart = std::make_shared<RotatedCurveChart>(curve, CurveParam::LogPolar);
    ParamDomain dom;
    dom.dim = 2;
    dom.axis[0] = {std::log(rmin), std::log(R), false, true, true};
    dom.axis[1] = {0.0, kTwoPi, true, false, false};
    dom.basepoint = {0.5 * (dom.axis[0].lo + dom.axis[0].hi), 0, 0};
    LagrangianPatch p("sl-z2", chart, dom);
    p.area_ratio_bound = 2 * kPi * 1.2;
    return certify_or_throw(std::move(p));
}

LagrangianPatch make_grim_reaper_product(double s_collar, double x3_extent) {
    if (!(s_collar > 0 && s_collar < kPi / 2))
        throw DomainError("make_grim_reaper_product: collar must be in (0, pi/2)");
    auto pos = [](const ParamPoint& u) {
        return make_cvector2(cd(u[0], -std::log(std::cos(u[0]))), cd(u[1], 0.0));
    };
    auto tan = [](const ParamPoint& u, int axis) {
        if (axis == 0) return make_cvector2(cd(1.0, std::tan(u[0])), 0.0);
        return make_cvector2(0.0, cd(1.0, 0.0));
    };
    auto chart = std::make_shared<ClosedFormChart>(2, 2, pos, tan);
    ParamDomain dom;
    dom.dim = 2;
    dom.axis[0] = {-kPi / 2 + s_collar, kPi / 2 - s_collar, false, true, true};
    dom.axis[1] = {-x3_extent, x3_extent, false, true, true};
    dom.basepoint = {0, 0, 0};
    LagrangianPatch p("grim-reaper", chart, dom);
    p.area_ratio_bound = 2 * kPi;
    return certify_or_throw(std::move(p), 1e-10);
}

namespace {

LagrangianPatch make_hl(int j, double a, double s_min, double s_max, const char* name) {
    if (a < 0) throw DomainError("make_hl: a must be >= 0");
    if (!(s_min > 0 && s_max > s_min)) throw DomainError("make_hl: need 0 < s_min < s_max");
    if (j < 1 || j > 3) throw DomainError("make_hl: j in 1..3");
    const int shift = j - 1;  // cyclic permutation placing the fat radius at slot j
    auto place = [shift](cd z1, cd z2, cd z3) {
        std::array<cd, 3> z{z1, z2, z3};
        std::array<cd, 3> out;
        for (int k = 0; k < 3; ++k) out[static_cast<size_t>((k + shift) % 3)] = z[static_cast<size_t>(k)];
        return make_cvector3(out[0], out[1], out[2]);
    };
    auto pos = [a, place](const ParamPoint& u) {
        const double s = u[0], p2 = u[1], p3 = u[2];
        const double Rr = std::sqrt(s * s + a);
        return place(Rr * std::polar(1.0, -(p2 + p3)), s * std::polar(1.0, p2),
                     s * std::polar(1.0, p3));
    };
    auto tan = [a, place](const ParamPoint& u, int axis) {
        const double s = u[0], p2 = u[1], p3 = u[2];
        const double Rr = std::sqrt(s * s + a);
        const cd e1 = std::polar(1.0, -(p2 + p3));
        const cd e2 = std::polar(1.0, p2);
        const cd e3 = std::polar(1.0, p3);
        const cd i(0, 1);
        switch (axis) {
            case 0: return place((s / Rr) * e1, e2, e3);
            case 1: return place(-i * Rr * e1, i * s * e2, cd(0, 0));
            default: return place(-i * Rr * e1, cd(0, 0), i * s * e3);
        }
    };
    auto chart = std::make_shared<ClosedFormChart>(3, 3, pos, tan);
    ParamDomain dom;
    dom.dim = 3;
    dom.axis[0] = {s_min, s_max, false, true, true};
    dom.axis[1] = {0.0, kTwoPi, true, false, false};
    dom.axis[2] = {0.0, kTwoPi, true, false, false};
    dom.basepoint = {0.5 * (s_min + s_max), 0, 0};
    LagrangianPatch p(name, chart, dom, /*orientation=*/-1);
    // the cone link is a flat T^2 of area (2 pi)^2 sqrt(3)/3-ish; generous bound
    p.area_ratio_bound = 16.0;
    return certify_or_throw(std::move(p), 1e-9);
}

}  // namespace

LagrangianPatch make_hl_cone(double s_min, double s_max) {
    return make_hl(1, 0.0, s_min, s_max, "hl-cone");
}

LagrangianPatch make_hl_smoothing(int j, double a, double s_min, double s_max) {
    if (!(a > 0)) throw DomainError("make_hl_smoothing: a must be > 0");
    return make_hl(j, a, s_min, s_max, "hl-smoothing");
}

LagrangianPatch translate_patch(const LagrangianPatch& p, const CVector& v) {
    CVector offset = v;
    offset *= -1.0;
    auto chart = std::make_shared<TransformedChart>(p.chart_ptr(), 1.0, offset);
    LagrangianPatch out(p.name() + "+shift", chart, p.domain(), p.orientation(), p.geom());
    out.area_ratio_bound = p.area_ratio_bound;
    check_lagrangian(out, std::max(p.certification_residual() * 4, 1e-8));
    return out;
}

const std::vector<GalleryEntry>& gallery_registry() {
    static const std::vector<GalleryEntry> reg = [] {
        std::vector<GalleryEntry> v;
        v.push_back({"plane",
                     "Lagrangian plane P_phi (params phi1..phi3, extent)",
                     {{"phi1", 0.0}, {"phi2", 0.0}, {"phi3", std::nan("")}, {"extent", 3.0}},
                     [](const std::map<std::string, double>& m) {
                         std::vector<double> phi{m.at("phi1"), m.at("phi2")};
                         if (!std::isnan(m.at("phi3"))) phi.push_back(m.at("phi3"));
                         return make_plane(PlaneSpec(phi), m.at("extent"));
                     }});
        v.push_back({"lawlor2",
                     "Lawlor neck L_{pi/2}(a+ib) in C^2",
                     {{"a", 1.0}, {"b", 0.0}, {"r0", 0.05}, {"R", 40.0}},
                     [](const std::map<std::string, double>& m) {
                         return make_lawlor2(m.at("a"), m.at("b"), m.at("r0"), m.at("R"));
                     }});
        v.push_back({"sl-z2",
                     "multiplicity-two-plane special Lagrangian L(a+ib)",
                     {{"a", 1.0}, {"b", 0.0}, {"rmin", 1e-3}, {"R", 20.0}},
                     [](const std::map<std::string, double>& m) {
                         return make_sl_z2(m.at("a"), m.at("b"), m.at("rmin"), m.at("R"));
                     }});
        v.push_back({"grim-reaper",
                     "grim reaper curve x R (translator)",
                     {{"collar", 0.1}, {"extent", 2.0}},
                     [](const std::map<std::string, double>& m) {
                         return make_grim_reaper_product(m.at("collar"), m.at("extent"));
                     }});
        v.push_back({"hl-cone",
                     "T^2-invariant special Lagrangian cone in C^3",
                     {{"smin", 0.05}, {"smax", 6.0}},
                     [](const std::map<std::string, double>& m) {
                         return make_hl_cone(m.at("smin"), m.at("smax"));
                     }});
        v.push_back({"hl-smoothing",
                     "Harvey-Lawson smoothing L_j(a) in C^3",
                     {{"j", 1.0}, {"a", 1.0}, {"smin", 0.02}, {"smax", 6.0}},
                     [](const std::map<std::string, double>& m) {
                         return make_hl_smoothing(static_cast<int>(m.at("j")), m.at("a"),
                                                  m.at("smin"), m.at("smax"));
                     }});
        return v;
    }();
    return reg;
}

LagrangianPatch build_from_registry(const std::string& name, std::map<std::string, double> params) {
    for (const auto& e : gallery_registry()) {
        if (e.name != name) continue;
        std::map<std::string, double> merged = e.defaults;
        for (const auto& [k, val] : params) {
            if (!merged.count(k))
                throw LmcfError("gallery '" + name + "': unknown parameter '" + k + "'");
            merged[k] = val;
        }
        return e.build(merged);
    }
    throw LmcfError("gallery: unknown name '" + name + "'");
}

}  // namespace lmcf
