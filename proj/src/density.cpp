#include "lmcf/density.hpp"

#include <algorithm>
#include <cmath>

#include "lmcf/kern.hpp"
#include "lmcf/util.hpp"

namespace lmcf {

double heat_kernel(const DensityQuery& q, const CVector& x) {
    const double tau = q.tau();
    q.center.check_same(x);
    const double d2 = (x - q.center).norm2();
    const int n = x.n();
    return std::exp(-d2 / (4 * tau)) / std::pow(4 * kPi * tau, n / 2.0);
}

std::vector<EndInfo> analyze_ends(const LagrangianPatch& p, int face_samples) {
    std::vector<EndInfo> ends;
    const ParamDomain& dom = p.domain();
    const int dim = p.pdim();

    // median ambient radius over a coarse interior grid, to classify ends
    std::vector<double> radii;
    MidpointGrid mg(dom, GridSpec(12, 12, 12));
    mg.for_each([&](const std::array<int, 3>&, const ParamPoint& u) {
        radii.push_back(p.chart().position(u).norm());
    });
    std::nth_element(radii.begin(), radii.begin() + radii.size() / 2, radii.end());
    const double median = radii[radii.size() / 2];

    for (int a = 0; a < dim; ++a) {
        const AxisSpec& ax = dom.axis[static_cast<size_t>(a)];
        for (int side = 0; side < 2; ++side) {
            const bool hi = side == 1;
            if (!(hi ? ax.truncated_hi : ax.truncated_lo)) continue;
            EndInfo e;
            e.axis = a;
            e.hi_side = hi;

            // face grid over the remaining axes
            ParamDomain face = dom;
            double area = 0, rmin = std::numeric_limits<double>::infinity(), rsum = 0;
            long count = 0;
            GridSpec fg;
            for (int b = 0; b < 3; ++b) fg.n[static_cast<size_t>(b)] = 1;
            for (int b = 0; b < dim; ++b)
                if (b != a) fg.n[static_cast<size_t>(b)] = face_samples;
            const double uface = hi ? ax.hi : ax.lo;
            double cellvol = 1.0;
            for (int b = 0; b < dim; ++b)
                if (b != a)
                    cellvol *= dom.axis[static_cast<size_t>(b)].length() /
                               fg.n[static_cast<size_t>(b)];
            MidpointGrid fgrid(face, fg);
            fgrid.for_each([&](const std::array<int, 3>&, const ParamPoint& u0) {
                ParamPoint u = u0;
                u[static_cast<size_t>(a)] = uface;
                GeometrySample s = geometry_at(p, u, GeomDepth::FirstOrder);
                // (n-1)-measure of the face: Gram determinant of the non-axis tangents
                double gf[3][3] = {};
                int idx[2];
                int m = 0;
                for (int b = 0; b < dim; ++b)
                    if (b != a) idx[m++] = b;
                double detf = 1.0;
                if (m == 1) {
                    detf = s.g[idx[0]][idx[0]];
                } else if (m == 2) {
                    gf[0][0] = s.g[idx[0]][idx[0]];
                    gf[0][1] = gf[1][0] = s.g[idx[0]][idx[1]];
                    gf[1][1] = s.g[idx[1]][idx[1]];
                    detf = gf[0][0] * gf[1][1] - gf[0][1] * gf[1][0];
                }
                area += std::sqrt(std::max(detf, 0.0)) * cellvol;
                const double r = s.position.norm();
                rmin = std::min(rmin, r);
                rsum += r;
                ++count;
            });
            e.face_measure = area;
            e.min_radius = rmin;
            e.mean_radius = rsum / static_cast<double>(count);
            e.infinite = e.mean_radius > median;
            if (!e.infinite) {
                // isoperimetric cap bound with margin 2
                if (dim == 2)
                    e.cap_area_bound = 2.0 * area * area / (4 * kPi);
                else
                    e.cap_area_bound = 2.0 * std::pow(area, 1.5) / (6 * std::sqrt(kPi));
            }
            ends.push_back(e);
        }
    }
    return ends;
}

PatchSampleCache::PatchSampleCache(const LagrangianPatch& p, const GridSpec& grid)
    : patch_(p), grid_(grid) {
    p.require_certified("PatchSampleCache");
    const int dim = p.pdim();
    const int n2 = 2 * p.n();
    MidpointGrid mg(p.domain(), grid);
    const double vol = mg.cell_volume();
    for (int a = 0; a < dim; ++a) half_step_[static_cast<size_t>(a)] = 0.5 * mg.step(a);

    const long total = grid.total(dim);
    positions_.reserve(static_cast<size_t>(total) * static_cast<size_t>(n2));
    weights_.reserve(static_cast<size_t>(total));
    params_.reserve(static_cast<size_t>(total) * static_cast<size_t>(dim));
    cell_radius_.reserve(static_cast<size_t>(total));

    for_each_sample(p, grid, GeomDepth::FirstOrder,
                    [&](const std::array<int, 3>&, const GeometrySample& s) {
                        for (int k = 0; k < n2; ++k) positions_.push_back(s.position[k]);
                        weights_.push_back(s.sqrt_det_g * vol);
                        for (int a = 0; a < dim; ++a)
                            params_.push_back(s.param[static_cast<size_t>(a)]);
                        double rad = 0;
                        for (int a = 0; a < dim; ++a)
                            rad += half_step_[static_cast<size_t>(a)] *
                                   s.tangent[static_cast<size_t>(a)].norm();
                        cell_radius_.push_back(rad * 1.2);
                        total_area_ += weights_.back();
                    });
    sqdist_.resize(weights_.size());

    std::vector<double> radii(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) radii[i] = position(i).norm();
    std::nth_element(radii.begin(), radii.begin() + radii.size() / 2, radii.end());
    median_radius_ = radii[radii.size() / 2];

    ends_ = analyze_ends(p);
}

CVector PatchSampleCache::position(std::size_t i) const {
    CVector v(patch_.n());
    const int n2 = 2 * patch_.n();
    for (int k = 0; k < n2; ++k) v[k] = positions_[i * static_cast<size_t>(n2) + static_cast<size_t>(k)];
    return v;
}

ParamPoint PatchSampleCache::param(std::size_t i) const {
    ParamPoint u{0, 0, 0};
    const int dim = patch_.pdim();
    for (int a = 0; a < dim; ++a)
        u[static_cast<size_t>(a)] = params_[i * static_cast<size_t>(dim) + static_cast<size_t>(a)];
    return u;
}

double PatchSampleCache::gaussian_sum(const CVector& center, double tau) const {
    const int n2 = 2 * patch_.n();
    double c[2 * kMaxComplexDim];
    for (int k = 0; k < n2; ++k) c[k] = center[k];
    const auto& K = kern::active();
    K.squared_distances(positions_.data(), weights_.size(), c, n2, sqdist_.data());
    return K.weighted_exp_sum(weights_.data(), sqdist_.data(), weights_.size(), 1.0 / (4 * tau));
}

namespace {

/// Recursive mass of a parameter cell inside the ball, subdividing straddling
/// cells; leaf cells contribute a linear fraction.
double refined_cell_mass(const LagrangianPatch& p, const ParamPoint& center_param,
                         const std::array<double, 3>& half, const CVector& x, double rho,
                         int depth) {
    GeometrySample s = geometry_at(p, center_param, GeomDepth::FirstOrder);
    const int dim = p.pdim();
    double vol = 1.0, rad = 0.0;
    for (int a = 0; a < dim; ++a) {
        vol *= 2 * half[static_cast<size_t>(a)];
        rad += half[static_cast<size_t>(a)] * s.tangent[static_cast<size_t>(a)].norm();
    }
    rad *= 1.2;
    const double mass = s.sqrt_det_g * vol;
    const double d = (s.position - x).norm();
    if (d + rad <= rho) return mass;
    if (d - rad >= rho) return 0.0;
    if (depth == 0) {
        const double f = std::clamp(0.5 + (rho - d) / (2 * rad), 0.0, 1.0);
        return mass * f;
    }
    std::array<double, 3> h2 = half;
    for (int a = 0; a < dim; ++a) h2[static_cast<size_t>(a)] *= 0.5;
    double total = 0.0;
    const int corners = 1 << dim;
    for (int c = 0; c < corners; ++c) {
        ParamPoint sub = center_param;
        for (int a = 0; a < dim; ++a)
            sub[static_cast<size_t>(a)] +=
                (((c >> a) & 1) ? 1.0 : -1.0) * h2[static_cast<size_t>(a)];
        total += refined_cell_mass(p, sub, h2, x, rho, depth - 1);
    }
    return total;
}

}  // namespace

double PatchSampleCache::ball_mass(const CVector& center, double rho, int depth) const {
    return ball_integral(center, rho, {}, depth);
}

double PatchSampleCache::ball_integral(const CVector& center, double rho,
                                       const std::vector<double>& field, int depth) const {
    const bool weighted = !field.empty();
    const int n2 = 2 * patch_.n();
    double c[2 * kMaxComplexDim];
    for (int k = 0; k < n2; ++k) c[k] = center[k];
    kern::active().squared_distances(positions_.data(), weights_.size(), c, n2, sqdist_.data());
    double total = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double d = std::sqrt(sqdist_[i]);
        const double rad = cell_radius_[i];
        const double f = weighted ? field[i] : 1.0;
        if (d + rad <= rho) {
            total += weights_[i] * f;
        } else if (d - rad < rho) {
            const double m =
                refined_cell_mass(patch_, param(i), half_step_, center, rho, depth);
            total += m * f;
        }
    }
    return total;
}

double PatchSampleCache::integral(const std::vector<double>& field) const {
    return kern::active().dot(weights_.data(), field.data(), weights_.size());
}

std::vector<double> PatchSampleCache::make_field(
    const std::function<double(const GeometrySample&)>& f, GeomDepth depth) const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i)
        out.push_back(f(geometry_at(patch_, param(i), depth)));
    return out;
}

double PatchSampleCache::covered_radius(const CVector& center) const {
    double rad = std::numeric_limits<double>::infinity();
    for (const EndInfo& e : ends_) {
        if (!e.infinite) continue;
        // distance from the query center to the face, conservatively
        rad = std::min(rad, std::max(0.0, e.min_radius - center.norm()));
    }
    return rad;
}

double PatchSampleCache::measured_area_ratio_const(const CVector& center) const {
    const double rmax = covered_radius(center);
    double cbound = 0.0;
    const double r0 = std::max(1e-2, median_radius_ / 64.0);
    for (double r = r0; r <= (std::isfinite(rmax) ? rmax : median_radius_ * 4); r *= 2) {
        const double mass = ball_integral(center, r, {}, 0);
        cbound = std::max(cbound, mass / std::pow(r, patch_.n()));
    }
    if (patch_.area_ratio_bound) cbound = std::max(cbound, *patch_.area_ratio_bound);
    return cbound * 1.3;
}

namespace {

/// Bound on int_{dist(x,x0) > R} Phi dH^n given ball masses about x0 bounded
/// by C r^n: Stieltjes integration by parts gives
/// int_R^inf (-f'(r)) C r^n dr with f(r) = exp(-r^2/4 tau)/(4 pi tau)^{n/2}.
double gaussian_tail_bound(double R, double tau, int n, double C) {
    const double norm = std::pow(4 * kPi * tau, n / 2.0);
    const double hi = R + 14 * std::sqrt(tau);
    const int steps = 400;
    const double h = (hi - R) / steps;
    double sum = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double r = R + (k + 0.5) * h;
        sum += r / (2 * tau) * std::exp(-r * r / (4 * tau)) / norm * C * std::pow(r, n) * h;
    }
    return sum;
}

double cap_tail_bound(const PatchSampleCache& cache, const CVector& x0, double tau) {
    double bound = 0.0;
    const int n = cache.n();
    const double norm = std::pow(4 * kPi * tau, n / 2.0);
    for (const EndInfo& e : cache.ends()) {
        if (e.infinite) continue;
        const double cap_diam = std::sqrt(std::max(e.cap_area_bound, 0.0));
        const double d = std::max(0.0, e.min_radius - x0.norm() - cap_diam);
        bound += std::exp(-d * d / (4 * tau)) / norm * e.cap_area_bound;
    }
    return bound;
}

}  // namespace

DensityEvaluator::DensityEvaluator(std::vector<const LagrangianPatch*> patches,
                                   const GridSpec& grid) {
    for (const auto* p : patches) caches_.emplace_back(*p, grid);
}

DensityEvaluator::DensityEvaluator(std::vector<PatchSampleCache> caches)
    : caches_(std::move(caches)) {}

DensityResult DensityEvaluator::theta(const CVector& x0, double tau, double tol,
                                      bool enforce_coverage) const {
    DensityResult out;
    out.covered_radius = std::numeric_limits<double>::infinity();
    const double per_patch_tol = tol / static_cast<double>(caches_.size());
    for (const auto& cache : caches_) {
        const int n = cache.n();
        const double norm = std::pow(4 * kPi * tau, n / 2.0);
        out.value += cache.gaussian_sum(x0, tau) / norm;

        const double cover = cache.covered_radius(x0);
        out.covered_radius = std::min(out.covered_radius, cover);
        const double C = cache.measured_area_ratio_const(x0);
        double tail = std::isfinite(cover) ? gaussian_tail_bound(cover, tau, n, C) : 0.0;
        tail += cap_tail_bound(cache, x0, tau);
        out.tail_bound += tail;

        if (enforce_coverage && std::isfinite(cover)) {
            // radius the tolerance would need
            double need = 2 * std::sqrt(tau);
            while (gaussian_tail_bound(need, tau, n, C) > per_patch_tol && need < 1e9)
                need *= 1.3;
            if (cover < need)
                throw InsufficientTruncationError(
                    cache.patch().name() + ": chart covers radius " + std::to_string(cover) +
                    " but tolerance needs " + std::to_string(need));
        }
    }
    return out;
}

DensityResult gaussian_density(const std::vector<const LagrangianPatch*>& patches,
                               const DensityQuery& q, double tol, const GridSpec& grid) {
    DensityEvaluator ev(patches, grid);
    return ev.theta(q.center, q.tau(), tol);
}

AreaRatioResult area_ratio(const PatchSampleCache& cache, const CVector& x, double r) {
    if (!(r > 0)) throw DomainError("area_ratio: r must be positive");
    AreaRatioResult out;
    out.value = cache.ball_mass(x, r) / std::pow(r, cache.n());
    out.lower_bound_only = r > cache.covered_radius(x);
    return out;
}

AreaRatioResult area_ratio(const LagrangianPatch& p, const CVector& x, double r,
                           const GridSpec& grid) {
    PatchSampleCache cache(p, grid);
    return area_ratio(cache, x, r);
}

LagrangianPatch rescale_patch(const LagrangianPatch& p, double sigma, const CVector& center) {
    if (!(sigma > 0)) throw DomainError("rescale_patch: sigma must be positive");
    auto chart = std::make_shared<TransformedChart>(p.chart_ptr(), sigma, center);
    LagrangianPatch out(p.name() + "@" + std::to_string(sigma), chart, p.domain(),
                        p.orientation(), p.geom());
    out.area_ratio_bound = p.area_ratio_bound;
    check_lagrangian(out, std::max(1e-8 * std::max(1.0, sigma * sigma),
                                   p.certification_residual() * sigma * sigma * 4));
    if (!out.lagrangian_certified())
        throw NotCertifiedError("rescale_patch: certification lost");
    return out;
}

LagrangianPatch normalize_by_curvature(const LagrangianPatch& p, const ParamPoint& u) {
    const double a2 = second_fundamental_norm2(p, u);
    if (a2 < 1e-16)
        throw LmcfError("normalize_by_curvature: flat point, no Type II normalization");
    return rescale_patch(p, std::sqrt(a2), p.chart().position(u));
}

MonotonicityReport density_monotonicity_check(const LagrangianPatch& p, const CVector& x0,
                                              const std::vector<double>& l_grid,
                                              double minimality_tol, const GridSpec& grid) {
    MonotonicityReport rep;
    rep.sup_H = residual_sups(p, GridSpec(24, 24, 12)).sup_H;
    if (rep.sup_H > minimality_tol)
        throw LmcfError("density_monotonicity_check: patch is not minimal (sup|H| = " +
                        std::to_string(rep.sup_H) + ")");

    DensityEvaluator ev({&p}, grid);
    for (double l : l_grid) {
        DensityResult r = ev.theta(x0, l, 1e-5);
        rep.points.push_back({l, r.value, r.tail_bound});
    }
    rep.nondecreasing = true;
    for (std::size_t k = 0; k + 1 < rep.points.size(); ++k) {
        const double slack = rep.points[k].tail + rep.points[k + 1].tail + 1e-9;
        if (rep.points[k + 1].theta < rep.points[k].theta - slack) rep.nondecreasing = false;
    }

    // limits by first-order Richardson at the grid ends: theta - theta0 ~ c l
    // at the bottom, theta_inf - theta ~ C / l at the top.
    if (rep.points.size() >= 2) {
        const auto& p0 = rep.points[0];
        const auto& p1 = rep.points[1];
        rep.limit_small_l = p0.theta - p0.l * (p1.theta - p0.theta) / (p1.l - p0.l);
        const auto& q1 = rep.points[rep.points.size() - 2];
        const auto& q0 = rep.points[rep.points.size() - 1];
        const double C = (q0.theta - q1.theta) / (1.0 / q1.l - 1.0 / q0.l);
        rep.limit_large_l = q0.theta + C / q0.l;
    }
    return rep;
}

}  // namespace lmcf
