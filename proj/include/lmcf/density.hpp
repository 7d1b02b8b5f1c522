#pragma once

#include <optional>
#include <vector>

#include "lmcf/patch.hpp"

namespace lmcf {

/// Backwards-heat-kernel query: center x0, scale l, time t < l.
struct DensityQuery {
    CVector center;
    double scale = 1.0;  // l
    double time = 0.0;   // t

    double tau() const {
        const double d = scale - time;
        if (!(d > 0)) throw DomainError("DensityQuery: requires t < l");
        return d;
    }
};

/// exp(-|x-x0|^2 / 4(l-t)) / (4 pi (l-t))^{n/2}.
double heat_kernel(const DensityQuery& q, const CVector& x);

/// One truncated chart end (a face of the parameter box).
struct EndInfo {
    int axis = 0;
    bool hi_side = false;
    bool infinite = false;    // face sits at large ambient radius; surface continues outward
    double face_measure = 0;  // (n-1)-area of the face
    double min_radius = 0;    // min |F| on the face
    double mean_radius = 0;
    double cap_area_bound = 0;  // isoperimetric bound on the discarded area (finite ends)
};

std::vector<EndInfo> analyze_ends(const LagrangianPatch& p, int face_samples = 96);

/// Quadrature samples of a patch: positions, weights sqrt(det g) * cell
/// volume, and enough cell data to refine ball boundaries. Holds its own
/// copy of the (cheap, chart-sharing) patch.
class PatchSampleCache {
public:
    PatchSampleCache(const LagrangianPatch& p, const GridSpec& grid);

    const LagrangianPatch& patch() const { return patch_; }
    std::size_t size() const { return weights_.size(); }
    int n() const { return patch_.n(); }
    double total_area() const { return total_area_; }
    double median_radius() const { return median_radius_; }

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& positions() const { return positions_; }  // interleaved 2n
    CVector position(std::size_t i) const;
    ParamPoint param(std::size_t i) const;

    /// sum_i w_i exp(-|x_i - center|^2/(4 tau)); the caller normalizes.
    double gaussian_sum(const CVector& center, double tau) const;

    /// mass of {|F - center| <= rho}, boundary cells refined to `depth`.
    double ball_mass(const CVector& center, double rho, int depth = 3) const;

    /// same, weighting each cell by a per-sample field value.
    double ball_integral(const CVector& center, double rho, const std::vector<double>& field,
                         int depth = 3) const;

    /// integral of the field over the whole cached domain.
    double integral(const std::vector<double>& field) const;

    /// Evaluate a per-sample field.
    std::vector<double> make_field(
        const std::function<double(const GeometrySample&)>& f, GeomDepth depth) const;

    const std::vector<EndInfo>& ends() const { return ends_; }
    /// min |F - center| over infinite ends (coverage radius of the cache).
    double covered_radius(const CVector& center) const;

    /// measured sup over dyadic radii of mass(B_r)/r^n, with margin.
    double measured_area_ratio_const(const CVector& center) const;

private:
    LagrangianPatch patch_;
    GridSpec grid_;
    std::vector<double> positions_;
    std::vector<double> weights_;
    std::vector<double> params_;
    std::vector<double> cell_radius_;  // ambient half-diameter estimate per cell
    mutable std::vector<double> sqdist_;
    std::array<double, 3> half_step_{0, 0, 0};
    double total_area_ = 0;
    double median_radius_ = 0;
    std::vector<EndInfo> ends_;
};

struct DensityResult {
    double value = 0;
    double tail_bound = 0;
    double covered_radius = 0;
};

/// Gaussian density ratio Theta = sum over patches of the heat-kernel
/// integral, with a reported tail bound for the uncovered region. Throws
/// InsufficientTruncationError when the charts do not reach the radius the
/// requested tolerance needs.
DensityResult gaussian_density(const std::vector<const LagrangianPatch*>& patches,
                               const DensityQuery& q, double tol = 1e-6,
                               const GridSpec& grid = GridSpec(420, 128, 48));

/// Reusable evaluator: caches are built once, queried for many (x0, tau).
class DensityEvaluator {
public:
    DensityEvaluator(std::vector<const LagrangianPatch*> patches, const GridSpec& grid);
    explicit DensityEvaluator(std::vector<PatchSampleCache> caches);

    DensityResult theta(const CVector& x0, double tau, double tol = 1e-6,
                        bool enforce_coverage = true) const;
    const std::vector<PatchSampleCache>& caches() const { return caches_; }

private:
    std::vector<PatchSampleCache> caches_;
};

struct AreaRatioResult {
    double value = 0;
    bool lower_bound_only = false;  // ball exceeds chart coverage
};

/// H^n(patch cap B_r(x)) / r^n by restricted quadrature.
AreaRatioResult area_ratio(const PatchSampleCache& cache, const CVector& x, double r);
AreaRatioResult area_ratio(const LagrangianPatch& p, const CVector& x, double r,
                           const GridSpec& grid = GridSpec(420, 128, 48));

/// u -> sigma * (F(u) - center); certification and Gaussian densities are
/// parabolic-scaling covariant.
LagrangianPatch rescale_patch(const LagrangianPatch& p, double sigma, const CVector& center);

/// Type II normalization: rescale so |A| = 1 at the image of p. Errors on a
/// flat point.
LagrangianPatch normalize_by_curvature(const LagrangianPatch& p, const ParamPoint& u);

struct MonotonicityPoint {
    double l = 0;
    double theta = 0;
    double tail = 0;
};

struct MonotonicityReport {
    std::vector<MonotonicityPoint> points;
    bool nondecreasing = false;
    double sup_H = 0;
    double limit_small_l = 0;  // Richardson-extrapolated l -> 0 limit
    double limit_large_l = 0;  // Richardson-extrapolated l -> infinity limit
};

/// Theta(x0, l) over an l-grid for a static minimal patch; checks the
/// monotone-in-l consequence of Huisken monotonicity and extrapolates the
/// two end limits.
MonotonicityReport density_monotonicity_check(const LagrangianPatch& p, const CVector& x0,
                                              const std::vector<double>& l_grid,
                                              double minimality_tol = 1e-5,
                                              const GridSpec& grid = GridSpec(420, 128, 48));

}  // namespace lmcf
