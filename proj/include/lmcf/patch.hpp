#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "lmcf/ambient.hpp"
#include "lmcf/chart.hpp"
#include "lmcf/cvector.hpp"
#include "lmcf/domain.hpp"
#include "lmcf/errors.hpp"

namespace lmcf {

/// How derivatives are taken when evaluating geometry.
struct GeomOptions {
    /// FD step for derivatives not supplied analytically; 0 = auto (chart's
    /// natural step if it has one, else 1e-5).
    double step = 0.0;
    bool force_fd = false;  // take even first derivatives from positions (convergence studies)
};

/// Immersed Lagrangian piece: chart + product domain + orientation, immutable
/// after construction except for the one-shot certification flag.
class LagrangianPatch {
public:
    LagrangianPatch(std::string name, std::shared_ptr<const Chart> chart, ParamDomain domain,
                    int orientation = +1, GeomOptions geo = {});

    const std::string& name() const { return name_; }
    int n() const { return chart_->cdim(); }
    int pdim() const { return chart_->pdim(); }
    const Chart& chart() const { return *chart_; }
    std::shared_ptr<const Chart> chart_ptr() const { return chart_; }
    const ParamDomain& domain() const { return domain_; }
    int orientation() const { return orientation_; }
    const GeomOptions& geom() const { return geo_; }

    bool lagrangian_certified() const { return certified_; }
    double certification_residual() const { return cert_residual_; }
    void require_certified(const char* who) const {
        if (!certified_) throw NotCertifiedError(std::string(who) + ": patch is not certified");
    }

    /// Area-ratio constant hint H^n(L cap B_r)/r^n <= C, when known.
    std::optional<double> area_ratio_bound;

    friend double check_lagrangian(const LagrangianPatch& p, double tol, const GridSpec& grid);

private:
    std::string name_;
    std::shared_ptr<const Chart> chart_;
    ParamDomain domain_;
    int orientation_;
    GeomOptions geo_;
    mutable bool certified_ = false;
    mutable double cert_residual_ = 0.0;
};

/// Pointwise geometric data of a patch at one parameter point.
struct GeometrySample {
    ParamPoint param{};
    CVector position;
    std::array<CVector, 3> tangent;
    double g[3][3] = {};
    double ginv[3][3] = {};
    double det_g = 0.0;
    double sqrt_det_g = 0.0;
    double theta_raw = 0.0;  // principal-branch Lagrangian angle

    // second-order data (GeomDepth::Full)
    CVector mean_curvature;
    double a2 = 0.0;  // |A|^2
    std::array<double, 3> dtheta{};
    std::array<double, 3> liouville{};
    CVector position_normal;   // x^perp
    double residual_H = 0.0;       // |omega(H,.) + dtheta|_g
    double residual_lambda = 0.0;  // |omega(x^perp,.) - lambda|_g
};

enum class GeomDepth { FirstOrder, Full };

GeometrySample geometry_at(const LagrangianPatch& p, const ParamPoint& u,
                           GeomDepth depth = GeomDepth::Full);
GeometrySample geometry_at(const LagrangianPatch& p, const ParamPoint& u, GeomDepth depth,
                           const GeomOptions& geo);

/// Induced metric g_ab = <d_a F, d_b F>; throws NotImmersedError on a
/// degenerate Gram matrix.
void induced_metric(const LagrangianPatch& p, const ParamPoint& u, double g[3][3]);

/// Max over grid samples and index pairs of |omega(d_a F, d_b F)|. Sets the
/// certification flag iff the residual is <= tol.
double check_lagrangian(const LagrangianPatch& p, double tol = 1e-8,
                        const GridSpec& grid = GridSpec(24, 24, 24));

/// Lagrangian angle with the branch continued along axis-aligned paths from
/// the domain basepoint.
double lagrangian_angle(const LagrangianPatch& p, const ParamPoint& u);

CVector mean_curvature(const LagrangianPatch& p, const ParamPoint& u);

double second_fundamental_norm2(const LagrangianPatch& p, const ParamPoint& u);

/// Components lambda(d_a F) of the Liouville pullback.
std::array<double, 3> pullback_liouville(const LagrangianPatch& p, const ParamPoint& u);

/// Closed parameter-space path, t in [0,1].
struct Loop {
    std::function<ParamPoint(double)> gamma;
    int segments = 512;
};

enum class LoopForm { Liouville, DTheta };

/// Generator circle of a periodic axis at fixed values of the other axes.
Loop axis_loop(const LagrangianPatch& p, int axis, const ParamPoint& at);

/// Line integral of the chosen pullback 1-form around a closed loop.
/// For DTheta the result is a multiple of 2*pi up to quadrature error.
double loop_integral(const LagrangianPatch& p, const Loop& loop, LoopForm form);

/// Primitive of the Liouville pullback from the domain basepoint, defined for
/// exact patches. Throws NonExactError when a generator loop integral of
/// lambda exceeds loop_tol.
class PotentialField {
public:
    double operator()(const ParamPoint& u) const { return eval_(u); }
    double path_independence_residual() const { return path_residual_; }

private:
    friend PotentialField exactness_potential(const LagrangianPatch& p, double loop_tol,
                                              int probe_points);
    std::function<double(const ParamPoint&)> eval_;
    double path_residual_ = 0.0;
};

PotentialField exactness_potential(const LagrangianPatch& p, double loop_tol = 1e-8,
                                   int probe_points = 8);

/// Laplace-Beltrami of the potential via flux differences of its exact
/// differential (the Liouville pullback).
double potential_laplacian(const LagrangianPatch& p, const ParamPoint& u, double h);

/// Laplace-Beltrami of the continued Lagrangian angle, by flux differences.
double angle_laplacian(const LagrangianPatch& p, const ParamPoint& u, double h);

/// min over samples of cos(theta) with the continued branch.
double almost_calibrated_margin(const LagrangianPatch& p,
                                const GridSpec& grid = GridSpec(48, 48, 24));

struct IntegralResult {
    double value = 0.0;
    double refinement_estimate = 0.0;  // |value - coarser-grid value|
};

/// Quadrature of field * sqrt(det g) over the domain (midpoint rule), with a
/// convergence estimate from one grid coarsening.
IntegralResult integrate_scalar(const LagrangianPatch& p,
                                const std::function<double(const GeometrySample&)>& field,
                                const GridSpec& grid);

/// Streaming evaluation over a midpoint grid.
void for_each_sample(const LagrangianPatch& p, const GridSpec& grid, GeomDepth depth,
                     const std::function<void(const std::array<int, 3>&, const GeometrySample&)>& f);

struct SupResiduals {
    double sup_H = 0.0;              // sup |H|
    double sup_residual_H = 0.0;     // sup |omega(H,.) + dtheta|_g
    double sup_residual_lambda = 0.0;
    double sup_theta_dev = 0.0;      // sup |theta - mean theta| (continued branch)
    double mean_theta = 0.0;
};

/// Sups of the structure-identity residuals over a grid.
SupResiduals residual_sups(const LagrangianPatch& p, const GridSpec& grid);
SupResiduals residual_sups(const LagrangianPatch& p, const GridSpec& grid, const GeomOptions& geo);

/// One row per grid sample: parameters, position, theta, |A|^2, |H|, lambda
/// components. Column schema written as the header line.
void dump_samples_csv(const LagrangianPatch& p, const GridSpec& grid, std::ostream& os);

}  // namespace lmcf
