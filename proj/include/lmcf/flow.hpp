#pragma once

#include "lmcf/patch.hpp"

namespace lmcf {

/// Patch family moving with a prescribed ambient velocity field.
struct PrescribedMotion {
    enum class Kind { Static, Translation, Dilation };

    LagrangianPatch base;
    Kind kind = Kind::Static;
    CVector translation_velocity;  // Kind::Translation
    double dilation_rate = 0.0;    // Kind::Dilation
    CVector dilation_center;

    static PrescribedMotion make_static(LagrangianPatch p);
    static PrescribedMotion translation(LagrangianPatch p, CVector v);
    static PrescribedMotion dilation(LagrangianPatch p, double rate, CVector center);

    LagrangianPatch at_time(double t) const;
    CVector velocity_at(const CVector& x) const;
};

/// sup over samples of |dtheta + lambda/(2t)|_g. Vanishes exactly on
/// self-shrinkers; requires t < 0.
double shrinker_residual(const LagrangianPatch& p, double t,
                         const GridSpec& grid = GridSpec(32, 32, 16));

/// sup over a family of patches (e.g. a union of planes).
double shrinker_residual(const std::vector<const LagrangianPatch*>& ps, double t,
                         const GridSpec& grid = GridSpec(32, 32, 16));

/// sup over samples of |dtheta - alpha(dF)|_g for a constant ambient 1-form
/// alpha (components in the 2n real coordinates).
double translator_residual(const LagrangianPatch& p, const CVector& alpha,
                           const GridSpec& grid = GridSpec(32, 32, 16));

/// |d/dt theta - Laplacian theta - <W^T, grad theta>| at (u, t): the
/// linear-heat evolution of the angle along the prescribed motion, with the
/// advection term the fixed-parameter time derivative picks up.
double evolution_residual_theta(const PrescribedMotion& motion, const ParamPoint& u, double t,
                                double h_t, double h_x);

/// One explicit mean-curvature step F <- F + dt H on a node grid; boundary
/// ring frozen. Returns a sampled-grid patch. The stable regime is
/// dt <= h^2/4.
LagrangianPatch euler_step(const LagrangianPatch& p, double dt,
                           std::array<int, 3> nodes = {33, 33, 17});

}  // namespace lmcf
