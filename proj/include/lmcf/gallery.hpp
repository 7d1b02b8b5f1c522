#pragma once

#include <map>
#include <string>
#include <vector>

#include "lmcf/patch.hpp"

namespace lmcf {

/// Lagrangian plane P_phi = {(e^{i phi_1} x_1, ..., e^{i phi_n} x_n)}.
/// Special Lagrangian with angle sum(phi_j); angle 0 when the sum is 0 mod
/// 2*pi.
struct PlaneSpec {
    std::vector<double> phi;   // stored in [0, 2*pi)
    int multiplicity = 1;      // bookkeeping for unions

    explicit PlaneSpec(std::vector<double> angles, int mult = 1);

    /// n = 2 pair (phi, -phi).
    static PlaneSpec pair(double phi);

    int n() const { return static_cast<int>(phi.size()); }
    double angle_sum() const;  // reduced to (-pi, pi]

    /// Orthonormal real frame of the plane (e^{i phi_a} in slot a).
    CVector frame_vector(int a) const;
    /// Point of the plane with coordinates x.
    CVector embed(const std::vector<double>& x) const;
    /// Orthogonal projection coordinates of an ambient point.
    std::vector<double> project(const CVector& z) const;
    /// Distance from an ambient point to the plane.
    double distance(const CVector& z) const;
};

LagrangianPatch make_plane(const PlaneSpec& spec, double extent = 3.0);

/// L_{pi/2}(a+ib): hyperkahler rotation of {w1 w2 = a+ib}, parametrized
/// log-polar over r in [r0, R]. Exact iff b = 0; a = case b = 0 is the
/// SO(2)-invariant Lagrangian catenoid.
LagrangianPatch make_lawlor2(double a, double b, double r0 = 0.05, double R = 40.0);

/// L(a+ib): hyperkahler rotation of {(c w, w^2)}, asymptotic to a
/// multiplicity-two plane. Log-polar over r in [rmin, R] (the chart's polar
/// origin is excluded by a collar).
LagrangianPatch make_sl_z2(double a, double b, double rmin = 1e-3, double R = 20.0);

/// Grim reaper curve {s - i log cos s} times an R factor; translator with
/// alpha = dx1, Lagrangian angle theta(s,u) = s.
LagrangianPatch make_grim_reaper_product(double s_collar = 0.1, double x3_extent = 2.0);

/// T^2-invariant special Lagrangian cone in C^3.
LagrangianPatch make_hl_cone(double s_min = 0.05, double s_max = 6.0);

/// Harvey-Lawson smoothing L_j(a), j in {1,2,3}; not exact, the generator
/// loop integral of lambda has magnitude 2*pi*a.
LagrangianPatch make_hl_smoothing(int j, double a, double s_min = 0.02, double s_max = 6.0);

/// F(u) -> F(u) + v, certification preserved.
LagrangianPatch translate_patch(const LagrangianPatch& p, const CVector& v);

/// Certify a freshly built patch (analytic tolerance) or throw.
LagrangianPatch certify_or_throw(LagrangianPatch p, double tol = 1e-8);

/// String-keyed constructor registry for the CLI.
struct GalleryEntry {
    std::string name;
    std::string description;
    std::map<std::string, double> defaults;
    std::function<LagrangianPatch(const std::map<std::string, double>&)> build;
};

const std::vector<GalleryEntry>& gallery_registry();
LagrangianPatch build_from_registry(const std::string& name,
                                    std::map<std::string, double> params);

}  // namespace lmcf
