#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "lmcf/ambient.hpp"
#include "lmcf/chart.hpp"

namespace lmcf {

/// Holomorphic parametrization w -> (x(w), y(w)) of a curve in C^2, with
/// derivative. The image of such a curve under the hyperkahler rotation is
/// Lagrangian; that is how the explicit special Lagrangians here are built.
struct HolomorphicCurve {
    using Fn = std::function<std::array<std::complex<double>, 2>(std::complex<double>)>;
    Fn value;
    Fn derivative;
};

enum class CurveParam {
    LogPolar,   // (t, phi) -> w = e^{t + i phi}
    Cartesian,  // (u, v) -> w = u + i v
};

/// Chart of the hyperkahler-rotated curve, with analytic tangents.
class RotatedCurveChart final : public Chart {
public:
    RotatedCurveChart(HolomorphicCurve curve, CurveParam param)
        : curve_(std::move(curve)), param_(param) {}

    int pdim() const override { return 2; }
    int cdim() const override { return 2; }

    CVector position(const ParamPoint& u) const override {
        const auto z = curve_.value(w_of(u));
        return hyperkahler_rotate(make_cvector2(z[0], z[1]));
    }

    bool analytic_tangents() const override { return true; }

    CVector tangent(const ParamPoint& u, int axis) const override {
        const std::complex<double> w = w_of(u);
        const auto dz = curve_.derivative(w);
        std::complex<double> dw;
        if (param_ == CurveParam::LogPolar)
            dw = axis == 0 ? w : std::complex<double>(0, 1) * w;
        else
            dw = axis == 0 ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
        return hyperkahler_rotate(make_cvector2(dz[0] * dw, dz[1] * dw));
    }

    std::complex<double> w_of(const ParamPoint& u) const {
        if (param_ == CurveParam::LogPolar)
            return std::exp(std::complex<double>(u[0], u[1]));
        return {u[0], u[1]};
    }

private:
    HolomorphicCurve curve_;
    CurveParam param_;
};

}  // namespace lmcf
