#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lmcf/cvector.hpp"
#include "lmcf/domain.hpp"

namespace lmcf {

/// Parametrization F : D in R^p -> C^n. Concrete charts either supply
/// analytic first derivatives or leave them to finite differences.
class Chart {
public:
    virtual ~Chart() = default;

    virtual int pdim() const = 0;  // parameter dimension
    virtual int cdim() const = 0;  // ambient complex dimension

    virtual CVector position(const ParamPoint& u) const = 0;

    virtual bool analytic_tangents() const { return false; }
    virtual CVector tangent(const ParamPoint& /*u*/, int /*axis*/) const {
        throw LmcfError("Chart: analytic tangent not available");
    }

    /// Preferred finite-difference step, if the chart has a natural scale
    /// (grid charts use the grid spacing). <= 0 means no preference.
    virtual double natural_step() const { return 0.0; }
};

/// Closed-form chart from callables.
class ClosedFormChart final : public Chart {
public:
    using PosFn = std::function<CVector(const ParamPoint&)>;
    using TanFn = std::function<CVector(const ParamPoint&, int)>;

    ClosedFormChart(int pdim, int cdim, PosFn pos, TanFn tan = nullptr)
        : pdim_(pdim), cdim_(cdim), pos_(std::move(pos)), tan_(std::move(tan)) {}

    int pdim() const override { return pdim_; }
    int cdim() const override { return cdim_; }
    CVector position(const ParamPoint& u) const override { return pos_(u); }
    bool analytic_tangents() const override { return static_cast<bool>(tan_); }
    CVector tangent(const ParamPoint& u, int axis) const override {
        if (!tan_) throw LmcfError("ClosedFormChart: no analytic tangents");
        return tan_(u, axis);
    }

private:
    int pdim_, cdim_;
    PosFn pos_;
    TanFn tan_;
};

/// Affine image of another chart: u -> scale * (F(u) - offset). Used for
/// parabolic rescaling and translations; preserves analytic derivatives.
class TransformedChart final : public Chart {
public:
    TransformedChart(std::shared_ptr<const Chart> base, double scale, CVector offset)
        : base_(std::move(base)), scale_(scale), offset_(std::move(offset)) {}

    int pdim() const override { return base_->pdim(); }
    int cdim() const override { return base_->cdim(); }
    CVector position(const ParamPoint& u) const override {
        return scale_ * (base_->position(u) - offset_);
    }
    bool analytic_tangents() const override { return base_->analytic_tangents(); }
    CVector tangent(const ParamPoint& u, int axis) const override {
        return scale_ * base_->tangent(u, axis);
    }
    double natural_step() const override { return base_->natural_step(); }

private:
    std::shared_ptr<const Chart> base_;
    double scale_;
    CVector offset_;
};

/// Uniformly sampled chart on a node grid; positions stored per node,
/// evaluation by multilinear interpolation, derivatives from the grid.
/// Output type of the explicit flow step.
class GridChart final : public Chart {
public:
    GridChart(const ParamDomain& dom, std::array<int, 3> nodes, std::vector<CVector> values,
              int cdim);

    int pdim() const override { return dom_.dim; }
    int cdim() const override { return cdim_; }
    CVector position(const ParamPoint& u) const override;
    double natural_step() const override { return min_step_; }

    const ParamDomain& grid_domain() const { return dom_; }
    std::array<int, 3> nodes() const { return nodes_; }
    double step(int a) const { return step_[static_cast<size_t>(a)]; }

    const CVector& node_value(const std::array<int, 3>& idx) const {
        return values_[flat(idx)];
    }
    ParamPoint node_point(const std::array<int, 3>& idx) const;
    bool interior(const std::array<int, 3>& idx) const;

private:
    std::size_t flat(const std::array<int, 3>& idx) const;

    ParamDomain dom_;
    std::array<int, 3> nodes_;
    std::array<double, 3> step_{1, 1, 1};
    std::vector<CVector> values_;
    int cdim_;
    double min_step_;
};

}  // namespace lmcf
