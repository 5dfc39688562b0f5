#pragma once

#include <array>
#include <span>

#include "swg/projection.hpp"

namespace swg {

/// C^2 function on [0,1] whose third derivative is prescribed piecewise:
///
///   v'''(x) = exp(x)    on [0, 1/4),    sin(pi x) on [1/4, 1/2),
///             exp(-x)   on [1/2, 3/4),  cos(pi x) on [3/4, 1].
///
/// v'', v', v are the exact antiderivatives, with integration constants fixed
/// so that v(0) = v'(0) = v''(0) = 0 and v'', v', v are continuous across the
/// branch points. v is in H^3 but not H^4. The normalization does not affect
/// projection errors on spaces of degree >= 3 (the quadratic part is
/// reproduced exactly).
class NonSmoothV {
public:
    NonSmoothV();

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    double d3(double x) const;

    /// Jump locations of v''': {1/4, 1/2, 3/4}.
    static std::span<const double> breaks();

    ScalarField as_field() const;

private:
    int branch(double x) const;

    // Per-branch quadratic correction: v = base + a x^2/2 + b x + c.
    std::array<double, 4> a_{};
    std::array<double, 4> b_{};
    std::array<double, 4> c_{};
};

/// Smooth reference target v(x) = sin(pi x / 2 + 1) with derivatives.
ScalarField smooth_projection_target();

}  // namespace swg
