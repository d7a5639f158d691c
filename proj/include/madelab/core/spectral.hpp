#pragma once

#include <vector>

#include "madelab/core/field.hpp"

namespace madelab::spectral {

// Fourier differentiation on the periodic grid. Odd derivatives drop the
// Nyquist bin so real inputs stay real; results are exact for band-limited
// inputs.
RealField gradient(const RealField& f, int axis);
ComplexField gradient(const ComplexField& f, int axis);
std::vector<RealField> gradient(const RealField& f);

/// d^2 f / d q_axis^2 (multiplier -k^2, Nyquist kept).
RealField second_derivative(const RealField& f, int axis);
ComplexField second_derivative(const ComplexField& f, int axis);
/// Mixed derivative d^2 f / dq_a dq_b; for a == b this is second_derivative.
RealField mixed_derivative(const RealField& f, int a, int b);
ComplexField mixed_derivative(const ComplexField& f, int a, int b);
ComplexField laplacian(const ComplexField& f);

/// f(q + offset) by trigonometric interpolation.
ComplexField shift(const ComplexField& f, const Point& offset);

/// Periodic scalar whose gradient is the closest match to `components`
/// (mean removed). The caller decides whether the match is good enough.
RealField integrate_gradient(const std::vector<RealField>& components);

}  // namespace madelab::spectral

namespace madelab {

/// psi_hat(p) = (2 pi hbar)^(-d/2) integral exp(-i p.q/hbar) psi(q) d^d q,
/// evaluated on `psi.grid().momentum_grid(hbar)` (p = 0 at the centre bin).
ComplexField to_momentum_space(const ComplexField& psi, double hbar);
/// Inverse of to_momentum_space back onto `position_grid`.
ComplexField from_momentum_space(const ComplexField& psi_hat,
                                 const GridSpec& position_grid, double hbar);

}  // namespace madelab
