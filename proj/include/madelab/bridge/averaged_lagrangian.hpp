#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/action_field.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// L_m = n (d_t S_m + |grad S_m - e A|^2 / 2m + Sigma^2 / 2m + V) at time t.
RealField averaged_lagrangian(const RealField& n, const ActionField& S_m,
                              const PotentialSpec& pot, const PhysicalParams& params,
                              const RealField& dtS_m, double t = 0.0);

/// psi-form: i hbar/2 (psi d_t psibar - psibar d_t psi) + hbar^2/2m |D psi|^2
///           + beta^2 hbar^2/8m |psi|^(10/3) + V |psi|^2,
/// with D psi = grad psi - i (e/hbar) A psi.
RealField averaged_lagrangian_psi(const WaveFunction& psi, const ComplexField& dt_psi,
                                  const PotentialSpec& pot);

/// d_t psi of sqrt(n) exp(i S/hbar) for given d_t n and d_t S.
ComplexField madelung_time_derivative(const WaveFunction& psi, const RealField& dtn,
                                      const RealField& dtS);

}  // namespace madelab
