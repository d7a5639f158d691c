#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// 5 beta^2 hbar^2 / 24m |psi|^(4/3) psi.
ComplexField nonlinear_term(const WaveFunction& psi);
/// Integral of beta^2 hbar^2 / 8m |psi|^(10/3).
double nonlinear_energy(const WaveFunction& psi);

/// d E_nl / d psibar at one node by central differences of the nonlinear
/// energy along the real and imaginary directions (Wirtinger form, per unit
/// volume). The step is eps * |psi(node)|.
cplx nonlinear_energy_gradient_fd(const WaveFunction& psi, std::size_t node, double eps);

/// (1/2m)(-i hbar grad - e A)^2 psi + V psi, plus the nonlinear term when
/// asked, with A and V at psi.time.
ComplexField apply_hamiltonian(const WaveFunction& psi, const PotentialSpec& pot,
                               bool nonlinear = true);

/// Integral of hbar^2/2m |D psi|^2 + V |psi|^2 + beta^2 hbar^2/8m |psi|^(10/3);
/// conserved by the nonlinear flow for static V.
double energy_functional(const WaveFunction& psi, const PotentialSpec& pot);

/// Re <psi|H_lin|psi> / <psi|psi>.
double rayleigh_quotient(const WaveFunction& psi, const PotentialSpec& pot);

}  // namespace madelab
