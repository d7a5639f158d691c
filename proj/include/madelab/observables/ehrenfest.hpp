#pragma once

#include <vector>

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/states.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// <q>, <p> and the right-hand sides <d_p H> = <p>/m, -<d_q H> = -<grad V>
/// at one time (A = 0).
struct EhrenfestSample {
  double time = 0.0;
  Point q{}, p{}, velocity{}, force{};
};

EhrenfestSample ehrenfest_sample(const WaveFunction& psi, const PotentialSpec& pot);
EhrenfestSample ehrenfest_sample(const QStochasticState& st, const PotentialSpec& pot,
                                 const PhysicalParams& params);

struct EhrenfestReport {
  int dims = 1;
  /// max |d<q>/dt - <p>/m| and max |d<p>/dt + <grad V>| over interior samples.
  double position_residual = 0.0;
  double momentum_residual = 0.0;
  /// Same, relative to the largest |rhs| seen (1 if that is below 1).
  double position_relative = 0.0;
  double momentum_relative = 0.0;
  std::size_t checked = 0;
};

/// Centred differences of <q>, <p> (5-point where 5 samples are available,
/// else 3-point) against the sampled right-hand sides. Needs at least 3
/// equally spaced samples; longer series are treated as runs of such
/// windows separated by gaps: a change in spacing starts a new window.
EhrenfestReport ehrenfest_check(const std::vector<EhrenfestSample>& samples);
EhrenfestReport ehrenfest_check(const std::vector<WaveFunction>& history, const PotentialSpec& pot);
EhrenfestReport ehrenfest_check(const std::vector<QStochasticState>& history,
                                const PotentialSpec& pot, const PhysicalParams& params);

}  // namespace madelab
