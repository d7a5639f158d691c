#pragma once

#include <span>

#include "madelab/core/field.hpp"

namespace madelab::fft {

// Unnormalised complex DFT over the grid shape, in place.
// forward: X_m = sum_j x_j exp(-2 pi i j m / N)
// backward: x_j = sum_m X_m exp(+2 pi i j m / N)
void forward(const GridSpec& grid, std::span<cplx> data);
void backward(const GridSpec& grid, std::span<cplx> data);

/// Signed integer frequency of FFT bin `m` (Nyquist reported as -N/2).
inline int frequency_index(int m, int n) { return m < (n + 1) / 2 ? m : m - n; }

/// Angular wavenumber 2 pi k / L of each bin along an axis.
std::vector<double> wavenumbers(const GridSpec& grid, int axis);

}  // namespace madelab::fft
