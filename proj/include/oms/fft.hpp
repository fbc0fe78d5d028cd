#pragma once

#include "oms/field.hpp"

#include <span>

namespace oms {

enum class FftSign { forward = -1, backward = +1 };

/// Unnormalized in-place DFT: X_m = sum_n x_n exp(sign * 2 pi i n m / N).
/// Backed by FFTW with alignment-independent estimate plans, so the same
/// input produces the same bits regardless of buffer placement.
void fft_inplace(std::span<cplx> data, FftSign sign);

/// Unnormalized in-place 2-D DFT of a column-major (axis 0 fastest) n0 x n1 array.
void fft2_inplace(std::span<cplx> data, std::size_t n0, std::size_t n1, FftSign sign);

}  // namespace oms
