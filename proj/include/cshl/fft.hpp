#pragma once

#include <complex>
#include <span>

namespace cshl::fft {

using cplx = std::complex<double>;

// In-place periodic transforms over row-major arrays. The forward transform
// carries the 1/(total size) factor, so a constant field maps to a single
// zero-mode coefficient equal to the constant. Plans are cached per thread;
// planning itself is serialized internally.

void forward_2d(int n, std::span<cplx> data);
void inverse_2d(int n, std::span<cplx> data);

/// Space-time transform over an (nt, n, n) block, time index slowest.
void forward_3d(int nt, int n, std::span<cplx> data);
void inverse_3d(int nt, int n, std::span<cplx> data);

}  // namespace cshl::fft
