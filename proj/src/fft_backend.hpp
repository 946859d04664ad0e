#pragma once

#include <complex>

namespace acmhd::detail {

// Unnormalized 3D complex DFT over an n^3 cube stored x-fastest.
// sign -1 is analysis, +1 synthesis. Plans are cached per n; creation is
// serialized, execution is safe to run concurrently.
void dft3(int n, const std::complex<double>* in, std::complex<double>* out, int sign);

}  // namespace acmhd::detail
