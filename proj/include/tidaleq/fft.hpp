#pragma once

#include <complex>
#include <vector>

namespace tidaleq {

using cplx = std::complex<double>;

/// out_k = sum_j in_j exp(-2 pi i j k / M)
std::vector<cplx> dft_forward(const std::vector<cplx>& in);
/// out_j = sum_k in_k exp(+2 pi i j k / M)   (no 1/M scaling)
std::vector<cplx> dft_backward(const std::vector<cplx>& in);

}  // namespace tidaleq
