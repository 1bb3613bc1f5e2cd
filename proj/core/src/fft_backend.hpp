#pragma once

#include <complex>
#include <span>

namespace skipdft::detail {

// Unnormalized transforms in natural order (frequency index 0..n-1):
//   forward:  out[m] = sum_s in[s] exp(-2 pi i m s / n)
//   backward: out[s] = sum_m in[m] exp(+2 pi i m s / n)
// `in` and `out` must have equal length and must not alias.
void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace skipdft::detail
