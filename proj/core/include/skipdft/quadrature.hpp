#pragma once

#include <complex>
#include <functional>

namespace skipdft {

/// Absolute tolerance applied to every <h> evaluation.
inline constexpr double kQuadratureTolerance = 1e-9;

/**
 * @brief <h> = (2 pi)^{-1} integral_{-pi}^{pi} h(lambda) d lambda by adaptive
 * Gauss-Kronrod quadrature.
 *
 * Throws NumericalError (with the error estimate in the message) when the
 * estimate cannot be brought below `abs_tol`.
 */
[[nodiscard]] double spectral_average(const std::function<double(double)>& h,
                                      double abs_tol = kQuadratureTolerance);

/// Complex integrand, real and imaginary parts integrated separately.
[[nodiscard]] std::complex<double> spectral_average_complex(const std::function<std::complex<double>(double)>& h,
                                                            double abs_tol = kQuadratureTolerance);

}  // namespace skipdft
