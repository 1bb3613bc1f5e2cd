#include "skipdft/quadrature.hpp"

#include "skipdft/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace skipdft {

namespace {

constexpr unsigned kMaxDepth = 20;
constexpr double kRelativeTarget = 1e-13;

}  // namespace

double spectral_average(const std::function<double(double)>& h, double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double pi = std::numbers::pi;
    double error = 0.0;
    double L1 = 0.0;
    const double integral = gauss_kronrod<double, 31>::integrate(h, -pi, pi, kMaxDepth, kRelativeTarget, &error, &L1);
    const double scaled_error = error / (2.0 * pi);
    if (!std::isfinite(integral) || !(scaled_error <= abs_tol)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "spectral_average: quadrature did not converge (estimate " << integral / (2.0 * pi)
            << ", error estimate " << scaled_error << ", tolerance " << abs_tol << ", L1 " << L1 / (2.0 * pi) << ")";
        throw NumericalError(msg.str());
    }
    return integral / (2.0 * pi);
}

std::complex<double> spectral_average_complex(const std::function<std::complex<double>(double)>& h, double abs_tol) {
    const double re = spectral_average([&h](double x) { return h(x).real(); }, abs_tol);
    const double im = spectral_average([&h](double x) { return h(x).imag(); }, abs_tol);
    return {re, im};
}

}  // namespace skipdft
