#include "skipdft/periodogram.hpp"

#include "skipdft/error.hpp"

#include <complex>
#include <string>

namespace skipdft {

Periodogram periodogram_at_fourier(const TimeSeries& x) {
    const std::size_t T = x.size();
    if (T < 2) throw InvalidInput("periodogram_at_fourier: need T >= 2, got " + std::to_string(T));
    if (x.is_constant()) return Periodogram(std::vector<double>(T, 0.0));

    // Centring leaves |DFT|^2 unchanged at l != 0 and keeps the transform
    // free of a large zero-frequency component.
    const double mean = x.mean();
    std::vector<double> centred(x.values().begin(), x.values().end());
    for (double& v : centred) v -= mean;
    const DftVector z = compute_dft(TimeSeries(std::move(centred)));

    std::vector<double> values(T);
    for (std::size_t p = 0; p < T; ++p) values[p] = z.index_at(p) == 0 ? 0.0 : std::norm(z[p]);
    return Periodogram(std::move(values));
}

}  // namespace skipdft
