#include "skipdft/time_series.hpp"

#include "skipdft/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace skipdft {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidInput("TimeSeries: series must contain at least one observation");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidInput("TimeSeries: non-finite observation at position " +
                               std::to_string(i + 1));
        }
    }
}

TimeSeries::TimeSeries(std::initializer_list<double> values)
    : TimeSeries(std::vector<double>(values)) {}

double TimeSeries::mean() const noexcept {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

bool TimeSeries::is_constant() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [first = values_.front()](double v) { return v == first; });
}

TimeSeries TimeSeries::head(std::size_t n) const {
    if (n == 0 || n > values_.size()) {
        throw InvalidInput("TimeSeries::head: length " + std::to_string(n) +
                           " outside [1, " + std::to_string(values_.size()) + "]");
    }
    return TimeSeries(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

TimeSeries TimeSeries::scaled(double c) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= c;
    return TimeSeries(std::move(out));
}

double sample_autocovariance(const TimeSeries& x, long k) {
    const auto T = static_cast<long>(x.size());
    const long lag = std::labs(k);
    if (lag >= T) {
        throw InvalidInput("sample_autocovariance: |k| = " + std::to_string(lag) +
                           " must be below T = " + std::to_string(T));
    }
    const double mean = x.mean();
    const auto v = x.values();
    double sum = 0.0;
    for (long t = 0; t + lag < T; ++t) {
        sum += (v[static_cast<std::size_t>(t)] - mean) * (v[static_cast<std::size_t>(t + lag)] - mean);
    }
    return sum / static_cast<double>(T);
}

}  // namespace skipdft
