#include "skipdft/skip_sample.hpp"

#include "skipdft/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skipdft {

SkipSamplePlan make_plan(std::size_t T, std::size_t b) {
    if (b < 2) throw InvalidInput("make_plan: block length b = " + std::to_string(b) + " must be >= 2");
    if (b > T) {
        throw InvalidInput("make_plan: block length b = " + std::to_string(b) +
                           " exceeds series length T = " + std::to_string(T));
    }
    const std::size_t q = T / b;
    return SkipSamplePlan{T, b, q, b * q};
}

std::size_t default_block_length(std::size_t T) {
    // pow on an exact power can land a hair below the integer
    auto b = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(T), 0.4) + 1e-9));
    return std::clamp<std::size_t>(b, 2, std::max<std::size_t>(T, 2));
}

std::vector<Complex> skip_sample_extract(const DftVector& z, const SkipSamplePlan& plan, std::size_t j) {
    if (j < 1 || j > plan.q) {
        throw InvalidInput("skip_sample_extract: j = " + std::to_string(j) + " outside [1, " +
                           std::to_string(plan.q) + "]");
    }
    if (z.size() != plan.effective_T) {
        throw InvalidInput("skip_sample_extract: DFT length " + std::to_string(z.size()) +
                           " does not match effective_T = " + std::to_string(plan.effective_T));
    }
    std::vector<Complex> part(plan.b);
    for (std::size_t l = 0; l < plan.b; ++l) part[l] = z[l * plan.q + j - 1];
    return part;
}

DftVector interleave_reconstruct(std::span<const std::vector<Complex>> parts, const SkipSamplePlan& plan) {
    if (parts.size() != plan.q) {
        throw InvalidInput("interleave_reconstruct: expected " + std::to_string(plan.q) + " parts, got " +
                           std::to_string(parts.size()));
    }
    std::vector<Complex> out(plan.effective_T);
    for (std::size_t j = 0; j < plan.q; ++j) {
        if (parts[j].size() != plan.b) {
            throw InvalidInput("interleave_reconstruct: part " + std::to_string(j + 1) + " has length " +
                               std::to_string(parts[j].size()) + ", expected b = " + std::to_string(plan.b));
        }
        for (std::size_t l = 0; l < plan.b; ++l) out[l * plan.q + j] = parts[j][l];
    }
    return DftVector(std::move(out));
}

}  // namespace skipdft
