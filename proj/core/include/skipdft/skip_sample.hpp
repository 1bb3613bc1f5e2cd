#pragma once

#include "skipdft/dft.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace skipdft {

/**
 * @brief Partition of a length-T DFT into q skip-samples of length b.
 *
 * q = floor(T/b) and only the first b*q observations are used; the trailing
 * T - b*q observations are dropped before any transform is taken.
 */
struct SkipSamplePlan {
    std::size_t T = 0;            ///< original series length
    std::size_t b = 0;            ///< skip-sample (block) length, >= 2
    std::size_t q = 0;            ///< number of skip-samples, >= 1
    std::size_t effective_T = 0;  ///< b * q

    friend bool operator==(const SkipSamplePlan&, const SkipSamplePlan&) = default;
};

/// Requires 2 <= b <= T.
[[nodiscard]] SkipSamplePlan make_plan(std::size_t T, std::size_t b);

/// floor(T^0.4), clamped to [2, T]; satisfies b = o(sqrt(T)).
[[nodiscard]] std::size_t default_block_length(std::size_t T);

/// Entries j, q+j, ..., (b-1)q+j (1-based) of a DFT of length effective_T.
[[nodiscard]] std::vector<Complex> skip_sample_extract(const DftVector& z, const SkipSamplePlan& plan,
                                                       std::size_t j);

/// Inverse of extracting all q skip-samples.
[[nodiscard]] DftVector interleave_reconstruct(std::span<const std::vector<Complex>> parts,
                                               const SkipSamplePlan& plan);

}  // namespace skipdft
