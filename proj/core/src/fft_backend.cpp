#include "fft_backend.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace skipdft::detail {
namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// The FFTW planner is not re-entrant; execution with the new-array interface
// is. Plans are created once per (length, direction) and shared.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto& slot = plans_[{n, sign}];
        if (!slot) {
            // FFTW_ESTIMATE never touches the arrays and keeps results
            // reproducible from run to run.
            auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
            auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
            slot.reset(fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED));
            fftw_free(in);
            fftw_free(out);
        }
        return slot.get();
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, PlanHandle> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
    assert(in.size() == out.size());
    const int n = static_cast<int>(in.size());
    fftw_plan plan = cache().get(n, sign);
    // fftw_execute_dft takes a non-const input pointer but does not write to
    // it for out-of-place plans.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    execute(in, out, FFTW_FORWARD);
}

void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    execute(in, out, FFTW_BACKWARD);
}

}  // namespace skipdft::detail
