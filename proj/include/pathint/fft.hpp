#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "errors.hpp"

namespace pathint {

namespace detail {
// The FFTW planner is not reentrant.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

/// Unnormalized in-place multi-dimensional DFT (row-major dims). FFTW_ESTIMATE
/// keeps the chosen algorithm, and hence the bits, reproducible.
class FftPlan {
public:
    FftPlan(const std::vector<int>& dims, std::complex<double>* data, int sign) {
        std::lock_guard lock(detail::fftw_planner_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(data);
        plan_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), p, p, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan_) throw DomainError("FFTW could not create a plan");
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

inline void fft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
    FftPlan(dims, data.data(), sign).execute();
}

}  // namespace pathint
