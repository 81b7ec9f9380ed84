#include "fft.h"

#include <fftw3.h>

#include <mutex>

namespace mftk::detail {

namespace {
// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex planner_mutex;
}  // namespace

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> data, bool backward) {
    if (data.empty()) return data;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                                backward ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return data;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace mftk::detail
