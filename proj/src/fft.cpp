#include "oms/fft.hpp"

#include "oms/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace oms {
namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }

    // FFTW's planner is not thread-safe; execution of an existing plan is.
    fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
        std::lock_guard lock(mutex);
        const auto key = std::make_tuple(n0, n1, sign);
        if (auto it = plans.find(key); it != plans.end()) return it->second;
        const std::size_t total = n0 * n1;
        auto* scratch = fftw_alloc_complex(total);
        fftw_plan plan = nullptr;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (n1 == 1) {
            plan = fftw_plan_dft_1d(static_cast<int>(n0), scratch, scratch, sign, flags);
        } else {
            // FFTW is row-major: the slowest dimension comes first.
            plan = fftw_plan_dft_2d(static_cast<int>(n1), static_cast<int>(n0), scratch, scratch, sign, flags);
        }
        fftw_free(scratch);
        if (!plan) throw DomainError("fft: FFTW could not create a plan");
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_inplace(std::span<cplx> data, FftSign sign) {
    if (data.empty()) return;
    auto plan = cache().get(data.size(), 1, static_cast<int>(sign));
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

void fft2_inplace(std::span<cplx> data, std::size_t n0, std::size_t n1, FftSign sign) {
    if (data.size() != n0 * n1) throw DomainError("fft2: size mismatch");
    if (data.empty()) return;
    auto plan = cache().get(n0, n1, static_cast<int>(sign));
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace oms
