#include <atomic>

#include "evq/simd/kernels.hpp"

namespace evq::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Backend>& selected() noexcept {
    static std::atomic<Backend> backend{detect_backend()};
    return backend;
}

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Scalar:
            break;
    }
    return "scalar";
}

Backend detect_backend() noexcept {
    static const Backend best =
        (avx2::compiled() && cpu_has_avx2()) ? Backend::Avx2 : Backend::Scalar;
    return best;
}

Backend active_backend() noexcept { return selected().load(std::memory_order_relaxed); }

Backend set_active_backend(Backend backend) noexcept {
    if (backend == Backend::Avx2 && detect_backend() != Backend::Avx2) backend = Backend::Scalar;
    selected().store(backend, std::memory_order_relaxed);
    return backend;
}

double sum(std::span<const double> values) noexcept {
    return active_backend() == Backend::Avx2 ? avx2::sum(values) : scalar::sum(values);
}

double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept {
    return active_backend() == Backend::Avx2
               ? avx2::weighted_squared_deviation(values, weights, center)
               : scalar::weighted_squared_deviation(values, weights, center);
}

void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept {
    if (active_backend() == Backend::Avx2) {
        avx2::clamped_differences(in, out, floor);
    } else {
        scalar::clamped_differences(in, out, floor);
    }
}

}  // namespace evq::simd
