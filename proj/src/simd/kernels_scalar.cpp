#include <cstddef>

#include "evq/simd/kernels.hpp"

namespace evq::simd::scalar {

double sum(std::span<const double> values) noexcept {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - center;
        acc += d * d * weights[i];
    }
    return acc;
}

void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept {
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double d = in[k + 1] - in[k];
        out[k] = d < floor ? 0.0 : d;
    }
}

}  // namespace evq::simd::scalar
