#pragma once

// Data-parallel inner loops of the bootstrap variance and weight construction.
// Each kernel has a scalar reference and an AVX2 variant; the dispatched entry
// points pick one at runtime from the CPU feature set.

#include <span>
#include <string_view>

namespace evq::simd {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend backend) noexcept;

/// Best backend supported by both the build and the running CPU.
Backend detect_backend() noexcept;

/// Backend used by the dispatched kernels. Defaults to detect_backend().
Backend active_backend() noexcept;

/// Pins the dispatched kernels to a backend. Requesting one that the CPU cannot
/// run falls back to Scalar; returns the backend actually selected.
Backend set_active_backend(Backend backend) noexcept;

/// Sum of the elements.
double sum(std::span<const double> values) noexcept;

/// sum_i (values[i] - center)^2 * weights[i]; the spans must have equal length.
double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept;

/// out[k] = in[k + 1] - in[k], replaced by 0 when below `floor`.
/// out.size() must equal in.size() - 1.
void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept;

namespace scalar {
double sum(std::span<const double> values) noexcept;
double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept;
void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept;
}  // namespace scalar

namespace avx2 {
/// True when the AVX2 kernels were compiled in.
bool compiled() noexcept;
double sum(std::span<const double> values) noexcept;
double weighted_squared_deviation(std::span<const double> values,
                                  std::span<const double> weights, double center) noexcept;
void clamped_differences(std::span<const double> in, std::span<double> out,
                         double floor) noexcept;
}  // namespace avx2

}  // namespace evq::simd
