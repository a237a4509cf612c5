#include "evq/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evq/errors.hpp"

namespace evq {

InsufficientSamples::InsufficientSamples(std::size_t n, double p, std::size_t required)
    : Error("insufficient samples: need n >= " + std::to_string(required) + " for p=" +
            std::to_string(p) + ", got n=" + std::to_string(n)),
      n_(n), p_(p), required_(required) {}

ProbabilityLevel::ProbabilityLevel(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("probability level must lie in (0, 1), got " + std::to_string(p));
    }
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw DomainError("sample must contain at least one observation");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("observation " + std::to_string(i + 1) + " is not finite");
        }
    }
}

SortedSample sort_ascending(const Sample& sample) {
    std::vector<double> v(sample.values().begin(), sample.values().end());
    std::sort(v.begin(), v.end());
    return SortedSample(std::move(v));
}

SortedSample sort_ascending(Sample&& sample) {
    std::vector<double> v = std::move(sample).release();
    std::sort(v.begin(), v.end());
    return SortedSample(std::move(v));
}

double order_statistic(const SortedSample& sorted, long long l) {
    if (l < 1 || static_cast<std::size_t>(l) > sorted.size()) {
        throw RankOutOfRange(l, sorted.size());
    }
    return sorted.values()[static_cast<std::size_t>(l - 1)];
}

std::size_t quantile_rank(std::size_t n, ProbabilityLevel p) noexcept {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * p.value()));
}

std::size_t minimum_sample_size(ProbabilityLevel p) {
    auto n = static_cast<std::size_t>(std::ceil(1.0 / p.value()));
    while (quantile_rank(n, p) < 1) ++n;
    while (n > 1 && quantile_rank(n - 1, p) >= 1) --n;
    return n;
}

namespace {

std::size_t checked_rank(std::size_t n, ProbabilityLevel p) {
    const std::size_t r = quantile_rank(n, p);
    if (r == 0) throw InsufficientSamples(n, p.value(), minimum_sample_size(p));
    return r;
}

}  // namespace

QuantileEstimate sample_quantile(const Sample& sample, ProbabilityLevel p) {
    const std::size_t n = sample.size();
    const std::size_t r = checked_rank(n, p);
    std::vector<double> v(sample.values().begin(), sample.values().end());
    auto nth = v.begin() + static_cast<std::ptrdiff_t>(r - 1);
    std::nth_element(v.begin(), nth, v.end());
    return {*nth, r, p, n};
}

QuantileEstimate sample_quantile(const SortedSample& sorted, ProbabilityLevel p) {
    const std::size_t r = checked_rank(sorted.size(), p);
    return {sorted.values()[r - 1], r, p, sorted.size()};
}

}  // namespace evq
