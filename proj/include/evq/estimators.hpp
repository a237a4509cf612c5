#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evq {

/// Tail probability level p of a quantile, strictly inside (0, 1).
class ProbabilityLevel {
public:
    /// Throws DomainError unless 0 < p < 1.
    explicit ProbabilityLevel(double p);

    double value() const noexcept { return p_; }

    friend bool operator==(ProbabilityLevel, ProbabilityLevel) = default;

private:
    double p_;
};

/// Non-empty collection of finite observations in arrival order.
class Sample {
public:
    /// Throws DomainError on an empty input or a non-finite value.
    explicit Sample(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Moves the observations out, leaving the sample empty.
    std::vector<double> release() && noexcept { return std::move(values_); }

private:
    std::vector<double> values_;
};

/// Observations in ascending order, x_(1) <= ... <= x_(n).
class SortedSample {
public:
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    explicit SortedSample(std::vector<double> values) : values_(std::move(values)) {}
    friend SortedSample sort_ascending(const Sample& sample);
    friend SortedSample sort_ascending(Sample&& sample);

    std::vector<double> values_;
};

struct QuantileEstimate {
    double value;
    /// One-based rank r = floor(n * p).
    std::size_t rank;
    ProbabilityLevel p;
    std::size_t n;
};

SortedSample sort_ascending(const Sample& sample);
SortedSample sort_ascending(Sample&& sample);

/// The l-th smallest observation, l one-based. Throws RankOutOfRange.
double order_statistic(const SortedSample& sorted, long long l);

/// floor(n * p) using the double product as represented (may be zero).
std::size_t quantile_rank(std::size_t n, ProbabilityLevel p) noexcept;

/// Smallest n for which quantile_rank(n, p) >= 1.
std::size_t minimum_sample_size(ProbabilityLevel p);

/// x_(r) with r = floor(n * p). Throws InsufficientSamples when r = 0.
/// Selects the order statistic in linear time without sorting the whole sample.
QuantileEstimate sample_quantile(const Sample& sample, ProbabilityLevel p);
QuantileEstimate sample_quantile(const SortedSample& sorted, ProbabilityLevel p);

}  // namespace evq
