#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "evq/estimators.hpp"

namespace evq {

/// Probability masses w_{n,i}, i = 1..n, of the r-th order statistic of a
/// size-n resample landing on the i-th sorted observation.
class BootstrapWeights {
public:
    std::size_t n() const noexcept { return weights_.size(); }
    std::size_t rank() const noexcept { return rank_; }
    std::span<const double> values() const noexcept { return weights_; }
    /// w_{n,i} for one-based i.
    double operator[](std::size_t i) const { return weights_.at(i - 1); }
    /// Sum of the weights; 1 up to rounding.
    double total() const noexcept;

private:
    BootstrapWeights(std::size_t r, std::vector<double> w) : rank_(r), weights_(std::move(w)) {}
    friend BootstrapWeights bootstrap_weights(std::size_t n, long long r);

    std::size_t rank_;
    std::vector<double> weights_;
};

struct VarianceEstimate {
    double value;
    std::size_t n;
    std::size_t rank;
};

/// Differences of adjacent incomplete-beta values smaller than this are set to zero.
inline constexpr double kWeightClampFloor = 1e-15;

/// w_{n,i} = I_{i/n}(r, n-r+1) - I_{(i-1)/n}(r, n-r+1).
/// Throws RankOutOfRange unless 1 <= r <= n; NoConvergence from the incomplete beta.
BootstrapWeights bootstrap_weights(std::size_t n, long long r);

/// Memo of bootstrap_weights keyed by (n, r). Safe for concurrent use; entries
/// are deterministic so a hit returns exactly what a fresh computation would.
class WeightCache {
public:
    std::shared_ptr<const BootstrapWeights> get(std::size_t n, std::size_t r);
    std::size_t size() const;
    void clear();

private:
    struct Key {
        std::size_t n;
        std::size_t r;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<std::size_t>{}(k.n * 0x9E3779B97F4A7C15ULL ^ k.r);
        }
    };

    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, std::shared_ptr<const BootstrapWeights>, KeyHash> entries_;
};

/// Process-wide cache used by bootstrap_variance.
WeightCache& shared_weight_cache();

/// sum_i (x_(i) - x_(r))^2 w_{n,i} with r = floor(n p): the infinite-resample
/// bootstrap variance of the sample quantile. Throws InsufficientSamples when r = 0.
VarianceEstimate bootstrap_variance(const SortedSample& sorted, ProbabilityLevel p);

/// Same with explicit weights; their n must match the sample size.
VarianceEstimate bootstrap_variance(const SortedSample& sorted, const BootstrapWeights& weights);

}  // namespace evq
