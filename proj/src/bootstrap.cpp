#include "evq/bootstrap.hpp"

#include <string>

#include "evq/errors.hpp"
#include "evq/simd/kernels.hpp"
#include "evq/special_functions.hpp"

namespace evq {

double BootstrapWeights::total() const noexcept { return simd::sum(weights_); }

BootstrapWeights bootstrap_weights(std::size_t n, long long r) {
    if (n == 0 || r < 1 || static_cast<std::size_t>(r) > n) {
        throw RankOutOfRange(r, n);
    }
    const auto rank = static_cast<std::size_t>(r);
    // r C(n, r) = 1 / B(r, n - r + 1): each weight is the mass of Beta(r, n - r + 1)
    // on ((i-1)/n, i/n].
    const special::BetaParams shape(static_cast<double>(rank), static_cast<double>(n - rank + 1));
    const double nd = static_cast<double>(n);

    // Differencing near 1 loses the small upper-tail masses, so the grid is split where
    // the lower tail passes 1/2 and each side differences its own accurate tail.
    std::vector<double> lower;
    std::vector<double> neg_upper;
    lower.reserve(n + 1);
    std::size_t split = n;
    for (std::size_t i = 0; i <= n; ++i) {
        const auto tails = special::incomplete_beta_tails(static_cast<double>(i) / nd, shape);
        if (tails.lower > 0.5) {
            split = i - 1;
            neg_upper.reserve(n - split + 1);
            neg_upper.push_back(-(1.0 - lower.back()));
            neg_upper.push_back(-tails.upper);
            for (std::size_t j = i + 1; j <= n; ++j) {
                neg_upper.push_back(
                    -special::incomplete_beta_tails(static_cast<double>(j) / nd, shape).upper);
            }
            break;
        }
        lower.push_back(tails.lower);
    }

    std::vector<double> w(n);
    std::span<double> out(w);
    simd::clamped_differences(lower, out.first(split), kWeightClampFloor);
    if (!neg_upper.empty()) {
        simd::clamped_differences(neg_upper, out.subspan(split), kWeightClampFloor);
    }
    return BootstrapWeights(rank, std::move(w));
}

std::shared_ptr<const BootstrapWeights> WeightCache::get(std::size_t n, std::size_t r) {
    const Key key{n, r};
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto fresh = std::make_shared<const BootstrapWeights>(
        bootstrap_weights(n, static_cast<long long>(r)));
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(key, std::move(fresh)).first->second;
}

std::size_t WeightCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void WeightCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

WeightCache& shared_weight_cache() {
    static WeightCache cache;
    return cache;
}

VarianceEstimate bootstrap_variance(const SortedSample& sorted, ProbabilityLevel p) {
    const auto estimate = sample_quantile(sorted, p);
    const auto weights = shared_weight_cache().get(sorted.size(), estimate.rank);
    return bootstrap_variance(sorted, *weights);
}

VarianceEstimate bootstrap_variance(const SortedSample& sorted, const BootstrapWeights& weights) {
    if (weights.n() != sorted.size()) {
        throw DomainError("bootstrap weights for n=" + std::to_string(weights.n()) +
                          " applied to a sample of size " + std::to_string(sorted.size()));
    }
    const double center = order_statistic(sorted, static_cast<long long>(weights.rank()));
    const double value = simd::weighted_squared_deviation(sorted.values(), weights.values(), center);
    return {value, sorted.size(), weights.rank()};
}

}  // namespace evq
