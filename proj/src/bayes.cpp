#include "evq/bayes.hpp"

#include <cmath>
#include <string>

#include "evq/errors.hpp"

namespace evq {

PriorBelief::PriorBelief(double mean, double variance) : mean_(mean), variance_(variance) {
    if (!std::isfinite(mean)) throw DomainError("prior mean must be finite");
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("prior variance must be positive and finite, got " +
                          std::to_string(variance));
    }
}

LikelihoodSpec::LikelihoodSpec(double variance, VarianceSource source)
    : variance_(variance), source_(source) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("sample quantile variance must be positive and finite, got " +
                          std::to_string(variance));
    }
}

MarginalMoments marginal_moments(const PriorBelief& prior, const LikelihoodSpec& likelihood) {
    return {prior.mean(), prior.variance() + likelihood.variance(), prior.variance()};
}

PosteriorBelief posterior(const PriorBelief& prior, double estimate,
                          const LikelihoodSpec& likelihood) {
    if (!std::isfinite(estimate)) throw DomainError("sample quantile must be finite");
    const double s2 = prior.variance();
    const double sn2 = likelihood.variance();
    const double total = s2 + sn2;
    const double prior_weight = sn2 / total;
    const double data_weight = s2 / total;
    PosteriorBelief post;
    post.mean = prior_weight * prior.mean() + data_weight * estimate;
    post.variance = 1.0 / (1.0 / s2 + 1.0 / sn2);
    post.prior_weight = prior_weight;
    return post;
}

PosteriorBelief posterior(const PriorBelief& prior, const QuantileEstimate& estimate,
                          const LikelihoodSpec& likelihood) {
    return posterior(prior, estimate.value, likelihood);
}

PosteriorBelief prior_only_posterior(const PriorBelief& prior) {
    return {prior.mean(), prior.variance(), 1.0, true};
}

PosteriorBelief posterior_or_prior(const PriorBelief& prior,
                                   const std::optional<QuantileEstimate>& estimate,
                                   const std::optional<LikelihoodSpec>& likelihood) {
    if (!estimate || !likelihood) return prior_only_posterior(prior);
    return posterior(prior, *estimate, *likelihood);
}

}  // namespace evq
