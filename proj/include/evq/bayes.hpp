#pragma once

#include <optional>

#include "evq/estimators.hpp"

namespace evq {

/// Normal prior N(mean, variance) on the true quantile.
class PriorBelief {
public:
    /// Throws DomainError unless variance is positive and finite and mean is finite.
    PriorBelief(double mean, double variance);

    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }

private:
    double mean_;
    double variance_;
};

enum class VarianceSource {
    Known,         // asymptotic p(1-p) / (n f(x_p)^2)
    Bootstrapped,  // analytic bootstrap estimate
};

/// Variance of the normal likelihood of the sample quantile around the true quantile.
class LikelihoodSpec {
public:
    /// Throws DomainError unless variance is positive and finite. A zero variance
    /// (for example a constant sample under the bootstrap) is rejected.
    LikelihoodSpec(double variance, VarianceSource source);

    double variance() const noexcept { return variance_; }
    VarianceSource source() const noexcept { return source_; }

private:
    double variance_;
    VarianceSource source_;
};

struct PosteriorBelief {
    double mean;
    double variance;
    /// Coefficient of the prior mean, sigma_n^2 / (sigma^2 + sigma_n^2).
    double prior_weight;
    /// Set when no sample quantile was available and the prior passed through.
    bool prior_only = false;
};

/// Joint moments of the sample quantile implied by the prior and likelihood.
struct MarginalMoments {
    double mean;        // E[x_hat]
    double variance;    // Var[x_hat]
    double covariance;  // Cov(x_hat, x_p)
};

MarginalMoments marginal_moments(const PriorBelief& prior, const LikelihoodSpec& likelihood);

/// Conjugate normal update of the prior by one observed sample quantile.
PosteriorBelief posterior(const PriorBelief& prior, const QuantileEstimate& estimate,
                          const LikelihoodSpec& likelihood);

/// Same update from the bare estimate value.
PosteriorBelief posterior(const PriorBelief& prior, double estimate,
                          const LikelihoodSpec& likelihood);

/// The prior returned unchanged and flagged prior_only; the infinite-variance limit
/// used when the sample cannot resolve the requested level.
PosteriorBelief prior_only_posterior(const PriorBelief& prior);

/// Posterior when an estimate exists, prior_only_posterior otherwise.
PosteriorBelief posterior_or_prior(const PriorBelief& prior,
                                   const std::optional<QuantileEstimate>& estimate,
                                   const std::optional<LikelihoodSpec>& likelihood);

}  // namespace evq
