#pragma once

#include <cstddef>

#include "evq/estimators.hpp"
#include "evq/random.hpp"

namespace evq {

/// X = ln Y with Y ~ Exponential(rate): F(x) = 1 - exp(-rate e^x).
class LogExponential {
public:
    /// Throws DomainError unless rate is positive and finite.
    explicit LogExponential(double rate);

    double rate() const noexcept { return rate_; }

private:
    double rate_;
};

class NormalParams {
public:
    /// Throws DomainError unless variance is positive and finite.
    NormalParams(double mean, double variance);

    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }

private:
    double mean_;
    double variance_;
};

/// The log-exponential model whose p-quantile is x_p: rate = -ln(1-p) e^{-x_p}.
LogExponential rate_for_quantile(double x_p, ProbabilityLevel p);

double pdf(const LogExponential& model, double x);
double cdf(const LogExponential& model, double x);
/// ln(-ln(1-q) / rate).
double quantile(const LogExponential& model, ProbabilityLevel q);

/// n inverse-CDF draws from one stream, one uniform each.
Sample sample(const LogExponential& model, std::size_t n, RngStream& rng);

/// Large-sample variance of the sample quantile, p(1-p) / (n f(x_p)^2).
double asymptotic_variance(ProbabilityLevel p, std::size_t n, double density_at_quantile);

/// Standard normal quantile function (Wichura's AS 241, about 1e-16 relative).
double normal_quantile(double u);

/// One draw from N(mean, variance) by inversion of a single uniform.
double normal_draw(const NormalParams& params, RngStream& rng);

}  // namespace evq
