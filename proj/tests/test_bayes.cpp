#include <doctest.h>

#include <cmath>
#include <random>

#include "evq/bayes.hpp"
#include "evq/errors.hpp"

using namespace evq;

TEST_CASE("input validation") {
    CHECK_THROWS_AS(PriorBelief(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(PriorBelief(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(PriorBelief(0.0, INFINITY), DomainError);
    CHECK_THROWS_AS(PriorBelief(NAN, 1.0), DomainError);
    CHECK_THROWS_AS(LikelihoodSpec(0.0, VarianceSource::Bootstrapped), DomainError);
    CHECK_THROWS_AS(LikelihoodSpec(-2.0, VarianceSource::Known), DomainError);
    CHECK_THROWS_AS(LikelihoodSpec(NAN, VarianceSource::Known), DomainError);
    CHECK_THROWS_AS(posterior(PriorBelief(0, 1), INFINITY, LikelihoodSpec(1, VarianceSource::Known)),
                    DomainError);
}

TEST_CASE("marginal moments") {
    auto m = marginal_moments(PriorBelief(0.0, 1.0), LikelihoodSpec(1.0, VarianceSource::Known));
    CHECK(m.mean == 0.0);
    CHECK(m.variance == 2.0);
    CHECK(m.covariance == 1.0);

    m = marginal_moments(PriorBelief(5.0, 0.01), LikelihoodSpec(0.04, VarianceSource::Known));
    CHECK(m.mean == 5.0);
    CHECK(m.variance == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(m.covariance == 0.01);

    for (double sn2 : {1e-9, 0.3, 7.0, 1e9}) {
        CHECK(marginal_moments(PriorBelief(-2.0, 0.7), LikelihoodSpec(sn2, VarianceSource::Known))
                  .covariance == 0.7);
    }
}

TEST_CASE("posterior examples") {
    const LikelihoodSpec unit(1.0, VarianceSource::Known);
    auto post = posterior(PriorBelief(0.0, 1.0), 2.0, unit);
    CHECK(post.mean == 1.0);
    CHECK(post.variance == 0.5);
    CHECK(post.prior_weight == 0.5);
    CHECK_FALSE(post.prior_only);

    post = posterior(PriorBelief(0.0, 1.0), 2.0, LikelihoodSpec(1e12, VarianceSource::Known));
    CHECK(std::fabs(post.mean - 0.0) < 1e-6);
    post = posterior(PriorBelief(0.0, 1.0), 2.0, LikelihoodSpec(1e-12, VarianceSource::Known));
    CHECK(std::fabs(post.mean - 2.0) < 1e-6);

    // (0.04 * 0 + 0.01 * 1) / 0.05 = 0.2; 1 / (100 + 25) = 0.008.
    post = posterior(PriorBelief(0.0, 0.01), 1.0, LikelihoodSpec(0.04, VarianceSource::Known));
    CHECK(post.mean == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(post.variance == doctest::Approx(0.008).epsilon(1e-14));
    CHECK(post.prior_weight == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("posterior from a QuantileEstimate") {
    const QuantileEstimate est{3.0, 4, ProbabilityLevel(0.1), 40};
    const auto post =
        posterior(PriorBelief(1.0, 2.0), est, LikelihoodSpec(2.0, VarianceSource::Bootstrapped));
    CHECK(post.mean == 2.0);
}

TEST_CASE("prior passes through when no estimate exists") {
    const PriorBelief prior(-1.5, 0.25);
    const auto post = posterior_or_prior(prior, std::nullopt, std::nullopt);
    CHECK(post.prior_only);
    CHECK(post.mean == -1.5);
    CHECK(post.variance == 0.25);
    CHECK(post.prior_weight == 1.0);

    const QuantileEstimate est{0.5, 1, ProbabilityLevel(0.01), 100};
    const auto updated = posterior_or_prior(prior, est, LikelihoodSpec(0.25, VarianceSource::Known));
    CHECK_FALSE(updated.prior_only);
    CHECK(updated.mean == -0.5);
}

TEST_CASE("property: algebraic invariants over random inputs") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> location(-100.0, 100.0);
    std::uniform_real_distribution<double> log_scale(-6.0, 6.0);
    for (int i = 0; i < 20000; ++i) {
        const double mu = location(gen);
        const double xhat = location(gen);
        const double s2 = std::pow(10.0, log_scale(gen));
        const double sn2 = std::pow(10.0, log_scale(gen));
        const PriorBelief prior(mu, s2);
        const LikelihoodSpec like(sn2, VarianceSource::Known);
        const auto post = posterior(prior, xhat, like);

        REQUIRE(post.variance < std::fmin(s2, sn2));
        REQUIRE(std::fabs(1.0 / post.variance - (1.0 / s2 + 1.0 / sn2)) <=
                1e-12 * (1.0 / s2 + 1.0 / sn2));
        const double w = sn2 / (s2 + sn2);
        REQUIRE(post.prior_weight == w);
        REQUIRE(std::fabs(post.mean - (w * mu + (1.0 - w) * xhat)) <=
                1e-12 * (std::fabs(mu) + std::fabs(xhat)));
        REQUIRE(post.mean >= std::fmin(mu, xhat));
        REQUIRE(post.mean <= std::fmax(mu, xhat));

        // Exchanging the roles of prior and observation leaves the posterior unchanged.
        const auto swapped =
            posterior(PriorBelief(xhat, sn2), mu, LikelihoodSpec(s2, VarianceSource::Known));
        REQUIRE(std::fabs(swapped.mean - post.mean) <= 1e-12 * (std::fabs(mu) + std::fabs(xhat)));
        REQUIRE(std::fabs(swapped.variance - post.variance) <= 1e-14 * post.variance);

        // A noisier observation pulls the mean toward the prior.
        if (mu != xhat) {
            const auto noisier =
                posterior(prior, xhat, LikelihoodSpec(sn2 * 2.0, VarianceSource::Known));
            REQUIRE(std::fabs(noisier.mean - mu) < std::fabs(post.mean - mu));
        }
    }
}
