#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "evq/bootstrap.hpp"
#include "evq/distributions.hpp"
#include "evq/errors.hpp"
#include "evq/simd/kernels.hpp"
#include "oracles.hpp"

using namespace evq;

namespace {

struct BackendGuard {
    simd::Backend saved = simd::active_backend();
    ~BackendGuard() { simd::set_active_backend(saved); }
};

}  // namespace

TEST_CASE("hand-integrated weights") {
    const auto w = bootstrap_weights(2, 1);
    REQUIRE(w.n() == 2);
    CHECK(w.rank() == 1);
    CHECK(std::fabs(w[1] - 0.75) < 1e-12);
    CHECK(std::fabs(w[2] - 0.25) < 1e-12);

    const auto single = bootstrap_weights(1, 1);
    REQUIRE(single.n() == 1);
    CHECK(single[1] == 1.0);
}

TEST_CASE("rank validation") {
    CHECK_THROWS_AS(bootstrap_weights(5, 0), RankOutOfRange);
    CHECK_THROWS_AS(bootstrap_weights(5, 6), RankOutOfRange);
    CHECK_THROWS_AS(bootstrap_weights(0, 1), RankOutOfRange);
    CHECK_THROWS_AS(bootstrap_weights(5, -3), RankOutOfRange);
}

TEST_CASE("small-n weights match direct quadrature") {
    for (int n = 1; n <= 12; ++n) {
        for (int r = 1; r <= n; ++r) {
            const auto w = bootstrap_weights(static_cast<std::size_t>(n), r);
            const auto q = oracle::quadrature_weights(n, r);
            for (int i = 1; i <= n; ++i) {
                CAPTURE(n);
                CAPTURE(r);
                CAPTURE(i);
                REQUIRE(std::fabs(w[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i - 1)]) <
                        1e-9);
            }
        }
    }
}

TEST_CASE("continued-fraction weights match quadrature past the series range") {
    for (auto [n, r] : {std::pair{40, 4}, std::pair{60, 30}, std::pair{75, 74}}) {
        const auto w = bootstrap_weights(static_cast<std::size_t>(n), r);
        const auto q = oracle::quadrature_weights(n, r);
        for (int i = 1; i <= n; ++i) {
            CAPTURE(n);
            CAPTURE(i);
            REQUIRE(std::fabs(w[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i - 1)]) <
                    1e-9);
        }
    }
}

TEST_CASE("weights are non-negative and normalized") {
    for (std::size_t n : {3u, 17u, 33u, 100u, 999u, 5000u, 20000u}) {
        for (double p : {0.5, 0.1, 0.01, 0.001}) {
            const auto r = quantile_rank(n, ProbabilityLevel(p));
            if (r == 0) continue;
            const auto w = bootstrap_weights(n, static_cast<long long>(r));
            CAPTURE(n);
            CAPTURE(p);
            CHECK(std::fabs(w.total() - 1.0) <= 1e-10);
            CHECK(std::all_of(w.values().begin(), w.values().end(),
                              [](double v) { return v >= 0.0; }));
        }
    }
}

TEST_CASE("weights are identical under both kernel backends") {
    BackendGuard guard;
    simd::set_active_backend(simd::Backend::Scalar);
    const auto scalar = bootstrap_weights(3000, 30);
    if (simd::set_active_backend(simd::Backend::Avx2) != simd::Backend::Avx2) return;
    const auto vectorized = bootstrap_weights(3000, 30);
    CHECK(std::equal(scalar.values().begin(), scalar.values().end(), vectorized.values().begin()));
}

TEST_CASE("bootstrap variance examples") {
    const auto two = sort_ascending(Sample({1.0, 0.0}));
    const auto v = bootstrap_variance(two, ProbabilityLevel(0.5));
    CHECK(v.rank == 1);
    CHECK(v.n == 2);
    CHECK(std::fabs(v.value - 0.25) < 1e-12);

    const auto constant = sort_ascending(Sample(std::vector<double>(50, 3.25)));
    for (double p : {0.02, 0.1, 0.5, 0.9}) {
        CHECK(bootstrap_variance(constant, ProbabilityLevel(p)).value == 0.0);
    }

    CHECK_THROWS_AS(bootstrap_variance(sort_ascending(Sample({1.0, 2.0})), ProbabilityLevel(0.3)),
                    InsufficientSamples);
    CHECK_THROWS_AS(bootstrap_variance(two, bootstrap_weights(3, 1)), DomainError);
}

TEST_CASE("analytic bootstrap equals the limit of resampling") {
    // Direct resampling of a fixed sample; second moment of the resampled r-th order
    // statistic about the original one.
    const std::vector<double> data{0.3, -1.2, 2.5, 0.9, 0.0, 4.1, -0.4, 1.7, 3.3, -2.0};
    const auto sorted = sort_ascending(Sample(data));
    const ProbabilityLevel p(0.3);
    const double analytic = bootstrap_variance(sorted, p).value;
    const double center = order_statistic(sorted, 3);

    std::mt19937_64 gen(77);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    constexpr int kResamples = 400000;
    std::vector<double> resample(data.size());
    double acc = 0.0;
    for (int b = 0; b < kResamples; ++b) {
        for (double& x : resample) x = data[pick(gen)];
        std::nth_element(resample.begin(), resample.begin() + 2, resample.end());
        const double d = resample[2] - center;
        acc += d * d;
    }
    const double simulated = acc / kResamples;
    CHECK(simulated == doctest::Approx(analytic).epsilon(0.02));
}

TEST_CASE("bootstrap variance is non-negative on random samples") {
    std::mt19937_64 gen(1);
    std::student_t_distribution<double> heavy(2.0);
    for (int round = 0; round < 50; ++round) {
        std::vector<double> v(200 + static_cast<std::size_t>(round) * 7);
        for (double& x : v) x = heavy(gen);
        const auto s = sort_ascending(Sample(v));
        CHECK(bootstrap_variance(s, ProbabilityLevel(0.05)).value >= 0.0);
    }
}

TEST_CASE("log-exponential model: median bootstrap variance near the asymptotic value") {
    const ProbabilityLevel p(0.1);
    const std::size_t n = 10000;
    const auto model = rate_for_quantile(0.0, p);
    const double target = asymptotic_variance(p, n, pdf(model, 0.0));
    std::vector<double> estimates;
    for (std::uint64_t t = 0; t < 101; ++t) {
        RngStream rng(2718, {t});
        estimates.push_back(bootstrap_variance(sort_ascending(sample(model, n, rng)), p).value);
    }
    std::nth_element(estimates.begin(), estimates.begin() + 50, estimates.end());
    const double median = estimates[50];
    CHECK(std::fabs(median - target) / target < 0.25);
}

TEST_CASE("weight cache is a transparent memo") {
    WeightCache cache;
    const auto a = cache.get(500, 5);
    const auto b = cache.get(500, 5);
    CHECK(a.get() == b.get());
    CHECK(cache.size() == 1);
    const auto fresh = bootstrap_weights(500, 5);
    CHECK(std::equal(fresh.values().begin(), fresh.values().end(), a->values().begin()));

    std::vector<std::shared_ptr<const BootstrapWeights>> seen(8);
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            pool.emplace_back([&, i] { seen[i] = cache.get(2000, 20); });
        }
    }
    for (const auto& s : seen) {
        CHECK(std::equal(s->values().begin(), s->values().end(), seen[0]->values().begin()));
    }
    CHECK(cache.size() == 2);
    cache.clear();
    CHECK(cache.size() == 0);
}
