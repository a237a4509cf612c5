#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evq/bayes.hpp"
#include "evq/estimators.hpp"
#include "evq/random.hpp"

namespace evq {

enum class Method { Sample, BayesKnownVar, BayesBootstrapVar };

inline constexpr Method kAllMethods[] = {Method::Sample, Method::BayesKnownVar,
                                         Method::BayesBootstrapVar};

/// CSV name: sample, bayes_known, bayes_bootstrap.
std::string_view method_name(Method method) noexcept;
/// Inverse of method_name; throws ConfigError on an unknown name.
Method parse_method(std::string_view name);

struct ExperimentConfig {
    double prior_mean = 0.0;
    std::vector<double> prior_variances{1.0, 0.1, 0.01};
    std::vector<double> p_values{1e-2, 1e-3};
    /// Empty selects default_sample_sizes(p) for each p.
    std::vector<std::size_t> sample_sizes;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::Sample, Method::BayesKnownVar, Method::BayesBootstrapVar};
    /// Worker threads; 0 uses the hardware concurrency. Never affects results.
    unsigned threads = 1;
};

/// Six log-spaced sizes from the smallest resolvable n up to 1e5.
std::vector<std::size_t> default_sample_sizes(ProbabilityLevel p);

struct GridCell {
    double p;
    std::size_t n;
    double prior_variance;
};

/// Throws ConfigError naming the first invalid setting, e.g. a (p, n) with floor(n p) = 0.
void validate(const ExperimentConfig& config);

/// Cells ordered by p, then n, then prior variance, as listed in the config.
std::vector<GridCell> expand_grid(const ExperimentConfig& config);

/// Sets one config key from its text form. Keys: prior_mean, prior_variances (sigma2),
/// p_values (p), sample_sizes (n), trials, seed, methods, threads. Lists are
/// comma-separated. Throws ConfigError on an unknown key or malformed value.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and lines starting with '#' are skipped.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

struct MethodOutcome {
    Method method;
    double estimate;
    double squared_error;
};

struct TrialResult {
    std::size_t trial = 0;
    double true_quantile = 0.0;
    std::vector<MethodOutcome> outcomes;

    /// Outcome for a method; throws std::out_of_range if it was not run.
    const MethodOutcome& at(Method method) const;
};

struct TrialOptions {
    /// Replaces the asymptotic variance used by BayesKnownVar.
    std::optional<double> known_variance;
};

/// One simulated quantile: x_p from the prior, a calibrated log-exponential sample of
/// size n, and each requested estimator scored against x_p. Draws come from
/// rng.derive(0) (prior) and rng.derive(1) (observations).
TrialResult run_trial(ProbabilityLevel p, std::size_t n, const PriorBelief& prior,
                      std::span<const Method> methods, const RngStream& rng,
                      const TrialOptions& options = {});

/// Stream for one trial of one cell; depends only on the seed, the cell's own
/// parameters and the trial index.
RngStream trial_stream(std::uint64_t seed, double prior_mean, const GridCell& cell,
                       std::size_t trial);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values) noexcept;

/// sqrt of the mean; throws EmptyInput for an empty sequence.
double rmse(std::span<const double> squared_errors);

struct RmseRow {
    double p;
    std::size_t n;
    double prior_variance;
    Method method;
    double rmse;
    std::size_t trials;
    std::uint64_t seed;
};

struct RmseTable {
    std::vector<RmseRow> rows;

    /// Row for a cell and method; throws std::out_of_range when absent.
    const RmseRow& find(double p, std::size_t n, double prior_variance, Method method) const;
};

RmseTable run_experiment(const ExperimentConfig& config);

/// Header `p,n,sigma2,method,rmse,trials,seed`; reals printed with 17 significant digits.
std::string to_csv(const RmseTable& table);

/// "%.17g" rendering (round-trip exact) used by every machine-readable output.
std::string format_real(double value);

}  // namespace evq
