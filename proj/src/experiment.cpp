#include "evq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "evq/bootstrap.hpp"
#include "evq/distributions.hpp"
#include "evq/errors.hpp"

namespace evq {

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::Sample:
            return "sample";
        case Method::BayesKnownVar:
            return "bayes_known";
        case Method::BayesBootstrapVar:
            return "bayes_bootstrap";
    }
    return "sample";
}

Method parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (method_name(m) == name) return m;
    }
    throw ConfigError("unknown method '" + std::string(name) +
                      "' (expected sample, bayes_known or bayes_bootstrap)");
}

std::vector<std::size_t> default_sample_sizes(ProbabilityLevel p) {
    constexpr int kPoints = 6;
    constexpr double kLargest = 1e5;
    const std::size_t smallest = minimum_sample_size(p);
    std::vector<std::size_t> sizes;
    const double span = std::log(kLargest / static_cast<double>(smallest));
    for (int k = 0; k < kPoints; ++k) {
        auto n = static_cast<std::size_t>(
            std::llround(static_cast<double>(smallest) * std::exp(span * k / (kPoints - 1))));
        n = std::max(n, smallest);
        if (sizes.empty() || n > sizes.back()) sizes.push_back(n);
    }
    return sizes;
}

namespace {

std::string describe(double p, std::size_t n) {
    return "(p=" + format_real(p) + ", n=" + std::to_string(n) + ")";
}

std::vector<std::size_t> sizes_for(const ExperimentConfig& config, ProbabilityLevel p) {
    return config.sample_sizes.empty() ? default_sample_sizes(p) : config.sample_sizes;
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.trials < 1) throw ConfigError("trials must be at least 1");
    if (!std::isfinite(config.prior_mean)) throw ConfigError("prior_mean must be finite");
    if (config.prior_variances.empty()) throw ConfigError("prior_variances is empty");
    if (config.p_values.empty()) throw ConfigError("p_values is empty");
    if (config.methods.empty()) throw ConfigError("methods is empty");
    for (double v : config.prior_variances) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("prior variance must be positive and finite, got " + format_real(v));
        }
    }
    for (double pv : config.p_values) {
        if (!(pv > 0.0 && pv < 1.0)) {
            throw ConfigError("p value must lie in (0, 1), got " + format_real(pv));
        }
        const ProbabilityLevel p(pv);
        for (std::size_t n : sizes_for(config, p)) {
            if (quantile_rank(n, p) < 1) {
                throw ConfigError("floor(n*p) = 0 for " + describe(pv, n) + "; need n >= " +
                                  std::to_string(minimum_sample_size(p)));
            }
        }
    }
}

std::vector<GridCell> expand_grid(const ExperimentConfig& config) {
    std::vector<GridCell> cells;
    for (double pv : config.p_values) {
        for (std::size_t n : sizes_for(config, ProbabilityLevel(pv))) {
            for (double s2 : config.prior_variances) cells.push_back({pv, n, s2});
        }
    }
    return cells;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = value.find(',');
        const auto item = trim(value.substr(0, comma));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return items;
}

double parse_real(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number '" + std::string(text) + "' for " + std::string(key));
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        // Accept integral values written in floating form such as 1e5.
        const double d = parse_real(key, text);
        if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
            throw ConfigError("invalid integer '" + std::string(text) + "' for " +
                              std::string(key));
        }
        return static_cast<std::uint64_t>(d);
    }
    return v;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "prior_mean") {
        config.prior_mean = parse_real(key, value);
    } else if (key == "prior_variances" || key == "sigma2") {
        config.prior_variances.clear();
        for (auto item : split_list(value)) config.prior_variances.push_back(parse_real(key, item));
    } else if (key == "p_values" || key == "p") {
        config.p_values.clear();
        for (auto item : split_list(value)) config.p_values.push_back(parse_real(key, item));
    } else if (key == "sample_sizes" || key == "n") {
        config.sample_sizes.clear();
        for (auto item : split_list(value)) {
            config.sample_sizes.push_back(static_cast<std::size_t>(parse_unsigned(key, item)));
        }
    } else if (key == "trials") {
        config.trials = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "seed") {
        config.seed = parse_unsigned(key, value);
    } else if (key == "methods") {
        config.methods.clear();
        for (auto item : split_list(value)) config.methods.push_back(parse_method(item));
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_unsigned(key, value));
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = trim(text.substr(0, eol));
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

const MethodOutcome& TrialResult::at(Method method) const {
    for (const auto& o : outcomes) {
        if (o.method == method) return o;
    }
    throw std::out_of_range("method " + std::string(method_name(method)) + " not run");
}

TrialResult run_trial(ProbabilityLevel p, std::size_t n, const PriorBelief& prior,
                      std::span<const Method> methods, const RngStream& rng,
                      const TrialOptions& options) {
    RngStream prior_rng = rng.derive(0);
    RngStream sample_rng = rng.derive(1);

    TrialResult result;
    const double truth = normal_draw(NormalParams(prior.mean(), prior.variance()), prior_rng);
    result.true_quantile = truth;
    const LogExponential model = rate_for_quantile(truth, p);
    Sample observations = sample(model, n, sample_rng);

    const bool needs_sorted =
        std::find(methods.begin(), methods.end(), Method::BayesBootstrapVar) != methods.end();
    std::optional<SortedSample> sorted;
    double estimate = 0.0;
    if (needs_sorted) {
        sorted.emplace(sort_ascending(std::move(observations)));
        estimate = sample_quantile(*sorted, p).value;
    } else {
        estimate = sample_quantile(observations, p).value;
    }

    for (Method m : methods) {
        double value = estimate;
        switch (m) {
            case Method::Sample:
                break;
            case Method::BayesKnownVar: {
                const double variance = options.known_variance.value_or(
                    asymptotic_variance(p, n, pdf(model, truth)));
                value = posterior(prior, estimate, LikelihoodSpec(variance, VarianceSource::Known))
                            .mean;
                break;
            }
            case Method::BayesBootstrapVar: {
                const double variance = bootstrap_variance(*sorted, p).value;
                value = posterior(prior, estimate,
                                  LikelihoodSpec(variance, VarianceSource::Bootstrapped))
                            .mean;
                break;
            }
        }
        const double err = value - truth;
        result.outcomes.push_back({m, value, err * err});
    }
    return result;
}

RngStream trial_stream(std::uint64_t seed, double prior_mean, const GridCell& cell,
                       std::size_t trial) {
    RngStream cell_stream(seed, {std::bit_cast<std::uint64_t>(cell.p), cell.n,
                                 std::bit_cast<std::uint64_t>(cell.prior_variance),
                                 std::bit_cast<std::uint64_t>(prior_mean)});
    return cell_stream.derive(trial);
}

double pairwise_sum(std::span<const double> values) noexcept {
    constexpr std::size_t kBlock = 16;
    if (values.size() <= kBlock) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double rmse(std::span<const double> squared_errors) {
    if (squared_errors.empty()) throw EmptyInput("rmse of an empty sequence");
    return std::sqrt(pairwise_sum(squared_errors) / static_cast<double>(squared_errors.size()));
}

const RmseRow& RmseTable::find(double p, std::size_t n, double prior_variance,
                               Method method) const {
    for (const auto& row : rows) {
        if (row.p == p && row.n == n && row.prior_variance == prior_variance &&
            row.method == method) {
            return row;
        }
    }
    throw std::out_of_range("no row for " + describe(p, n) + ", sigma2=" +
                            format_real(prior_variance) + ", method " +
                            std::string(method_name(method)));
}

RmseTable run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto cells = expand_grid(config);
    const std::size_t methods = config.methods.size();
    const std::size_t trials = config.trials;

    // errors[cell][method * trials + trial], each slot written by exactly one task.
    std::vector<std::vector<double>> errors(cells.size(), std::vector<double>(methods * trials));

    const std::size_t total = cells.size() * trials;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;

    auto worker = [&] {
        constexpr std::size_t kChunk = 16;
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= total) return;
            const std::size_t end = std::min(begin + kChunk, total);
            try {
                for (std::size_t task = begin; task < end; ++task) {
                    const std::size_t c = task / trials;
                    const std::size_t t = task % trials;
                    const GridCell& cell = cells[c];
                    const auto result =
                        run_trial(ProbabilityLevel(cell.p), cell.n,
                                  PriorBelief(config.prior_mean, cell.prior_variance),
                                  config.methods,
                                  trial_stream(config.seed, config.prior_mean, cell, t));
                    for (std::size_t m = 0; m < methods; ++m) {
                        errors[c][m * trials + t] = result.outcomes[m].squared_error;
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    RmseTable table;
    table.rows.reserve(cells.size() * methods);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::span<const double> cell_errors(errors[c]);
        for (std::size_t m = 0; m < methods; ++m) {
            table.rows.push_back({cells[c].p, cells[c].n, cells[c].prior_variance,
                                  config.methods[m],
                                  rmse(cell_errors.subspan(m * trials, trials)), trials,
                                  config.seed});
        }
    }
    return table;
}

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string to_csv(const RmseTable& table) {
    std::string out = "p,n,sigma2,method,rmse,trials,seed\n";
    for (const auto& row : table.rows) {
        out += format_real(row.p);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += format_real(row.prior_variance);
        out += ',';
        out += method_name(row.method);
        out += ',';
        out += format_real(row.rmse);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += std::to_string(row.seed);
        out += '\n';
    }
    return out;
}

}  // namespace evq
