// evq: sample-quantile estimation with a normal prior, bootstrap weight listing,
// and the Monte Carlo comparison of estimators.
//
// Exit codes: 0 success, 1 usage or input error, 2 insufficient data.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "evq/bayes.hpp"
#include "evq/bootstrap.hpp"
#include "evq/errors.hpp"
#include "evq/estimators.hpp"
#include "evq/experiment.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInsufficient = 2;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> read_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file " + path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        if (*begin == '+') ++begin;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
            throw InputError(path + ":" + std::to_string(line_no) + ": not a finite number: " +
                             line);
        }
        values.push_back(v);
    }
    if (values.empty()) throw InputError("data file " + path + " contains no observations");
    return values;
}

void emit(const std::string& key, double value) {
    std::cout << key << '=' << evq::format_real(value) << '\n';
}

void emit(const std::string& key, std::size_t value) { std::cout << key << '=' << value << '\n'; }

struct EstimateArgs {
    std::string data;
    double p = 0.0;
    std::optional<double> prior_mean;
    std::optional<double> prior_var;
    std::optional<double> sample_var;
    std::string variance_mode = "bootstrap";
};

int cmd_estimate(const EstimateArgs& args) {
    if (args.prior_mean.has_value() != args.prior_var.has_value()) {
        throw InputError("--prior-mean and --prior-var must be given together");
    }
    const evq::ProbabilityLevel p(args.p);
    const auto sorted = evq::sort_ascending(evq::Sample(read_data(args.data)));
    const auto estimate = evq::sample_quantile(sorted, p);

    emit("n", estimate.n);
    emit("p", p.value());
    emit("rank", estimate.rank);
    emit("sample_quantile", estimate.value);

    std::optional<evq::LikelihoodSpec> likelihood;
    if (args.variance_mode == "bootstrap") {
        const double variance = evq::bootstrap_variance(sorted, p).value;
        emit("bootstrap_variance", variance);
        if (!args.sample_var) likelihood.emplace(variance, evq::VarianceSource::Bootstrapped);
    }
    if (args.sample_var) likelihood.emplace(*args.sample_var, evq::VarianceSource::Known);

    if (args.prior_mean) {
        if (!likelihood) {
            throw InputError("a prior needs a sample variance: use --variance-mode bootstrap or "
                             "--sample-var");
        }
        const evq::PriorBelief prior(*args.prior_mean, *args.prior_var);
        const auto post = evq::posterior(prior, estimate, *likelihood);
        emit("likelihood_variance", likelihood->variance());
        emit("posterior_mean", post.mean);
        emit("posterior_variance", post.variance);
        emit("prior_weight", post.prior_weight);
    }
    return 0;
}

int cmd_weights(std::size_t n, double p_value) {
    const evq::ProbabilityLevel p(p_value);
    const std::size_t r = evq::quantile_rank(n, p);
    if (r == 0) throw evq::InsufficientSamples(n, p.value(), evq::minimum_sample_size(p));
    const auto weights = evq::bootstrap_weights(n, static_cast<long long>(r));
    emit("n", n);
    emit("p", p.value());
    emit("rank", r);
    for (std::size_t i = 1; i <= n; ++i) {
        std::cout << i << ',' << evq::format_real(weights[i]) << '\n';
    }
    emit("sum", weights.total());
    return 0;
}

struct SimulateArgs {
    std::string config_path;
    std::string out;
    std::string p, n, sigma2, prior_mean, trials, seed, methods, threads;
};

struct Override {
    const char* config_key;
    const char* option;
    std::string SimulateArgs::*value;
};

constexpr Override kOverrides[] = {
    {"p_values", "--p", &SimulateArgs::p},
    {"sample_sizes", "--n", &SimulateArgs::n},
    {"prior_variances", "--sigma2", &SimulateArgs::sigma2},
    {"prior_mean", "--prior-mean", &SimulateArgs::prior_mean},
    {"trials", "--trials", &SimulateArgs::trials},
    {"seed", "--seed", &SimulateArgs::seed},
    {"methods", "--methods", &SimulateArgs::methods},
    {"threads", "--threads", &SimulateArgs::threads},
};

int cmd_simulate(const SimulateArgs& args, const CLI::App& sub) {
    evq::ExperimentConfig config;
    if (!args.config_path.empty()) config = evq::load_config(args.config_path);
    for (const auto& o : kOverrides) {
        if (sub.count(o.option) > 0) evq::apply_setting(config, o.config_key, args.*o.value);
    }
    const auto table = evq::run_experiment(config);
    const auto csv = evq::to_csv(table);
    {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw InputError("cannot write " + args.out);
        out << csv;
    }
    const std::size_t methods = config.methods.size();
    for (std::size_t i = 0; i < table.rows.size(); i += methods) {
        const auto& first = table.rows[i];
        std::cout << "p=" << evq::format_real(first.p) << " n=" << first.n
                  << " sigma2=" << evq::format_real(first.prior_variance);
        for (std::size_t m = 0; m < methods; ++m) {
            const auto& row = table.rows[i + m];
            std::cout << ' ' << evq::method_name(row.method) << '='
                      << evq::format_real(row.rmse);
        }
        std::cout << '\n';
    }
    std::cout << "rows=" << table.rows.size() << " written to " << args.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme-value quantile estimation with prior information"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate a low quantile from a data file");
    estimate->add_option("--data", est.data, "File with one observation per line")
        ->required()
        ->check(CLI::ExistingFile);
    estimate->add_option("--p-value", est.p, "Probability level of the quantile")->required();
    estimate->add_option("--prior-mean", est.prior_mean, "Mean of the normal prior");
    estimate->add_option("--prior-var", est.prior_var, "Variance of the normal prior");
    estimate->add_option("--variance-mode", est.variance_mode, "Sample quantile variance")
        ->check(CLI::IsMember({"bootstrap", "none"}));
    estimate->add_option("--sample-var", est.sample_var,
                         "Known sample quantile variance used in place of the bootstrap");

    std::size_t weights_n = 0;
    double weights_p = 0.0;
    auto* weights = app.add_subcommand("weights", "List analytic bootstrap weights");
    weights->add_option("--n", weights_n, "Sample size")->required()->check(CLI::PositiveNumber);
    weights->add_option("--p-value", weights_p, "Probability level")->required();

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo estimator comparison");
    simulate->add_option("--config", sim.config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    simulate->add_option("--out", sim.out, "CSV output path")->required();
    simulate->add_option("--p,--p-value", sim.p, "Comma-separated probability levels");
    simulate->add_option("--n", sim.n, "Comma-separated sample sizes");
    simulate->add_option("--sigma2,--prior-var", sim.sigma2, "Comma-separated prior variances");
    simulate->add_option("--prior-mean", sim.prior_mean, "Prior mean");
    simulate->add_option("--trials", sim.trials, "Trials per grid cell");
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--methods", sim.methods,
                         "Comma-separated subset of sample,bayes_known,bayes_bootstrap");
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*estimate) return cmd_estimate(est);
        if (*weights) return cmd_weights(weights_n, weights_p);
        if (*simulate) return cmd_simulate(sim, *simulate);
    } catch (const evq::InsufficientSamples& e) {
        std::cerr << "insufficient samples: need n >= " << e.required() << " for p="
                  << evq::format_real(e.p()) << " (got n=" << e.n() << ")\n";
        return kExitInsufficient;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
