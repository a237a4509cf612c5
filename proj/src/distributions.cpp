#include "evq/distributions.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "evq/errors.hpp"

namespace evq {

LogExponential::LogExponential(double rate) : rate_(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("log-exponential rate must be positive and finite, got " +
                          std::to_string(rate));
    }
}

NormalParams::NormalParams(double mean, double variance) : mean_(mean), variance_(variance) {
    if (!std::isfinite(mean)) throw DomainError("normal mean must be finite");
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("normal variance must be positive and finite, got " +
                          std::to_string(variance));
    }
}

LogExponential rate_for_quantile(double x_p, ProbabilityLevel p) {
    if (!std::isfinite(x_p)) throw DomainError("target quantile must be finite");
    return LogExponential(-std::log1p(-p.value()) * std::exp(-x_p));
}

double pdf(const LogExponential& model, double x) {
    const double lambda = model.rate();
    return std::exp(std::log(lambda) + x - lambda * std::exp(x));
}

double cdf(const LogExponential& model, double x) {
    return -std::expm1(-model.rate() * std::exp(x));
}

double quantile(const LogExponential& model, ProbabilityLevel q) {
    return std::log(-std::log1p(-q.value())) - std::log(model.rate());
}

Sample sample(const LogExponential& model, std::size_t n, RngStream& rng) {
    if (n == 0) throw DomainError("sample size must be at least 1");
    const double log_rate = std::log(model.rate());
    std::vector<double> values(n);
    for (double& v : values) {
        v = std::log(-std::log1p(-rng.uniform_open())) - log_rate;
    }
    return Sample(std::move(values));
}

double asymptotic_variance(ProbabilityLevel p, std::size_t n, double density_at_quantile) {
    if (!(density_at_quantile > 0.0) || !std::isfinite(density_at_quantile)) {
        throw DomainError("density at the quantile must be positive and finite");
    }
    if (n == 0) throw DomainError("sample size must be at least 1");
    const double pv = p.value();
    return pv * (1.0 - pv) /
           (static_cast<double>(n) * density_at_quantile * density_at_quantile);
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("normal quantile requires u in (0, 1), got " + std::to_string(u));
    }
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

double normal_draw(const NormalParams& params, RngStream& rng) {
    return params.mean() + std::sqrt(params.variance()) * normal_quantile(rng.uniform_open());
}

}  // namespace evq
