#pragma once

#include <cstdint>

namespace evq::special {

/// Shape pair (a, b) of a beta distribution.
class BetaParams {
public:
    /// Throws DomainError unless both shapes are positive and finite.
    BetaParams(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

private:
    double a_;
    double b_;
};

/// ln Gamma(x) for x > 0 (Lanczos approximation, reflection below 1/2).
double log_gamma(double x);

/// ln B(a, b). Large arguments are combined through Stirling corrections so that
/// the leading terms cancel analytically instead of in floating point.
double log_beta(double a, double b);

/// ln C(n, r). Throws DomainError unless 0 <= r <= n.
double log_binomial(std::int64_t n, std::int64_t r);

/// Both tails of the beta distribution function at x. The smaller tail is evaluated
/// directly by continued fraction (modified Lentz) and the other is its complement.
/// Integer shapes with a + b - 1 <= 32 use the finite binomial series for both tails.
struct BetaTails {
    double lower;  // I_x(a, b)
    double upper;  // 1 - I_x(a, b)
};

BetaTails incomplete_beta_tails(double x, const BetaParams& params);

/// Regularized incomplete beta I_x(a, b), 0 <= x <= 1.
/// Throws DomainError for x outside [0, 1] and NoConvergence if the continued
/// fraction does not settle within the iteration cap.
double regularized_incomplete_beta(double x, const BetaParams& params);

inline constexpr double kContinuedFractionTolerance = 1e-14;
inline constexpr int kContinuedFractionMaxIterations = 500;

}  // namespace evq::special
