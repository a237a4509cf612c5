#pragma once

// Test-only reference computations, independent of the library's numerics.

#include <cmath>
#include <functional>
#include <vector>

namespace evq::oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// r C(n, r) times the integral of y^(r-1) (1-y)^(n-r) over ((i-1)/n, i/n], i = 1..n,
/// by adaptive quadrature of the integrand itself.
inline std::vector<double> quadrature_weights(int n, int r) {
    double binom = 1.0;
    for (int j = 1; j <= r; ++j) binom = binom * (n - r + j) / j;
    const double scale = r * binom;
    const auto integrand = [&](double y) {
        return scale * std::pow(y, r - 1) * std::pow(1.0 - y, n - r);
    };
    std::vector<double> w;
    for (int i = 1; i <= n; ++i) {
        w.push_back(integrate(integrand, (i - 1.0) / n, static_cast<double>(i) / n, 1e-13));
    }
    return w;
}

}  // namespace evq::oracle
