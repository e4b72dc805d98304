#pragma once

#include <cmath>

namespace laprec {

// (1 - e^{-x}) / x for x >= 0, with the limit value 1 at x = 0.
inline double phi1(double x) {
    if (x == 0.0) {
        return 1.0;
    }
    return -std::expm1(-x) / x;
}

// (1 - (1 + x) e^{-x}) / x^2 for x >= 0, limit 1/2 at x = 0.
// The direct form cancels catastrophically for small x, so a series is
// used below x = 0.5.
inline double phi2(double x) {
    if (x < 0.5) {
        // sum_{k>=0} (-1)^k (k+1) x^k / (k+2)!
        double term = 0.5;
        double sum = term;
        for (int k = 1; k < 40; ++k) {
            term *= -x * (k + 1) / (static_cast<double>(k) * (k + 2));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) {
                break;
            }
        }
        return sum;
    }
    return (1.0 - (1.0 + x) * std::exp(-x)) / (x * x);
}

// integral_0^len e^{-s t} dt = (1 - e^{-s len}) / s, valid for s >= 0.
// For s*len below 1e-6 the three-term series len (1 - x/2 + x^2/6) is
// used; otherwise expm1 keeps the difference accurate. Returns exactly
// len when s = 0.
inline double bounded_exp_integral(double s, double len) {
    const double x = s * len;
    if (x < 1e-6) {
        return len * (1.0 - x / 2.0 + x * x / 6.0);
    }
    return -std::expm1(-x) / s;
}

} // namespace laprec
