#include "laprec/invert.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "laprec/kernel.hpp"
#include "laprec/solve.hpp"

namespace laprec {

double InversionConfig::resolved_q() const {
    if (q) {
        return *q;
    }
    return std::sqrt(std::max(delta, 1e-16));
}

double InversionConfig::resolved_kappa() const {
    if (kappa) {
        return *kappa;
    }
    return delta > 1e-6 ? 3.0 : 0.3;
}

double InversionConfig::resolved_stop_constant() const {
    if (stop_constant) {
        return *stop_constant;
    }
    return std::sqrt(d) + 0.01;
}

double InversionConfig::threshold() const {
    return resolved_stop_constant() * std::pow(delta, stop_exponent);
}

void InversionConfig::validate() const {
    if (!(a0 > 0.0)) {
        throw std::invalid_argument("config: a0 must be positive");
    }
    const double qv = resolved_q();
    if (!(qv > 0.0 && qv < 1.0)) {
        throw std::invalid_argument("config: q must lie in (0, 1), got " + std::to_string(qv));
    }
    if (!(resolved_kappa() > 0.0)) {
        throw std::invalid_argument("config: kappa must be positive");
    }
    if (!(d > 0.0)) {
        throw std::invalid_argument("config: d must be positive");
    }
    if (!(b > 0.0)) {
        throw std::invalid_argument("config: b must be positive");
    }
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("config: delta must be nonnegative");
    }
    if (!(resolved_stop_constant() > std::sqrt(d))) {
        throw std::invalid_argument("config: stop constant must exceed sqrt(d)");
    }
    if (!(stop_exponent > 0.0 && stop_exponent < 1.0)) {
        throw std::invalid_argument("config: stop exponent must lie in (0, 1)");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("config: max_iter must be at least 1");
    }
    if (m_cap < 2 || m_cap % 2 != 0) {
        throw std::invalid_argument("config: m_cap must be even and >= 2");
    }
}

double Reconstruction::evaluate(double t) const {
    double sum = 0.0;
    for (const ExpTerm& term : terms) {
        sum += term.amplitude * std::exp(-term.rate * t);
    }
    return sum;
}

std::vector<double> Reconstruction::evaluate_grid(const std::vector<double>& ts) const {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        out.push_back(evaluate(t));
    }
    return out;
}

const char* to_string(StopReason reason) {
    switch (reason) {
    case StopReason::threshold_met:
        return "threshold-met";
    case StopReason::max_iterations:
        return "max-iter";
    case StopReason::a_underflow:
        return "a-underflow";
    }
    return "unknown";
}

int choose_m(double kappa, double a0, double a_n, int m_cap) {
    if (!(kappa > 0.0) || !(a0 > 0.0) || !(a_n > 0.0)) {
        throw std::invalid_argument("choose_m: kappa, a0 and a_n must be positive");
    }
    if (a_n > a0) {
        throw std::invalid_argument("choose_m: a_n must not exceed a0");
    }
    if (m_cap < 2 || m_cap % 2 != 0) {
        throw std::invalid_argument("choose_m: m_cap must be even and >= 2");
    }
    const double x = kappa * std::pow(a0 / a_n, 0.25);
    if (x >= static_cast<double>(m_cap)) {
        return m_cap;
    }
    int m = 2;
    if (x > 2.0) {
        m = static_cast<int>(std::ceil(x));
        if (m % 2 != 0) {
            ++m;
        }
    }
    return std::min(m, m_cap);
}

std::pair<Reconstruction, InversionReport> run_inversion(const TransformSource& source,
                                                         const InversionConfig& config) {
    config.validate();
    if (std::abs(source.interval_end() - config.d) > 1e-12 * std::max(1.0, config.d)) {
        throw std::invalid_argument("run_inversion: source interval end " +
                                    std::to_string(source.interval_end()) +
                                    " does not match config d " + std::to_string(config.d));
    }

    const auto start = std::chrono::steady_clock::now();

    const double q = config.resolved_q();
    const double kappa = config.resolved_kappa();
    const double threshold = config.threshold();

    Reconstruction recon;
    recon.config = config;

    InversionReport report;
    report.threshold = threshold;
    report.stop_reason = StopReason::max_iterations;

    double G = 0.0;
    for (int n = 1; n <= config.max_iter; ++n) {
        const double a_n = config.a0 * std::pow(q, n);
        if (a_n < 1e-300) {
            report.stop_reason = StopReason::a_underflow;
            report.n_delta = n - 1;
            break;
        }

        const int m_n = choose_m(kappa, config.a0, a_n, config.m_cap);
        const SimpsonGrid grid = build_grid(m_n, config.d);
        const KernelMatrix kernel = build_kernel(grid, config.b);

        Eigen::VectorXd rhs(m_n + 1);
        for (int j = 0; j <= m_n; ++j) {
            try {
                rhs[j] = source.value(grid.nodes[j]);
            } catch (const std::exception& e) {
                throw std::runtime_error("run_inversion: source evaluation failed at node " +
                                         std::to_string(j) + " (p = " +
                                         std::to_string(grid.nodes[j]) + "): " + e.what());
            }
        }

        RegularizedSolve solve;
        try {
            solve = solve_regularized(kernel, a_n, rhs);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("run_inversion: iteration " + std::to_string(n) + ": " +
                                     e.what());
        }
        report.condition_warning = report.condition_warning || solve.condition_warning;

        // Fold the step into the running exponential sum.
        for (ExpTerm& term : recon.terms) {
            term.amplitude *= q;
        }
        for (int j = 0; j <= m_n; ++j) {
            recon.terms.push_back({(1.0 - q) * solve.c[j] * grid.weights[j], grid.nodes[j]});
        }

        const double coeff_norm = wm_norm(grid, solve.c);
        if (config.legacy_stop_update) {
            G = q * G + a_n * coeff_norm;
        } else {
            G = q * G + (1.0 - q) * a_n * coeff_norm;
        }

        report.iterations.push_back({n, a_n, m_n, G, coeff_norm, solve.residual_inf});
        report.n_delta = n;

        if (G <= threshold) {
            report.stop_reason = StopReason::threshold_met;
            break;
        }
    }

    const auto end = std::chrono::steady_clock::now();
    report.wall_time_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return {std::move(recon), std::move(report)};
}

} // namespace laprec
