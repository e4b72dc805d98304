#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "laprec/quadrature.hpp"

namespace laprec {

// Supplier of (possibly noisy) transform values F_delta(p) on [0, d].
class TransformSource {
  public:
    virtual ~TransformSource() = default;
    virtual double value(double p) const = 0;
    virtual double noise_level() const = 0;
    virtual double interval_end() const = 0; // d
};

// Schedule and stopping parameters of the adaptive inversion.
//
// The regularization parameters follow a_n = a0 q^n; the grid size per
// step is the smallest even integer >= kappa (a0/a_n)^{1/4}, floored at 2
// and capped at m_cap; the iteration stops once the residual surrogate
// G_n drops to stop_constant * delta^stop_exponent.
//
// Unset optionals resolve from the noise level: q = delta^{1/2} (delta
// clamped to >= 1e-16 for this purpose), kappa = 3 for delta > 1e-6 and
// 0.3 otherwise, stop_constant = sqrt(d) + 0.01. With a smaller a0 or
// kappa the first step can already satisfy the stopping rule on grids
// too coarse to represent the target, which caps the reachable accuracy
// at noise level 1e-2; the stock defaults avoid that regime.
struct InversionConfig {
    double a0 = 0.2;
    std::optional<double> q;
    std::optional<double> kappa;
    std::optional<double> stop_constant; // must exceed sqrt(d)
    double stop_exponent = 0.99;         // in (0, 1)
    double d = 5.0;
    double b = 10.0;
    double delta = 0.0;
    int max_iter = 50;
    int m_cap = 300;
    // Update G_n = q G_{n-1} + a_n |c|_W instead of the default
    // q G_{n-1} + (1 - q) a_n |c|_W.
    bool legacy_stop_update = false;

    double resolved_q() const;
    double resolved_kappa() const;
    double resolved_stop_constant() const;
    double threshold() const; // stop_constant * delta^stop_exponent

    // Throws std::invalid_argument when any parameter is out of range.
    void validate() const;
};

struct ExpTerm {
    double amplitude = 0.0;
    double rate = 0.0; // >= 0
};

// Exponential-sum representation sum_k amplitude_k e^{-rate_k t} of the
// recovered function, flattened across all iterations.
struct Reconstruction {
    std::vector<ExpTerm> terms;
    InversionConfig config; // configuration that produced it

    double evaluate(double t) const;
    std::vector<double> evaluate_grid(const std::vector<double>& ts) const;
};

enum class StopReason {
    threshold_met,
    max_iterations,
    a_underflow,
};

const char* to_string(StopReason reason);

struct IterationRecord {
    int n = 0;
    double a = 0.0;
    int m = 0;
    double G = 0.0;
    double coeff_norm = 0.0;     // |c|_W at this step
    double solve_residual = 0.0; // max-norm residual of the linear solve
};

struct InversionReport {
    int n_delta = 0;
    std::vector<IterationRecord> iterations;
    StopReason stop_reason = StopReason::threshold_met;
    double threshold = 0.0;
    double wall_time_ms = 0.0;
    bool condition_warning = false;

    double a_final() const { return iterations.empty() ? 0.0 : iterations.back().a; }
    int m_final() const { return iterations.empty() ? 0 : iterations.back().m; }
    double G_final() const { return iterations.empty() ? 0.0 : iterations.back().G; }
};

// Smallest even integer >= kappa (a0/a_n)^{1/4}, floored at 2, capped at
// m_cap. Throws std::invalid_argument unless 0 < a_n <= a0, kappa > 0
// and m_cap is even and positive.
int choose_m(double kappa, double a0, double a_n, int m_cap);

// Runs the adaptive iteration against the source. Each step solves
// (a_n I + H D) c = F_delta sampled on the step's grid, folds the result
// into the reconstruction (existing amplitudes scaled by q, new terms
// (1-q) w_j c_j at rates p_j), and updates G_n; the loop exits on the
// stopping rule, on max_iter, or when a_n underflows below 1e-300.
std::pair<Reconstruction, InversionReport> run_inversion(const TransformSource& source,
                                                         const InversionConfig& config);

} // namespace laprec
