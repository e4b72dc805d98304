#pragma once

#include <Eigen/Core>

#include "laprec/kernel.hpp"

namespace laprec {

// Solution of the shifted system (a I + H D) c = rhs.
struct RegularizedSolve {
    double a = 0.0;
    Eigen::VectorXd c;
    double residual_inf = 0.0;  // max-norm of (a I + H D) c - rhs
    bool used_fallback = false; // pivoted LU path was taken
    bool condition_warning = false;
};

// Solves (a I + H D) c = rhs for a > 0.
//
// The system is symmetrized first: with y = D^{1/2} c it becomes
// (a I + D^{1/2} H D^{1/2}) y = D^{1/2} rhs, which is symmetric positive
// definite and solved by Cholesky with one step of refinement. If the
// factorization loses positive definiteness to roundoff, the original
// unsymmetric system is solved by partially pivoted LU instead.
//
// Throws std::invalid_argument for a <= 0 or a length mismatch, and
// std::runtime_error when both factorizations fail.
RegularizedSolve solve_regularized(const KernelMatrix& kernel, double a,
                                   const Eigen::VectorXd& rhs);

} // namespace laprec
