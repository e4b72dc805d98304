#include "laprec/solve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace laprec {

namespace {

double residual_max_norm(const KernelMatrix& kernel, double a, const Eigen::VectorXd& c,
                         const Eigen::VectorXd& rhs) {
    const Eigen::VectorXd r = rhs - a * c - apply_Q(kernel, c);
    return r.lpNorm<Eigen::Infinity>();
}

} // namespace

RegularizedSolve solve_regularized(const KernelMatrix& kernel, double a,
                                   const Eigen::VectorXd& rhs) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("solve_regularized: a must be positive, got " +
                                    std::to_string(a));
    }
    const int n = kernel.size();
    if (rhs.size() != n) {
        throw std::invalid_argument("solve_regularized: expected rhs of length " +
                                    std::to_string(n) + ", got " + std::to_string(rhs.size()));
    }

    RegularizedSolve out;
    out.a = a;

    const Eigen::VectorXd w = kernel.grid.weights;
    const Eigen::VectorXd sqw = w.cwiseSqrt();

    Eigen::MatrixXd sym = sqw.asDiagonal() * kernel.H * sqw.asDiagonal();
    // Gershgorin bound on the largest eigenvalue, cheap conditioning probe.
    const double lam_max_bound = sym.cwiseAbs().rowwise().sum().maxCoeff();
    sym.diagonal().array() += a;
    out.condition_warning = a < 1e-14 * lam_max_bound;

    Eigen::LLT<Eigen::MatrixXd> llt(sym);
    if (llt.info() == Eigen::Success) {
        const Eigen::VectorXd rhs_sym = sqw.cwiseProduct(rhs);
        Eigen::VectorXd y = llt.solve(rhs_sym);
        // One refinement step tightens the residual at negligible cost.
        y += llt.solve(rhs_sym - sym * y);
        out.c = y.cwiseQuotient(sqw);
        if (out.c.allFinite()) {
            out.residual_inf = residual_max_norm(kernel, a, out.c, rhs);
            return out;
        }
    }

    // Cholesky lost positive definiteness; fall back to pivoted LU on the
    // original unsymmetric matrix.
    out.used_fallback = true;
    Eigen::MatrixXd A = kernel.H * w.asDiagonal();
    A.diagonal().array() += a;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    out.c = lu.solve(rhs);
    if (!out.c.allFinite()) {
        throw std::runtime_error("solve_regularized: singular system (a = " + std::to_string(a) +
                                 ", m = " + std::to_string(kernel.grid.m) + ")");
    }
    out.residual_inf = residual_max_norm(kernel, a, out.c, rhs);
    return out;
}

} // namespace laprec
