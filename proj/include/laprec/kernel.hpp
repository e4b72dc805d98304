#pragma once

#include <functional>

#include <Eigen/Core>

#include "laprec/quadrature.hpp"

namespace laprec {

// Gram matrix of the Laplace kernel exponentials over the support
// interval [0, b], paired with the Simpson weight diagonal of its grid:
//
//   H_ij = integral_0^b e^{-(p_i + p_j) t} dt,   H_00 = b,
//   D    = diag(w_0, ..., w_m).
//
// H is symmetric with entries in (0, b], and D^{1/2} H D^{1/2} is
// positive semidefinite up to roundoff. The discretized normal matrix
// applied by apply_Q is H D.
struct KernelMatrix {
    SimpsonGrid grid;
    double b = 0.0;
    Eigen::MatrixXd H;

    int size() const { return grid.m + 1; }
};

// Throws std::invalid_argument when b <= 0.
KernelMatrix build_kernel(const SimpsonGrid& grid, double b);

// Weighted inner product <u, v> = sum_j w_j u_j v_j and its norm.
double wm_inner(const SimpsonGrid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v);
double wm_norm(const SimpsonGrid& grid, const Eigen::VectorXd& u);

// (H D) c, i.e. row i = sum_j H_ij w_j c_j.
Eigen::VectorXd apply_Q(const KernelMatrix& kernel, const Eigen::VectorXd& c);

// Adjoint of node sampling: sum_j w_j e^{-p_j t} v_j.
double apply_adjoint(const SimpsonGrid& grid, const Eigen::VectorXd& v, double t);

// Discretized normal operator acting on a function g on [0, b]:
//   sum_j w_j e^{-p_j t} integral_0^b e^{-p_j z} g(z) dz.
// The inner integrals are evaluated with a fine composite Simpson rule
// (inner_panels panels, at least 2000); this routine backs operator-level
// checks, not the production solve path.
double apply_discrete_normal(const SimpsonGrid& grid, double b,
                             const std::function<double(double)>& g, double t,
                             int inner_panels = 2000);

} // namespace laprec
