#include "laprec/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "laprec/expfun.hpp"

namespace laprec {

KernelMatrix build_kernel(const SimpsonGrid& grid, double b) {
    if (!(b > 0.0)) {
        throw std::invalid_argument("build_kernel: b must be positive, got " + std::to_string(b));
    }
    const int n = grid.m + 1;
    KernelMatrix kernel;
    kernel.grid = grid;
    kernel.b = b;
    kernel.H.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double s = grid.nodes[i] + grid.nodes[j];
            const double value = bounded_exp_integral(s, b);
            kernel.H(i, j) = value;
            kernel.H(j, i) = value;
        }
    }
    return kernel;
}

static void check_length(const SimpsonGrid& grid, const Eigen::VectorXd& v, const char* who) {
    if (v.size() != grid.m + 1) {
        throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(grid.m + 1) +
                                    " entries, got " + std::to_string(v.size()));
    }
}

double wm_inner(const SimpsonGrid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    check_length(grid, u, "wm_inner");
    check_length(grid, v, "wm_inner");
    return (grid.weights.array() * u.array() * v.array()).sum();
}

double wm_norm(const SimpsonGrid& grid, const Eigen::VectorXd& u) {
    return std::sqrt(wm_inner(grid, u, u));
}

Eigen::VectorXd apply_Q(const KernelMatrix& kernel, const Eigen::VectorXd& c) {
    check_length(kernel.grid, c, "apply_Q");
    return kernel.H * kernel.grid.weights.cwiseProduct(c);
}

double apply_adjoint(const SimpsonGrid& grid, const Eigen::VectorXd& v, double t) {
    check_length(grid, v, "apply_adjoint");
    double sum = 0.0;
    for (int j = 0; j <= grid.m; ++j) {
        sum += grid.weights[j] * std::exp(-grid.nodes[j] * t) * v[j];
    }
    return sum;
}

double apply_discrete_normal(const SimpsonGrid& grid, double b,
                             const std::function<double(double)>& g, double t,
                             int inner_panels) {
    if (inner_panels < 2000) {
        inner_panels = 2000;
    }
    if (inner_panels % 2 != 0) {
        ++inner_panels;
    }
    const double hz = b / inner_panels;
    double result = 0.0;
    for (int j = 0; j <= grid.m; ++j) {
        const double p = grid.nodes[j];
        // Composite Simpson over z in [0, b].
        double inner = g(0.0) + g(b) * std::exp(-p * b);
        for (int k = 1; k < inner_panels; ++k) {
            const double z = k * hz;
            inner += (k % 2 == 1 ? 4.0 : 2.0) * g(z) * std::exp(-p * z);
        }
        inner *= hz / 3.0;
        result += grid.weights[j] * std::exp(-p * t) * inner;
    }
    return result;
}

} // namespace laprec
