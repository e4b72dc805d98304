#include "laprec/quadrature.hpp"

#include <stdexcept>

namespace laprec {

SimpsonGrid build_grid(int m, double d) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("build_grid: m must be an even integer >= 2, got " +
                                    std::to_string(m));
    }
    if (!(d > 0.0)) {
        throw std::invalid_argument("build_grid: d must be positive, got " + std::to_string(d));
    }

    SimpsonGrid grid;
    grid.m = m;
    grid.d = d;
    grid.h = d / m;
    grid.nodes.resize(m + 1);
    grid.weights.resize(m + 1);

    // Nodes as j*h rather than a running sum, so they do not drift for
    // large m.
    for (int j = 0; j <= m; ++j) {
        grid.nodes[j] = j * grid.h;
    }

    const double end = grid.h / 3.0;
    const double odd = 4.0 * grid.h / 3.0;
    const double even = 2.0 * grid.h / 3.0;
    for (int j = 0; j <= m; ++j) {
        if (j == 0 || j == m) {
            grid.weights[j] = end;
        } else if (j % 2 == 1) {
            grid.weights[j] = odd;
        } else {
            grid.weights[j] = even;
        }
    }
    return grid;
}

double integrate_sampled(const SimpsonGrid& grid, const Eigen::VectorXd& values) {
    if (values.size() != grid.m + 1) {
        throw std::invalid_argument("integrate_sampled: expected " + std::to_string(grid.m + 1) +
                                    " values, got " + std::to_string(values.size()));
    }
    return grid.weights.dot(values);
}

} // namespace laprec
