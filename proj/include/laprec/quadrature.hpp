#pragma once

#include <Eigen/Core>

namespace laprec {

// Nodes and weights of the compound Simpson rule on [0, d] with m panels
// of width h = d/m (m even). The weight pattern is h/3 at the ends,
// 4h/3 at odd nodes and 2h/3 at even interior nodes; the weights sum to
// d exactly up to roundoff.
struct SimpsonGrid {
    int m = 0;
    double d = 0.0;
    double h = 0.0;
    Eigen::VectorXd nodes;   // p_j = j h, j = 0..m
    Eigen::VectorXd weights; // w_j > 0
};

// Throws std::invalid_argument unless m is even, m >= 2 and d > 0.
SimpsonGrid build_grid(int m, double d);

// Sum_j w_j values_j. values must have m+1 entries.
double integrate_sampled(const SimpsonGrid& grid, const Eigen::VectorXd& values);

} // namespace laprec
