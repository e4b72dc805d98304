#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "laprec/expfun.hpp"
#include "laprec/kernel.hpp"
#include "oracles.hpp"

using laprec::apply_adjoint;
using laprec::apply_discrete_normal;
using laprec::apply_Q;
using laprec::build_grid;
using laprec::build_kernel;
using laprec::KernelMatrix;
using laprec::SimpsonGrid;
using laprec::wm_inner;
using laprec::wm_norm;

namespace {

Eigen::MatrixXd symmetrized(const KernelMatrix& kernel) {
    const Eigen::VectorXd sqw = kernel.grid.weights.cwiseSqrt();
    return sqw.asDiagonal() * kernel.H * sqw.asDiagonal();
}

} // namespace

TEST_CASE("kernel entries: corner value, closed form, small-s series") {
    const SimpsonGrid grid = build_grid(2, 5.0);

    const KernelMatrix k10 = build_kernel(grid, 10.0);
    CHECK(k10.H(0, 0) == 10.0); // exact limit at s = 0

    // b = 1, s = 1: 1 - e^{-1}.
    CHECK(laprec::bounded_exp_integral(1.0, 1.0) ==
          doctest::Approx(0.6321205588285577).epsilon(1e-14));

    // b = 1, s = 1e-12: two-term series 1 - s/2.
    CHECK(laprec::bounded_exp_integral(1e-12, 1.0) == doctest::Approx(1.0 - 5e-13).epsilon(1e-15));

    // Series and expm1 branches agree around the switch point.
    for (double x : {1e-7, 5e-7, 9.9e-7, 1.1e-6, 1e-5}) {
        const double via_series = 1.0 * (1.0 - x / 2.0 + x * x / 6.0);
        CHECK(laprec::bounded_exp_integral(x, 1.0) == doctest::Approx(via_series).epsilon(1e-12));
    }

    CHECK_THROWS_AS(build_kernel(grid, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kernel(grid, -1.0), std::invalid_argument);
}

TEST_CASE("kernel matrix is symmetric with entries in (0, b]") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick_m(1, 30);
    std::uniform_real_distribution<double> pick_d(0.5, 5.0);
    std::uniform_real_distribution<double> pick_b(0.5, 10.0);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = 2 * pick_m(rng);
        const double b = pick_b(rng);
        const KernelMatrix kernel = build_kernel(build_grid(m, pick_d(rng)), b);
        CHECK((kernel.H - kernel.H.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(kernel.H.minCoeff() > 0.0);
        CHECK(kernel.H.maxCoeff() <= b);
    }
}

TEST_CASE("symmetrized kernel is positive semidefinite up to roundoff") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> pick_m(1, 30);
    std::uniform_real_distribution<double> pick_d(0.5, 5.0);
    std::uniform_real_distribution<double> pick_b(0.5, 10.0);
    for (int rep = 0; rep < 20; ++rep) {
        const KernelMatrix kernel =
            build_kernel(build_grid(2 * pick_m(rng), pick_d(rng)), pick_b(rng));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrized(kernel),
                                                           Eigen::EigenvaluesOnly);
        const double lam_min = eig.eigenvalues().minCoeff();
        const double lam_max = eig.eigenvalues().maxCoeff();
        CHECK(lam_min >= -1e-10 * lam_max);
    }
}

TEST_CASE("weighted inner product and norm") {
    const SimpsonGrid g25 = build_grid(2, 5.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    CHECK(wm_inner(g25, ones, ones) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(wm_norm(g25, ones) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(wm_norm(g25, Eigen::VectorXd::Zero(3)) == 0.0);

    const SimpsonGrid g21 = build_grid(2, 1.0);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
    e0[0] = 1.0;
    e1[1] = 1.0;
    CHECK(wm_inner(g21, e0, e1) == 0.0);

    // Homogeneity |alpha| u.
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd u(3);
    for (int i = 0; i < 3; ++i) {
        u[i] = gauss(rng);
    }
    CHECK(wm_norm(g25, -3.0 * u) == doctest::Approx(3.0 * wm_norm(g25, u)).epsilon(1e-13));

    CHECK_THROWS_AS(wm_inner(g25, Eigen::VectorXd::Ones(2), ones), std::invalid_argument);
    CHECK_THROWS_AS(wm_norm(g25, Eigen::VectorXd::Ones(4)), std::invalid_argument);
}

TEST_CASE("apply_Q: linearity, positivity and self-adjointness in the weighted product") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> pick_m(1, 20);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 2 * pick_m(rng);
        const SimpsonGrid grid = build_grid(m, 5.0);
        const KernelMatrix kernel = build_kernel(grid, 10.0);
        Eigen::VectorXd u(m + 1);
        Eigen::VectorXd v(m + 1);
        for (int i = 0; i <= m; ++i) {
            u[i] = gauss(rng);
            v[i] = gauss(rng);
        }
        const Eigen::VectorXd Qu = apply_Q(kernel, u);
        const Eigen::VectorXd Qv = apply_Q(kernel, v);
        CHECK(wm_inner(grid, Qu, u) >= -1e-10 * wm_inner(grid, u, u));
        const double lhs = wm_inner(grid, Qu, v);
        const double rhs = wm_inner(grid, u, Qv);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * wm_norm(grid, u) * wm_norm(grid, v));
    }

    const SimpsonGrid grid = build_grid(4, 2.0);
    const KernelMatrix kernel = build_kernel(grid, 3.0);
    CHECK(apply_Q(kernel, Eigen::VectorXd::Zero(5)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(apply_Q(kernel, Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST_CASE("apply_adjoint: zero vector, weight sum at t = 0, single basis vector") {
    const SimpsonGrid grid = build_grid(2, 5.0);
    CHECK(apply_adjoint(grid, Eigen::VectorXd::Zero(3), 1.25) == 0.0);
    CHECK(apply_adjoint(grid, Eigen::VectorXd::Ones(3), 0.0) ==
          doctest::Approx(5.0).epsilon(1e-14));

    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(3);
    e0[0] = 1.0;
    for (double t : {0.0, 0.5, 3.0, 10.0}) {
        // p_0 = 0, so only w_0 survives at every t.
        CHECK(apply_adjoint(grid, e0, t) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("discrete normal operator: zero input, symmetry, positivity") {
    const double b = 1.0;
    const double d = 1.0;
    const SimpsonGrid grid = build_grid(6, d);

    for (double t : {0.0, 0.3, 0.9}) {
        CHECK(apply_discrete_normal(grid, b, [](double) { return 0.0; }, t) == 0.0);
    }

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        oracles::Polynomial g{{coeff(rng), coeff(rng), coeff(rng), coeff(rng)}};
        oracles::Polynomial h{{coeff(rng), coeff(rng), coeff(rng), coeff(rng)}};
        const auto Tg = [&](double t) { return apply_discrete_normal(grid, b, g, t); };
        const auto Th = [&](double t) { return apply_discrete_normal(grid, b, h, t); };
        const double lhs = oracles::l2_inner(Tg, h, b, 400);
        const double rhs = oracles::l2_inner(g, Th, b, 400);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(scale, 1e-30));
        CHECK(oracles::l2_inner(Tg, g, b, 400) >= -1e-10);
    }
}
