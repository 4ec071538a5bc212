#include <doctest.h>

#include "mmslab/minimax.hpp"

#include <cmath>

using namespace mmslab;

TEST_CASE("exact affine data gives zero residual") {
    // b = A * (3, -1): the minimax value is 0 and lambda is recovered
    Matrix A(6, 2);
    A << 1, 0, 0, 1, 1, 1, -1, 0, 0, -1, 2, 1;
    Vector truth(2);
    truth << 3.0, -1.0;
    Vector b = A * truth;
    Vector d = Vector::Ones(6);
    auto sol = solve_weighted_minimax(A, b, d);
    CHECK(sol.value <= 1e-12);
    CHECK((sol.lambda - truth).norm() <= 1e-9);
}

TEST_CASE("symmetric kink forces lambda zero") {
    // rows (t, |t|): minimize max(|1-l|, |1+l|) -> l = 0, value 1
    Matrix A(2, 1);
    A << 1.0, -1.0;
    Vector b(2);
    b << 1.0, 1.0;
    Vector d(2);
    d << 1.0, 1.0;
    auto sol = solve_weighted_minimax(A, b, d);
    CHECK(sol.lambda[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sol.value == doctest::Approx(1.0));
}

TEST_CASE("line-search oracle on a 1D quadratic window") {
    // f(t) = t^2 around x = 0.5 with radius 0.05: residual rows are
    // |(y+x) - lambda| so the optimum is the Chebyshev center of y+x
    const double x = 0.5;
    std::vector<double> ys;
    for (double y = 0.45; y <= 0.55; y += 1e-3)
        if (std::abs(y - x) > 1e-12) ys.push_back(y);
    const Index m = static_cast<Index>(ys.size());
    Matrix A(m, 1);
    Vector b(m), d(m);
    for (Index i = 0; i < m; ++i) {
        A(i, 0) = ys[i] - x;
        b[i] = ys[i] * ys[i] - x * x;
        d[i] = std::abs(ys[i] - x);
    }
    auto sol = solve_weighted_minimax(A, b, d);
    // oracle: brute-force lambda line search
    double best_l = 0.0, best_v = kInf;
    for (double l = 0.5; l <= 1.5; l += 1e-5) {
        Vector lam(1);
        lam << l;
        double v = minimax_objective(A, b, d, lam);
        if (v < best_v) {
            best_v = v;
            best_l = l;
        }
    }
    CHECK(sol.value <= best_v + 1e-9);
    CHECK(std::abs(sol.lambda[0] - best_l) <= 1e-3);
    CHECK(std::abs(sol.lambda[0] - 1.0) <= 0.06);
    CHECK(sol.value <= 0.1);
}

TEST_CASE("optimality against 1000 seeded probes") {
    SplitMix64 rng(99);
    for (int instance = 0; instance < 5; ++instance) {
        const Index m = 24, N = 3;
        Matrix A(m, N);
        Vector b(m), d(m);
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j < N; ++j) A(i, j) = 2.0 * rng.next_double() - 1.0;
            b[i] = 2.0 * rng.next_double() - 1.0;
            d[i] = 0.5 + rng.next_double();
        }
        auto sol = solve_weighted_minimax(A, b, d);
        for (int probe = 0; probe < 1000; ++probe) {
            Vector lam(N);
            for (Index j = 0; j < N; ++j) lam[j] = 4.0 * rng.next_double() - 2.0;
            CHECK(sol.value <= minimax_objective(A, b, d, lam) + 1e-10);
        }
    }
}

TEST_CASE("duplicated column takes the minimal-norm split") {
    // identical coordinates (t, t): the optimal set is a line; the
    // minimal-norm representative splits the slope evenly
    Matrix A(4, 2);
    A << 0.1, 0.1, -0.1, -0.1, 0.2, 0.2, -0.2, -0.2;
    Vector truth(2);
    truth << 1.0, 0.0;  // b corresponds to total slope 1
    Vector b = A * truth;
    Vector d = A.col(0).cwiseAbs();
    auto sol = solve_weighted_minimax(A, b, d);
    CHECK(sol.value <= 1e-10);
    CHECK(sol.lambda[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(sol.lambda[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("degenerate all-zero rows report the raw variation") {
    Matrix A = Matrix::Zero(3, 2);
    Vector b(3);
    b << 0.3, -0.1, 0.2;
    Vector d(3);
    d << 1.0, 1.0, 0.5;
    auto sol = solve_weighted_minimax(A, b, d);
    CHECK(sol.lambda.norm() == 0.0);  // min-norm over all of R^2
    CHECK(sol.value == doctest::Approx(0.4));  // max |b|/d
}

TEST_CASE("subadditivity of the optimal value") {
    SplitMix64 rng(123);
    const Index m = 18, N = 2;
    Matrix A(m, N);
    Vector b1(m), b2(m), d(m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < N; ++j) A(i, j) = 2.0 * rng.next_double() - 1.0;
        b1[i] = rng.next_double();
        b2[i] = rng.next_double();
        d[i] = 0.5 + rng.next_double();
    }
    auto s1 = solve_weighted_minimax(A, b1, d);
    auto s2 = solve_weighted_minimax(A, b2, d);
    auto s12 = solve_weighted_minimax(A, b1 + b2, d);
    CHECK(s12.value <= s1.value + s2.value + 1e-10);
}

TEST_CASE("input validation") {
    Matrix A(2, 1);
    A << 1, 2;
    Vector b(2), d(2);
    b << 1, 2;
    d << 1, 0;
    CHECK_THROWS_AS(solve_weighted_minimax(A, b, d), InputError);
    Vector bad(1);
    bad << 1;
    CHECK_THROWS_AS(solve_weighted_minimax(A, bad, d), InputError);
}
