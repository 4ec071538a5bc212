#include <doctest.h>

#include "mmslab/corpus.hpp"
#include "mmslab/differentiation.hpp"
#include "mmslab/lipschitz.hpp"

#include <cmath>

using namespace mmslab;

namespace {

struct GridSetup {
    MetricMeasureSpace space;
    ScaleLadder ladder;
    ScaleWindow window;
};

GridSetup grid2d(int n) {
    GridSetup s{euclidean_grid(n, 2), {}, {}};
    s.ladder = ScaleLadder::default_for(s.space);
    s.window = ScaleWindow::default_for(s.ladder);
    return s;
}

}  // namespace

TEST_CASE("local seminorm basics") {
    auto s = grid2d(9);
    auto tuple = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    Index mid = 4 * 9 + 4;
    CHECK(local_seminorm(s.space, tuple, Vector::Zero(2), mid, s.ladder, s.window) == 0.0);
    Vector e0 = Vector::Unit(2, 0);
    double v = local_seminorm(s.space, tuple, e0, mid, s.ladder, s.window);
    CHECK(v == doctest::Approx(1.0).epsilon(0.10));  // variation of a coordinate field

    // identical fields cancel exactly
    auto twin = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 0)});
    Vector diff(2);
    diff << 1.0, -1.0;
    CHECK(local_seminorm(s.space, twin, diff, mid, s.ladder, s.window) == 0.0);
}

TEST_CASE("seminorm is Lipschitz in lambda") {
    auto s = grid2d(8);
    auto f1 = random_lipschitz_field(s.space, 31);
    auto f2 = random_lipschitz_field(s.space, 32);
    auto tuple = CoordinateTuple::make(s.space, {f1, f2});
    double lip_sum = tuple.lips[0] + tuple.lips[1];
    SplitMix64 rng(8);
    for (Index x = 0; x < s.space.size(); x += 7) {
        for (int trial = 0; trial < 20; ++trial) {
            Vector a(2), b(2);
            for (int k = 0; k < 2; ++k) {
                a[k] = 2.0 * rng.next_double() - 1.0;
                b[k] = 2.0 * rng.next_double() - 1.0;
            }
            double va = local_seminorm(s.space, tuple, a, x, s.ladder, s.window);
            double vb = local_seminorm(s.space, tuple, b, x, s.ladder, s.window);
            CHECK(std::abs(va - vb) <= lip_sum * (a - b).norm() + 1e-12);
        }
    }
}

TEST_CASE("exact linear relation is found with the right certificate") {
    auto s = grid2d(8);
    auto x = coordinate_field(s.space, 0);
    auto y = coordinate_field(s.space, 1);
    ScalarField sum{x.values + y.values, "x+y"};
    auto tuple = CoordinateTuple::make(s.space, {x, y, sum});
    Vector expect(3);
    expect << 1.0, 1.0, -1.0;
    expect /= std::sqrt(3.0);
    for (Index p : {Index(0), Index(27), Index(63)}) {
        auto cert = dependence_test(s.space, tuple, p, s.ladder, s.window, 1e-3);
        CHECK(cert.dependent);
        CHECK(cert.seminorm <= 1e-10);
        CHECK(std::min((cert.lambda - expect).norm(), (cert.lambda + expect).norm()) <= 1e-6);
    }
}

TEST_CASE("grid coordinates are independent and match the sphere oracle") {
    auto s = grid2d(8);
    auto tuple = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    for (Index p : {Index(0), Index(27), Index(42)}) {
        auto cert = dependence_test(s.space, tuple, p, s.ladder, s.window, 1e-3);
        CHECK(!cert.dependent);
        double oracle = sphere_grid_min_seminorm(s.space, tuple, p, s.ladder, s.window);
        CHECK(std::abs(cert.seminorm - oracle) <= 1e-3);
        CHECK(cert.seminorm >= 0.4);  // no unit lambda kills both directions
    }
    // three-field oracle agreement
    ScalarField mix{0.3 * tuple.fields[0].values + s.space.coords().col(1).cwiseProduct(
                                                       s.space.coords().col(1)),
                    "mix"};
    auto t3 = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1), mix});
    for (Index p : {Index(27), Index(36)}) {
        auto cert = dependence_test(s.space, t3, p, s.ladder, s.window, 1e-3);
        double oracle = sphere_grid_min_seminorm(s.space, t3, p, s.ladder, s.window);
        CHECK(cert.seminorm <= oracle + 1e-3);
    }
}

TEST_CASE("constant tuple is degenerate-dependent") {
    auto s = grid2d(6);
    auto tuple = CoordinateTuple::make(s.space, {constant_field(s.space, 5.0)});
    auto cert = dependence_test(s.space, tuple, 7, s.ladder, s.window, 1e-3);
    CHECK(cert.dependent);
    CHECK(cert.degenerate);
    CHECK(cert.lambda[0] == 1.0);
}

TEST_CASE("verdict is invariant under joint field scaling") {
    auto s = grid2d(8);
    auto x = coordinate_field(s.space, 0);
    auto y = coordinate_field(s.space, 1);
    for (double c : {3.0, -0.125, 40.0}) {
        ScalarField cx{c * x.values, "cx"}, cy{c * y.values, "cy"};
        auto base = CoordinateTuple::make(s.space, {x, y});
        auto scaled = CoordinateTuple::make(s.space, {cx, cy});
        for (Index p : {Index(9), Index(36)}) {
            auto c1 = dependence_test(s.space, base, p, s.ladder, s.window, 1e-3);
            auto c2 = dependence_test(s.space, scaled, p, s.ladder, s.window, 1e-3);
            CHECK(c1.dependent == c2.dependent);
        }
    }
}

TEST_CASE("independence sets") {
    auto s = grid2d(8);
    auto x = coordinate_field(s.space, 0);
    auto y = coordinate_field(s.space, 1);
    auto ind = independence_set(s.space, CoordinateTuple::make(s.space, {x, y}), s.ladder,
                                s.window, 1e-3);
    CHECK(ind.mass_fraction >= 0.8);
    auto twin = independence_set(s.space, CoordinateTuple::make(s.space, {x, x}), s.ladder,
                                 s.window, 1e-3);
    CHECK(twin.points.empty());

    auto line = euclidean_grid(17, 1);
    auto ladd = ScaleLadder::default_for(line);
    auto ind1 = independence_set(line, CoordinateTuple::make(line, {coordinate_field(line, 0)}),
                                 ladd, ScaleWindow::default_for(ladd), 1e-3);
    CHECK(ind1.mass_fraction == 1.0);  // a single nonconstant field never dies
}

TEST_CASE("differential of an affine function is exact") {
    auto s = grid2d(9);
    Vector c(2);
    c << 3.0, -1.0;
    auto f = linear_field(s.space, c);
    auto coords = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    auto dp = solve_differential(s.space, f, coords, 4 * 9 + 4, 1.6 / 8.0);
    CHECK(dp.residual <= 1e-12);
    CHECK((dp.df - c).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(!dp.degenerate);
    CHECK_THROWS_AS(solve_differential(s.space, f, coords, 0, 1e-9), InputError);
}

TEST_CASE("differential of t^2 around the midpoint") {
    auto line = euclidean_grid(101, 1);  // step 0.01
    ScalarField f{line.coords().col(0).cwiseProduct(line.coords().col(0)), "t2"};
    auto coords = CoordinateTuple::make(line, {coordinate_field(line, 0)});
    auto dp = solve_differential(line, f, coords, 50, 0.1);
    CHECK(std::abs(dp.df[0] - 1.0) <= 0.1);
    // the 0.4/0.6 boundary pair rounds just inside the open ball, pinning
    // the Chebyshev residual at the half-range 0.1
    CHECK(dp.residual <= 0.1 + 1e-9);
}

TEST_CASE("kink has zero differential and unit residual") {
    auto line = euclidean_grid(41, 1);
    Index x = 20;
    Vector v(line.size());
    for (Index i = 0; i < line.size(); ++i)
        v[i] = std::abs(line.coords()(i, 0) - line.coords()(x, 0));
    ScalarField f{v, "kink"};
    auto coords = CoordinateTuple::make(line, {coordinate_field(line, 0)});
    auto dp = solve_differential(line, f, coords, x, 0.2);
    CHECK(std::abs(dp.df[0]) <= 1e-9);
    CHECK(dp.residual == doctest::Approx(1.0));
}

TEST_CASE("differential field of max(x,y)") {
    auto s = grid2d(12);
    Vector v = s.space.coords().col(0).cwiseMax(s.space.coords().col(1));
    ScalarField f{v, "max"};
    auto coords = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    std::vector<Index> interior;
    for (Index i = 0; i < s.space.size(); ++i) {
        int ix = static_cast<int>(i) / 12, iy = static_cast<int>(i) % 12;
        if (ix >= 2 && ix < 10 && iy >= 2 && iy < 10) interior.push_back(i);
    }
    auto field = differential_field(s.space, f, coords, interior, s.ladder, 0.25);
    for (std::size_t k = 0; k < interior.size(); ++k) {
        int ix = static_cast<int>(interior[k]) / 12, iy = static_cast<int>(interior[k]) % 12;
        const auto& dp = field.values[k];
        if (std::abs(ix - iy) >= 3) {
            // away from the crease the function is one of the coordinates
            Vector expect = Vector::Zero(2);
            expect[ix > iy ? 0 : 1] = 1.0;
            CHECK((dp.df - expect).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK(dp.residual <= 1e-10);
        } else if (ix == iy) {
            CHECK(dp.residual >= 0.2);  // crease: no first-order expansion
        }
    }
    // residual never exceeds the no-fit baseline (the objective at df = 0,
    // whose divisor is d(x,y) rather than the ball radius)
    for (std::size_t k = 0; k < interior.size(); ++k) {
        double base = 0.0;
        Index x = interior[k];
        for (Index y : s.space.ball(x, field.values[k].radius_used))
            if (y != x)
                base = std::max(base, std::abs(f.values[y] - f.values[x]) / s.space.dist(x, y));
        CHECK(field.values[k].residual <= base + 1e-12);
    }
}

TEST_CASE("identical coordinates are flagged degenerate everywhere") {
    auto s = grid2d(8);
    auto x = coordinate_field(s.space, 0);
    auto coords = CoordinateTuple::make(s.space, {x, x});
    auto f = random_lipschitz_field(s.space, 77);
    std::vector<Index> all(s.space.size());
    for (Index i = 0; i < s.space.size(); ++i) all[i] = i;
    auto field = differential_field(s.space, f, coords, all, s.ladder, 0.25);
    for (auto& dp : field.values) CHECK(dp.degenerate);
}

TEST_CASE("linearity of the optimal residual") {
    auto s = grid2d(9);
    auto coords = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    auto f = random_lipschitz_field(s.space, 41);
    auto g = random_lipschitz_field(s.space, 42);
    for (double a : {1.0, 2.0})
        for (double b : {1.0, 0.5}) {
            ScalarField combo{a * f.values + b * g.values, "combo"};
            Index p = 4 * 9 + 4;
            double radius = 1.6 / 8.0;
            auto da = solve_differential(s.space, f, coords, p, radius);
            auto db = solve_differential(s.space, g, coords, p, radius);
            auto dc = solve_differential(s.space, combo, coords, p, radius);
            CHECK(dc.residual <= a * da.residual + b * db.residual + 1e-10);
        }
}

TEST_CASE("differential stability diagnostic stays finite") {
    auto s = grid2d(10);
    Vector c(2);
    c << 2.0, 1.0;
    auto f = linear_field(s.space, c);
    auto coords = CoordinateTuple::make(
        s.space, {coordinate_field(s.space, 0), coordinate_field(s.space, 1)});
    std::vector<Index> pts{33, 44, 55};
    auto field = differential_field(s.space, f, coords, pts, s.ladder, 0.25, true);
    CHECK(field.max_df_shift <= 1e-9);  // affine data: df identical at every radius
    CHECK(field.mass_fraction_below_tol == 1.0);
}
