#include <doctest.h>

#include "mmslab/corpus.hpp"
#include "mmslab/lipschitz.hpp"
#include "mmslab/quasilinear.hpp"

#include <cmath>

using namespace mmslab;

TEST_CASE("quasilinearity of constants and linear fields") {
    auto g = euclidean_grid(17, 2);
    auto ladder = ScaleLadder::default_for(g);
    auto family = default_ball_family(g, ladder);
    auto rc = quasilinearity_constant(g, constant_field(g, 2.0), family);
    CHECK(rc.constant == 1.0);  // convention for LIP = 0

    // interior family only: centers a full ladder radius away from the rim
    Vector c(2);
    c << 3.0, -1.0;
    auto f = linear_field(g, c);
    BallFamily interior;
    for (auto& [x, r] : family) {
        double cx = g.coords()(x, 0), cy = g.coords()(x, 1);
        double margin = std::min(std::min(cx, 1.0 - cx), std::min(cy, 1.0 - cy));
        if (margin >= r) interior.emplace_back(x, r);
    }
    auto rl = quasilinearity_constant(g, f, interior);
    CHECK(rl.constant >= 1.0);
    CHECK(rl.constant <= 1.5);
}

TEST_CASE("t^2 is badly quasilinear near its flat point") {
    auto line = euclidean_grid(101, 1);  // step 0.01
    ScalarField f{line.coords().col(0).cwiseProduct(line.coords().col(0)), "t2"};
    BallFamily near_zero;
    for (Index x = 0; x < 10; ++x) near_zero.emplace_back(x, 0.105);
    auto r = quasilinearity_constant(line, f, near_zero);
    CHECK(r.global_lip == doctest::Approx(1.99));  // max slope on the grid
    CHECK(r.constant >= 4.0);
    CHECK(r.witness_radius == 0.105);
}

TEST_CASE("quasilinearity is invariant under affine changes") {
    auto g = euclidean_grid(9, 2);
    auto ladder = ScaleLadder::default_for(g);
    auto family = default_ball_family(g, ladder);
    auto f = random_lipschitz_field(g, 17);
    auto base = quasilinearity_constant(g, f, family);
    for (double a : {2.0, -0.5})
        for (double b : {0.0, 3.5}) {
            ScalarField af{a * f.values + Vector::Constant(g.size(), b), "affine"};
            auto r = quasilinearity_constant(g, af, family);
            CHECK(r.constant == doctest::Approx(base.constant).epsilon(1e-12));
        }
}

TEST_CASE("dimension bound formula") {
    CHECK(dimension_bound(1.0, 2.0) == 16);    // (16*1)^log2(2)
    CHECK(dimension_bound(1.0, 1.0) == 1);     // exponent zero
    CHECK(dimension_bound(2.0, 4.0) == 1024);  // 32^2
    CHECK(dimension_bound(1.5, 2.0) == 24);
    CHECK(dimension_bound(4.0, 4.0) == 4096);
    CHECK_THROWS_AS(dimension_bound(0.5, 2.0), InputError);
    CHECK_THROWS_AS(dimension_bound(1.0, 0.9), InputError);
    // monotone in both arguments
    CHECK(dimension_bound(2.0, 3.0) >= dimension_bound(1.0, 3.0));
    CHECK(dimension_bound(2.0, 5.0) >= dimension_bound(2.0, 3.0));
}

TEST_CASE("span rank on nets") {
    auto g = euclidean_grid(9, 2);
    auto x = coordinate_field(g, 0);
    auto y = coordinate_field(g, 1);
    ScalarField sum{x.values + y.values, "x+y"};
    Index center = 4 * 9 + 4;
    auto r1 = span_rank_on_net(g, {x, y, sum}, center, 0.6, 1.0 / 8.0);
    CHECK(r1.rank == 2);  // exact linear dependence drops one dimension
    CHECK(r1.rank <= r1.net_size);
    auto r2 = span_rank_on_net(g, {x, y}, center, 0.6, 1.0 / 8.0);
    CHECK(r2.rank == 2);
    auto r3 = span_rank_on_net(g, {constant_field(g, 1.0)}, center, 0.6, 1.0 / 8.0);
    CHECK(r3.rank == 1);
    CHECK_THROWS_AS(span_rank_on_net(g, {x}, center, 0.6, 0.0), InputError);
    // rank never exceeds the net size even with many fields
    auto tiny = span_rank_on_net(g, {x, y, sum, constant_field(g, 1.0)}, center, 0.6, 2.0);
    CHECK(tiny.net_size == 1);
    CHECK(tiny.rank <= 1);
}

TEST_CASE("net restriction bound") {
    auto g = euclidean_grid(17, 2);
    Index center = 8 * 17 + 8;
    double radius = 0.45, spacing = 1.0 / 8.0;
    Net net = greedy_separated_net(g, center, radius, spacing);
    auto x = coordinate_field(g, 0);
    auto y = coordinate_field(g, 1);
    auto report = net_restriction_bound(g, center, radius, net, {x, y}, 6, 11);
    for (auto& e : report.entries) {
        CHECK(e.nearest_check_exact);       // |u(x)-u(t)|/d <= LIP, quotient form
        CHECK(e.cover_radius < spacing);    // maximal net covers below c
        // vanishing on the net would force sup <= LIP * spacing + net residue
        CHECK(e.sup_ball <= e.lip * e.cover_radius + e.max_on_net + 1e-12);
    }
    // the zero field trivially vanishes on the net with sup 0
    auto zero = net_restriction_bound(g, center, radius, net, {constant_field(g, 0.0)}, 0, 1);
    CHECK(zero.entries[0].sup_ball == 0.0);
    CHECK(zero.entries[0].max_on_net == 0.0);
    // a constant survives any net: sup stays 1 no matter the spacing
    auto ones = net_restriction_bound(g, center, radius, net, {constant_field(g, 1.0)}, 0, 1);
    CHECK(ones.entries[0].sup_ball == 1.0);
    // net outside the ball is rejected
    Net far = greedy_separated_net(g, 0, 0.2, 0.1);
    CHECK_THROWS_AS(net_restriction_bound(g, center, 0.1, far, {x}), InputError);
}

TEST_CASE("dyadic grid kernel element vanishes identically") {
    // h = 1/16 is dyadic, so x + y - (x+y) evaluates to exactly zero and the
    // restriction bound is exact with zero slack
    auto g = euclidean_grid(17, 2);
    auto x = coordinate_field(g, 0);
    auto y = coordinate_field(g, 1);
    Vector u = x.values + y.values;
    for (Index i = 0; i < g.size(); ++i) u[i] -= (x.values[i] + y.values[i]);
    CHECK(u.cwiseAbs().maxCoeff() == 0.0);
}
