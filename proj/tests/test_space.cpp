#include <doctest.h>

#include "mmslab/corpus.hpp"
#include "mmslab/space.hpp"

#include <algorithm>
#include <cmath>

using namespace mmslab;

namespace {

MetricMeasureSpace line3() {
    Matrix c(3, 1);
    c << 0.0, 0.5, 1.0;
    auto s = MetricMeasureSpace::from_coords(c, Vector(), "line3");
    s.declare_step(0.5);
    return s;
}

}  // namespace

TEST_CASE("open ball convention") {
    auto s = line3();
    auto b = s.ball(0, 0.6);
    CHECK(b == std::vector<Index>{0, 1});
    CHECK(s.ball(1, 0.0).empty());          // radius-0 open ball is empty
    CHECK(s.ball(1, 1e-9) == std::vector<Index>{1});
    CHECK_THROWS_AS(s.ball(7, 1.0), InputError);
}

TEST_CASE("ball on the 3x3 unit grid") {
    // oracle: enumerate all 9 distances from the center by hand
    auto g = euclidean_grid(3, 2);
    Index center = 4;  // (0.5, 0.5)
    int inside = 0;
    for (Index y = 0; y < g.size(); ++y)
        if (g.dist(center, y) < 1.1 * 0.5 / 0.5 * 0.55) ++inside;  // r = 0.55 on the unit grid
    // grid step is 0.5 here, so radius 1.1*step = 0.55 catches the 4 axis
    // neighbors (0.5) but not the diagonals (0.707)
    CHECK(g.ball(center, 0.55).size() == 5);
    CHECK(inside == 5);
    CHECK(ball_mass(g, center, 0.55) == doctest::Approx(5.0));
    CHECK_THROWS_AS(ball_mass(g, center, 0.0), InputError);
}

TEST_CASE("ball monotonicity over ladder radii") {
    auto g = euclidean_grid(5, 2);
    auto ladder = ScaleLadder::default_for(g);
    for (Index x : {Index(0), Index(7), Index(12)}) {
        std::vector<Index> prev;
        for (auto it = ladder.radii.rbegin(); it != ladder.radii.rend(); ++it) {
            auto cur = g.ball(x, *it);
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }
}

TEST_CASE("scale ladder construction and snapping") {
    auto ladder = ScaleLadder::make(1.0, 0.75, 0.1);
    CHECK(ladder.radii.front() == 1.0);
    CHECK(ladder.radii.back() <= 0.1);          // truncated at the first value <= floor
    for (std::size_t i = 1; i < ladder.radii.size(); ++i)
        CHECK(ladder.radii[i] < ladder.radii[i - 1]);

    auto snapped = ScaleLadder::make(1.0, 0.75, 0.1, 0.1);
    for (double r : snapped.radii) {
        double k = r / 0.1 - 0.5;
        CHECK(std::abs(k - std::round(k)) < 1e-9);  // half-integer multiples of the step
    }
    CHECK_THROWS_AS(ScaleLadder::make(-1.0, 0.75, 0.1), InputError);
    CHECK_THROWS_AS(ScaleLadder::make(1.0, 1.5, 0.1), InputError);
}

TEST_CASE("greedy net on the centimeter grid") {
    // interval grid step 0.01 on [0,1], c = 0.25: greedy pass lands exactly
    // on 0, 0.25, 0.5, 0.75, 1.0
    auto g = euclidean_grid(101, 1);
    Net net = greedy_separated_net(g, 50, 2.0, 0.25);
    REQUIRE(net.members.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(g.coords()(net.members[i], 0) == doctest::Approx(0.25 * i));
}

TEST_CASE("net separation and covering are exact") {
    auto g = euclidean_grid(9, 2);
    Net net = greedy_separated_net(g, 40, 0.8, 0.3);
    for (std::size_t i = 0; i < net.members.size(); ++i)
        for (std::size_t j = i + 1; j < net.members.size(); ++j)
            CHECK(g.dist(net.members[i], net.members[j]) >= 0.3);
    for (Index x : g.ball(40, 0.8)) {
        double nearest = kInf;
        for (Index m : net.members) nearest = std::min(nearest, g.dist(x, m));
        CHECK(nearest < 0.3);
    }
}

TEST_CASE("net trivial cases") {
    auto g = euclidean_grid(7, 1);
    // c above the diameter keeps only the first point
    Net big = greedy_separated_net(g, 3, 10.0, 5.0);
    CHECK(big.members == std::vector<Index>{0});
    // c at or below the min distance keeps everything
    Net all = greedy_separated_net(g, 3, 10.0, g.min_positive_dist());
    CHECK(all.members.size() == g.size());
    CHECK_THROWS_AS(greedy_separated_net(g, 3, 0.0, 0.5), InputError);
}

TEST_CASE("doubling constants on a single point") {
    Matrix c(1, 1);
    c << 0.0;
    auto s = MetricMeasureSpace::from_coords(c, Vector(), "pt");
    auto ladder = ScaleLadder::make(1.0, 0.75, 0.5);
    CHECK(measure_doubling_constant(s, ladder) == 1.0);
    CHECK(metric_doubling_constant(s, ladder) == 1.0);
}

TEST_CASE("doubling constants on grids") {
    // oracle: brute force over all (x, r) is what the operation does; the
    // derived facts are the dimensional bounds
    auto g1 = euclidean_grid(41, 1);
    auto l1 = ScaleLadder::default_for(g1);
    double m1 = measure_doubling_constant(g1, l1);
    CHECK(m1 >= 1.0);
    CHECK(m1 <= 2.4);  // 1D interior value 2 + discreteness at the 4*floor cutoff
    double c1 = metric_doubling_constant(g1, l1);
    CHECK(c1 >= 1.0);
    CHECK(c1 <= 5.0);  // greedy (r/2)-net of an open 2r interval has 4 members

    auto g2 = euclidean_grid(17, 2);
    auto l2 = ScaleLadder::default_for(g2);
    double m2 = measure_doubling_constant(g2, l2);
    CHECK(m2 <= 4.0 * 1.15);
    CHECK(m2 >= 2.0);
    double c2 = metric_doubling_constant(g2, l2);
    CHECK(c2 >= 4.0);
    CHECK(c2 <= 20.0);
}

TEST_CASE("rescaling by a power of two leaves everything unchanged") {
    auto g = euclidean_grid(9, 2);
    auto ladder = ScaleLadder::default_for(g);
    Matrix scaled = g.coords() * 4.0;  // exact scaling of every distance
    auto gs = MetricMeasureSpace::from_coords(scaled, g.masses(), "scaled");
    gs.declare_step(g.uniform_step() * 4.0);
    auto ladder_s = ScaleLadder::make(ladder.r_max * 4.0, ladder.theta, ladder.floor * 4.0);
    ladder_s.radii.clear();
    for (double r : ladder.radii) ladder_s.radii.push_back(r * 4.0);

    for (Index x : {Index(0), Index(40), Index(77)})
        for (double r : ladder.radii) CHECK(g.ball(x, r) == gs.ball(x, 4.0 * r));
    Net a = greedy_separated_net(g, 40, 0.7, 0.26);
    Net b = greedy_separated_net(gs, 40, 2.8, 1.04);
    CHECK(a.members == b.members);
    CHECK(measure_doubling_constant(g, ladder) == measure_doubling_constant(gs, ladder_s));
    CHECK(metric_doubling_constant(g, ladder) == metric_doubling_constant(gs, ladder_s));
}

TEST_CASE("validate catches metric violations") {
    Matrix d(2, 2);
    d << 0.0, 1.0, 2.0, 0.0;  // asymmetric
    auto s = MetricMeasureSpace::from_matrix(d, Vector(), "bad");
    auto v = s.validate();
    REQUIRE(v.has_value());
    CHECK(v->find("symmetry") != std::string::npos);

    Matrix t(3, 3);
    t << 0, 1, 3, 1, 0, 1, 3, 1, 0;  // 3 > 1 + 1
    auto st = MetricMeasureSpace::from_matrix(t, Vector(), "tri");
    auto vt = st.validate();
    REQUIRE(vt.has_value());
    CHECK(vt->find("triangle") != std::string::npos);

    Matrix ok(2, 2);
    ok << 0.0, 1.0, 1.0, 0.0;
    Vector bad_mass(2);
    bad_mass << 1.0, 0.0;
    auto sm = MetricMeasureSpace::from_matrix(ok, bad_mass, "mass");
    auto vm = sm.validate();
    REQUIRE(vm.has_value());
    CHECK(vm->find("mass") != std::string::npos);
}
