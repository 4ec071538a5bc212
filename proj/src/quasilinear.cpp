#include "mmslab/quasilinear.hpp"

#include "mmslab/lipschitz.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mmslab {

BallFamily default_ball_family(const MetricMeasureSpace& space, const ScaleLadder& ladder) {
    BallFamily family;
    for (Index x = 0; x < space.size(); ++x)
        for (double r : ladder.radii)
            if (space.ball(x, r).size() >= 2) family.emplace_back(x, r);
    return family;
}

QuasilinearityReport quasilinearity_constant(const MetricMeasureSpace& space,
                                             const ScalarField& f, const BallFamily& family) {
    if (family.empty()) throw InputError("quasilinearity_constant needs a nonempty ball family");
    QuasilinearityReport report;
    report.global_lip = global_lip(space, f);
    for (auto& [x, r] : family) {
        double v = variation(space, f, x, r);
        if (v < report.min_variation) {
            report.min_variation = v;
            report.witness_center = x;
            report.witness_radius = r;
        }
    }
    if (report.global_lip == 0.0)
        report.constant = 1.0;
    else if (report.min_variation == 0.0)
        report.constant = kInf;
    else
        report.constant = report.global_lip / report.min_variation;
    return report;
}

std::int64_t dimension_bound(double K, double C) {
    if (!(K >= 1.0)) throw InputError("dimension_bound requires K >= 1");
    if (!(C >= 1.0)) throw InputError("dimension_bound requires C >= 1");
    double base = 16.0 * K;
    double expo = std::log2(C);
    double v;
    long long ei = std::llround(expo);
    if (expo == static_cast<double>(ei) && ei >= 0 && ei <= 62) {
        v = 1.0;  // exact integer power, avoids pow() rounding on paper values
        for (long long k = 0; k < ei; ++k) v *= base;
    } else {
        v = std::pow(base, expo);
    }
    if (v >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(std::ceil(v));
}

SpanRankReport span_rank_on_net(const MetricMeasureSpace& space,
                                const std::vector<ScalarField>& fields, Index center,
                                double radius, double c, double rank_tol) {
    if (!(c > 0.0)) throw InputError("span_rank_on_net requires spacing c > 0");
    if (fields.empty()) throw InputError("span_rank_on_net needs at least one field");
    if (space.ball(center, radius).empty())
        throw InputError("span_rank_on_net: degenerate (empty) ball");
    Net net = greedy_separated_net(space, center, radius, c);
    SpanRankReport report;
    report.net = net.members;
    report.net_size = static_cast<Index>(net.members.size());
    Matrix M(report.net_size, static_cast<Index>(fields.size()));
    for (Index i = 0; i < report.net_size; ++i)
        for (std::size_t j = 0; j < fields.size(); ++j)
            M(i, j) = fields[j].values[net.members[i]];
    Eigen::JacobiSVD<Matrix> svd(M);
    double top = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    for (Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > rank_tol * top && top > 0.0) ++report.rank;
    return report;
}

NetRestrictionReport net_restriction_bound(const MetricMeasureSpace& space, Index center,
                                           double radius, const Net& net,
                                           const std::vector<ScalarField>& span_basis,
                                           int random_combos, std::uint64_t seed) {
    if (span_basis.empty()) throw InputError("net_restriction_bound needs a span basis");
    std::vector<Index> ball = space.ball(center, radius);
    if (ball.empty()) throw InputError("net_restriction_bound: empty ball");
    for (Index t : net.members) {
        bool inside = std::find(ball.begin(), ball.end(), t) != ball.end();
        if (!inside) throw InputError("net member lies outside the ball");
    }

    // test set: the basis plus seeded random combinations
    std::vector<ScalarField> tests = span_basis;
    SplitMix64 rng(derive_seed(seed, 0x4e));
    for (int k = 0; k < random_combos; ++k) {
        Vector f = Vector::Zero(space.size());
        std::string label = "combo:" + std::to_string(k);
        for (auto& g : span_basis) f += (2.0 * rng.next_double() - 1.0) * g.values;
        tests.push_back({std::move(f), label});
    }

    NetRestrictionReport report;
    for (auto& u : tests) {
        NetRestrictionEntry e;
        e.label = u.label;
        e.lip = global_lip(space, u);
        for (Index t : net.members) e.max_on_net = std::max(e.max_on_net, std::abs(u.values[t]));
        for (Index x : ball) {
            e.sup_ball = std::max(e.sup_ball, std::abs(u.values[x]));
            // nearest net member (ties by id)
            Index best = net.members.front();
            double bd = space.dist(x, best);
            for (Index t : net.members) {
                double d = space.dist(x, t);
                if (d < bd) {
                    bd = d;
                    best = t;
                }
            }
            e.cover_radius = std::max(e.cover_radius, bd);
            if (bd > 0.0) {
                // quotient form |u(x)-u(t)|/d <= LIP(u) is exact: the left
                // side is one of the candidates in the LIP maximum
                double q = std::abs(u.values[x] - u.values[best]) / bd;
                if (q > e.lip) e.nearest_check_exact = false;
            }
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace mmslab
