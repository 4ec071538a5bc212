#include "mmslab/space.hpp"

#include <algorithm>
#include <cmath>

namespace mmslab {

MetricMeasureSpace MetricMeasureSpace::from_coords(Matrix coords, Vector mass,
                                                   std::string label, double alpha) {
    if (coords.rows() == 0) throw InputError("space must have at least one point");
    if (mass.size() == 0) mass = Vector::Ones(coords.rows());
    if (mass.size() != coords.rows())
        throw InputError("mass vector length does not match point count");
    if (alpha <= 0.0 || alpha > 1.0) throw InputError("snowflake exponent must be in (0,1]");
    MetricMeasureSpace s;
    s.coords_ = std::move(coords);
    s.alpha_ = alpha;
    s.mass_ = std::move(mass);
    s.total_mass_ = s.mass_.sum();
    s.label_ = std::move(label);
    return s;
}

MetricMeasureSpace MetricMeasureSpace::from_matrix(Matrix dist, Vector mass,
                                                   std::string label) {
    if (dist.rows() == 0 || dist.rows() != dist.cols())
        throw InputError("distance matrix must be square and nonempty");
    if (mass.size() == 0) mass = Vector::Ones(dist.rows());
    if (mass.size() != dist.rows())
        throw InputError("mass vector length does not match point count");
    MetricMeasureSpace s;
    s.dense_ = std::move(dist);
    s.mass_ = std::move(mass);
    s.total_mass_ = s.mass_.sum();
    s.label_ = std::move(label);
    return s;
}

double MetricMeasureSpace::diameter() const {
    if (diameter_cache_ >= 0.0) return diameter_cache_;
    double d = 0.0;
    for (Index i = 0; i < size(); ++i)
        for (Index j = i + 1; j < size(); ++j) d = std::max(d, dist(i, j));
    diameter_cache_ = d;
    return d;
}

double MetricMeasureSpace::min_positive_dist() const {
    double d = kInf;
    for (Index i = 0; i < size(); ++i)
        for (Index j = i + 1; j < size(); ++j) {
            double v = dist(i, j);
            if (v > 0.0) d = std::min(d, v);
        }
    return d;
}

std::vector<Index> MetricMeasureSpace::ball(Index x, double r) const {
    check_point(x);
    if (r < 0.0) throw InputError("ball radius must be >= 0");
    std::vector<Index> out;
    for (Index y = 0; y < size(); ++y)
        if (dist(x, y) < r) out.push_back(y);
    return out;
}

std::vector<std::pair<double, Index>> MetricMeasureSpace::sorted_neighbors(
    Index x, double r_cap) const {
    check_point(x);
    std::vector<std::pair<double, Index>> out;
    for (Index y = 0; y < size(); ++y) {
        if (y == x) continue;
        double d = dist(x, y);
        if (d > 0.0 && d < r_cap) out.emplace_back(d, y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vector MetricMeasureSpace::dists_from(Index x) const {
    check_point(x);
    Vector out(size());
    for (Index y = 0; y < size(); ++y) out[y] = dist(x, y);
    return out;
}

std::optional<std::string> MetricMeasureSpace::validate(Index max_exhaustive,
                                                        std::int64_t sample_count,
                                                        std::uint64_t seed) const {
    const Index n = size();
    for (Index i = 0; i < n; ++i) {
        if (!(mass_[i] > 0.0)) return "mass must be positive at every point";
        if (dist(i, i) != 0.0) return "dist(a,a) = 0 violated";
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            double dij = dist(i, j), dji = dist(j, i);
            if (!(dij > 0.0)) return "dist(a,b) > 0 for a != b violated";
            if (dij != dji) return "symmetry dist(a,b) = dist(b,a) violated";
            if (!std::isfinite(dij)) return "distances must be finite";
        }
    auto triangle_ok = [&](Index a, Index b, Index c) {
        return dist(a, b) <= dist(a, c) + dist(c, b) + 1e-12 * diameter();
    };
    if (n <= max_exhaustive) {
        for (Index a = 0; a < n; ++a)
            for (Index b = a + 1; b < n; ++b)
                for (Index c = 0; c < n; ++c)
                    if (c != a && c != b && !triangle_ok(a, b, c))
                        return "triangle inequality violated";
    } else {
        SplitMix64 rng(seed);
        for (std::int64_t k = 0; k < sample_count; ++k) {
            Index a = static_cast<Index>(rng.next_below(n));
            Index b = static_cast<Index>(rng.next_below(n));
            Index c = static_cast<Index>(rng.next_below(n));
            if (a == b || b == c || a == c) continue;
            if (!triangle_ok(a, b, c)) return "triangle inequality violated (sampled)";
        }
    }
    return std::nullopt;
}

ScaleLadder ScaleLadder::make(double r_max, double theta, double floor, double snap_step) {
    if (!(r_max > 0.0)) throw InputError("ladder r_max must be > 0");
    if (!(theta > 0.0 && theta < 1.0)) throw InputError("ladder ratio theta must be in (0,1)");
    if (!(floor > 0.0)) throw InputError("ladder floor must be > 0");
    ScaleLadder ladder;
    ladder.r_max = r_max;
    ladder.theta = theta;
    ladder.floor = floor;
    double r = r_max;
    while (true) {
        ladder.radii.push_back(r);
        if (r <= floor) break;
        r *= theta;
    }
    if (snap_step > 0.0) {
        std::vector<double> snapped;
        for (double v : ladder.radii) {
            // nearest (k + 1/2) * step, kept within (0, r_max]
            double k = std::round(v / snap_step - 0.5);
            if (k < 0.0) k = 0.0;
            double s = (k + 0.5) * snap_step;
            while (s > r_max && k > 0.0) s = (--k + 0.5) * snap_step;
            if (s > r_max) continue;
            if (snapped.empty() || s < snapped.back()) snapped.push_back(s);
        }
        if (!snapped.empty()) ladder.radii = std::move(snapped);
    }
    for (std::size_t i = 0; i < ladder.radii.size(); ++i) {
        double v = ladder.radii[i];
        if (!(v > 0.0 && v <= r_max) || (i > 0 && v >= ladder.radii[i - 1]))
            throw InputError("ladder radii must be strictly decreasing in (0, r_max]");
    }
    return ladder;
}

ScaleLadder ScaleLadder::default_for(const MetricMeasureSpace& space, double theta) {
    double floor = space.uniform_step() > 0.0 ? space.uniform_step()
                                              : space.min_positive_dist();
    double r_max = std::max(space.diameter() / 2.0, floor);
    return make(r_max, theta, floor, space.uniform_step());
}

std::vector<double> ScaleLadder::window(double w_lo, double w_hi) const {
    std::vector<double> out;
    for (double r : radii)
        if (r >= w_lo && r <= w_hi) out.push_back(r);
    return out;
}

double ball_mass(const MetricMeasureSpace& space, Index x, double r) {
    if (!(r > 0.0)) throw InputError("ball_mass requires r > 0");
    double m = 0.0;
    for (Index y : space.ball(x, r)) m += space.mass(y);
    return m;
}

Net greedy_separated_net(const MetricMeasureSpace& space, Index center, double radius,
                         double c) {
    std::vector<Index> region = space.ball(center, radius);
    if (region.empty()) throw InputError("net region (ball) is empty");
    return greedy_separated_net_ordered(space, region, c, region);
}

Net greedy_separated_net_ordered(const MetricMeasureSpace& space,
                                 const std::vector<Index>& region, double c,
                                 const std::vector<Index>& visit_order) {
    if (!(c > 0.0)) throw InputError("net spacing must be > 0");
    if (region.empty()) throw InputError("net region is empty");
    Net net;
    net.spacing = c;
    for (Index x : visit_order) {
        bool ok = true;
        for (Index m : net.members)
            if (space.dist(x, m) < c) {
                ok = false;
                break;
            }
        if (ok) net.members.push_back(x);
    }
    return net;
}

namespace {

std::vector<double> doubling_radii(const ScaleLadder& ladder, bool exclude_fine) {
    std::vector<double> out;
    for (double r : ladder.radii)
        if (!exclude_fine || r >= 4.0 * ladder.floor) out.push_back(r);
    if (out.empty() && !ladder.radii.empty()) out.push_back(ladder.radii.front());
    return out;
}

}  // namespace

double measure_doubling_constant(const MetricMeasureSpace& space, const ScaleLadder& ladder,
                                 bool exclude_fine_scales) {
    double best = 1.0;
    for (double r : doubling_radii(ladder, exclude_fine_scales))
        for (Index x = 0; x < space.size(); ++x) {
            double num = ball_mass(space, x, 2.0 * r);
            double den = ball_mass(space, x, r);
            best = std::max(best, num / den);
        }
    return best;
}

double metric_doubling_constant(const MetricMeasureSpace& space, const ScaleLadder& ladder,
                                bool exclude_fine_scales) {
    double best = 1.0;
    for (double r : doubling_radii(ladder, exclude_fine_scales))
        for (Index x = 0; x < space.size(); ++x) {
            Net net = greedy_separated_net(space, x, r, r / 2.0);
            best = std::max(best, static_cast<double>(net.members.size()));
        }
    return best;
}

}  // namespace mmslab
