#pragma once

#include "mmslab/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmslab {

/// Finite metric measure space: points 0..n-1, a symmetric positive metric,
/// and a strictly positive mass per point.  The metric is backed either by
/// coordinates (Euclidean, optionally snowflaked d^alpha) or by a dense
/// distance matrix.  Immutable after construction; all queries are pure.
class MetricMeasureSpace {
public:
    /// Coordinate-backed space: dist(a,b) = |coords(a)-coords(b)|_2 ^ alpha.
    static MetricMeasureSpace from_coords(Matrix coords, Vector mass,
                                          std::string label, double alpha = 1.0);

    /// Dense-matrix-backed space.  The matrix is taken as-is; call
    /// validate() to check the metric axioms.
    static MetricMeasureSpace from_matrix(Matrix dist, Vector mass, std::string label);

    Index size() const { return mass_.size(); }
    double mass(Index i) const { return mass_[i]; }
    const Vector& masses() const { return mass_; }
    double total_mass() const { return total_mass_; }
    const std::string& label() const { return label_; }

    bool has_coords() const { return coords_.size() > 0; }
    const Matrix& coords() const { return coords_; }     // n x dim, empty if none
    Index coord_dim() const { return coords_.cols(); }

    double dist(Index a, Index b) const {
        if (dense_.size() > 0) return dense_(a, b);
        double s = (coords_.row(a) - coords_.row(b)).norm();
        return alpha_ == 1.0 ? s : std::pow(s, alpha_);
    }

    /// Uniform grid step, when the space declared one (used to snap ladder
    /// radii to half-integer multiples).  0 means "no declared step".
    double uniform_step() const { return step_; }
    void declare_step(double h) { step_ = h; }

    double diameter() const;
    /// Smallest positive pairwise distance (exact scan).
    double min_positive_dist() const;

    /// Open ball { y : dist(x,y) < r }, ids ascending.  r = 0 gives the
    /// empty set; r > 0 always contains x.
    std::vector<Index> ball(Index x, double r) const;

    /// Neighbors of x with 0 < dist < r_cap, sorted by (dist, id).
    std::vector<std::pair<double, Index>> sorted_neighbors(Index x, double r_cap) const;

    /// All distances from x (index-aligned), cheap for both backends.
    Vector dists_from(Index x) const;

    /// Checks the metric-measure axioms.  Triangle inequality is exhaustive
    /// up to max_exhaustive points and sampled (sample_count seeded triples)
    /// above.  Returns the first violated invariant, or nullopt.
    std::optional<std::string> validate(Index max_exhaustive = 512,
                                        std::int64_t sample_count = 200000,
                                        std::uint64_t seed = 1) const;

    void check_point(Index x) const {
        if (x < 0 || x >= size()) throw InputError("unknown point id " + std::to_string(x));
    }

private:
    Matrix dense_;   // n x n, or empty
    Matrix coords_;  // n x dim, or empty
    double alpha_ = 1.0;
    Vector mass_;
    double total_mass_ = 0.0;
    double step_ = 0.0;
    std::string label_;
    mutable double diameter_cache_ = -1.0;
};

/// Geometric scale ladder r_max * theta^k, truncated at the first value
/// <= floor, standing in for r -> 0 on a finite space.  When the space
/// declares a uniform step, radii are snapped to half-integer multiples of
/// it so that no point sits exactly on an open-ball boundary.
struct ScaleLadder {
    double r_max = 0.0;
    double theta = 0.75;
    double floor = 0.0;
    std::vector<double> radii;  // strictly decreasing, in (0, r_max]

    static ScaleLadder make(double r_max, double theta, double floor, double snap_step = 0.0);

    /// Default ladder for a space: r_max = diameter/2, theta = 0.75,
    /// floor = declared step (else min positive distance).
    static ScaleLadder default_for(const MetricMeasureSpace& space, double theta = 0.75);

    /// Radii within [w_lo, w_hi] (the "small r" window), still decreasing.
    std::vector<double> window(double w_lo, double w_hi) const;
};

/// Scale window used for the pointwise lip/Lip min-max.  Defaults to
/// [floor, 16*floor] of the ladder it is applied to.
struct ScaleWindow {
    double lo = 0.0;
    double hi = 0.0;
    static ScaleWindow default_for(const ScaleLadder& ladder) {
        return {ladder.floor, 16.0 * ladder.floor};
    }
};

/// c-separated net of a ball: members pairwise >= c apart, every ball point
/// within < c of some member.
struct Net {
    std::vector<Index> members;
    double spacing = 0.0;
    Index region_center = 0;
    double region_radius = 0.0;
};

double ball_mass(const MetricMeasureSpace& space, Index x, double r);

/// Greedy maximal c-separated net of ball(center, radius), visiting points
/// in ascending id order.  Maximality gives the covering property.
Net greedy_separated_net(const MetricMeasureSpace& space, Index center, double radius,
                         double c);

/// Variant with an explicit visit order (first entries seeded first);
/// used by blow-up diagnostics to anchor nets at base points.
Net greedy_separated_net_ordered(const MetricMeasureSpace& space,
                                 const std::vector<Index>& region, double c,
                                 const std::vector<Index>& visit_order);

/// max over centers x and ladder radii r of mass(B(x,2r)) / mass(B(x,r)).
/// Radii below 4*floor are excluded by default (discreteness dominates there).
double measure_doubling_constant(const MetricMeasureSpace& space, const ScaleLadder& ladder,
                                 bool exclude_fine_scales = true);

/// Upper estimate of the metric doubling constant: max over balls B(x,r) of
/// the cardinality of a greedy (r/2)-net of B(x,r) (a valid cover witness).
double metric_doubling_constant(const MetricMeasureSpace& space, const ScaleLadder& ladder,
                                bool exclude_fine_scales = true);

}  // namespace mmslab
