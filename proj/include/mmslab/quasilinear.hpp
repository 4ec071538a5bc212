#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <vector>

namespace mmslab {

/// Quasilinearity of a field: global LIP against the smallest variation over
/// a ball family.  QL = LIP / min var (1 for constants, +inf when some ball
/// has zero variation under nonzero LIP).
struct QuasilinearityReport {
    double global_lip = 0.0;
    double min_variation = kInf;
    double constant = 1.0;
    Index witness_center = -1;
    double witness_radius = 0.0;
};

/// Ball family entries (center, radius).
using BallFamily = std::vector<std::pair<Index, double>>;

/// Default family: all (center, ladder radius) whose ball has >= 2 points.
BallFamily default_ball_family(const MetricMeasureSpace& space, const ScaleLadder& ladder);

QuasilinearityReport quasilinearity_constant(const MetricMeasureSpace& space,
                                             const ScalarField& f, const BallFamily& family);

/// ceil((16K)^(log2 C)); the net-cardinality dimension bound.
std::int64_t dimension_bound(double K, double C);

/// Numeric rank (singular values above tol * largest) of the matrix of field
/// values on a greedy c-net of the ball; never exceeds the net size.
struct SpanRankReport {
    Index net_size = 0;
    Index rank = 0;
    std::vector<Index> net;
};

SpanRankReport span_rank_on_net(const MetricMeasureSpace& space,
                                const std::vector<ScalarField>& fields, Index center,
                                double radius, double c, double rank_tol = 1e-9);

/// The restriction argument made checkable: for test functions u from the
/// span, verifies |u(x) - u(t(x))| <= LIP(u) * d(x, t(x)) against the nearest
/// net member (exact, checked in quotient form), and reports the sup of |u|
/// on the ball next to the bound LIP(u) * spacing + max |u| on the net.
struct NetRestrictionEntry {
    std::string label;
    double sup_ball = 0.0;
    double lip = 0.0;
    double max_on_net = 0.0;
    double cover_radius = 0.0;  // max over ball of d(x, nearest net member)
    bool nearest_check_exact = true;
};

struct NetRestrictionReport {
    std::vector<NetRestrictionEntry> entries;
};

NetRestrictionReport net_restriction_bound(const MetricMeasureSpace& space, Index center,
                                           double radius, const Net& net,
                                           const std::vector<ScalarField>& span_basis,
                                           int random_combos = 8, std::uint64_t seed = 1);

}  // namespace mmslab
