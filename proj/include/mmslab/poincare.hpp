#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <string>
#include <vector>

namespace mmslab {

/// One tested (ball, probe) ratio: mean oscillation over the left side
/// divided by r * (mean of lip^p over the dilated ball)^(1/p).
struct PiRatioEntry {
    Index center = 0;
    double radius = 0.0;
    int probe = 0;
    double ratio = 0.0;
};

struct PiReport {
    double p = 1.0;
    double dilation = 2.0;
    double constant_estimate = 0.0;  // max ratio over all tested pairs
    Index worst_center = -1;
    double worst_radius = 0.0;
    std::string worst_probe;
    bool failed = false;  // some ball had zero right side with nonzero left
    std::vector<std::string> probe_labels;
    std::vector<PiRatioEntry> ratio_table;
};

/// Mass-weighted mean of |f - f_B| over the ball (f_B the mass-weighted mean).
double mean_oscillation(const MetricMeasureSpace& space, const ScalarField& f,
                        const std::vector<Index>& ball);

/// Per-point surrogate for lip f: variation at the smallest ladder radius
/// whose punctured ball is nonempty (0 where every ladder ball is trivial).
ScalarField discrete_lip_field(const MetricMeasureSpace& space, const ScalarField& f,
                               const ScaleLadder& ladder);

/// Estimates the p-PI multiplier over all (center, ladder radius) balls and
/// all probes.  Balls with zero oscillation contribute ratio 0; a zero right
/// side with positive left side reports +inf and marks the report failed.
PiReport pi_constant_estimate(const MetricMeasureSpace& space,
                              const std::vector<ScalarField>& probes, double p,
                              double dilation, const ScaleLadder& ladder,
                              bool keep_table = false);

/// Default probe family: coordinate fields (when coords exist), distance
/// fields from a farthest-point sample, seeded random 1-Lipschitz fields,
/// and two-sided indicators across balanced articulation cuts.
std::vector<ScalarField> default_pi_probes(const MetricMeasureSpace& space,
                                           std::uint64_t seed, int random_fields = 4);

/// Chain-of-balls telescoping check along a quasiconvexified chain from x
/// to y: |f(y)-f(x)| <= |f(x) - avg(B_1)| + sum |avg(B_{i+1}) - avg(B_i)|
/// + |avg(B_k) - f(y)| with B_i = ball(p_i, lambda*r), r = d(x,y).
struct ChainOscillationReport {
    std::vector<Index> chain;
    std::vector<double> telescope_terms;  // k+1 terms as above
    double lhs = 0.0;                     // |f(y) - f(x)|
    double rhs = 0.0;                     // sum of terms
    double max_ball_gap = 0.0;            // max |avg(B_{i+1}) - avg(B_i)|
    bool holds = false;
};

ChainOscillationReport chain_oscillation_bound_check(const MetricMeasureSpace& space,
                                                     const ScalarField& f, Index x, Index y,
                                                     double lambda, double safety = 1.05);

}  // namespace mmslab
