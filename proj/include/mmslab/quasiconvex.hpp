#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <vector>

namespace mmslab {

/// Point sequence with consecutive gaps < eps; length is the sum of
/// consecutive distances.
struct EpsPath {
    double eps = 0.0;
    std::vector<Index> vertices;
    double length = 0.0;

    /// Recomputes the invariants against a space; throws on violation.
    void check(const MetricMeasureSpace& space) const;
};

/// Undirected graph with edge (a,b) iff 0 < d(a,b) < eps, weighted by d.
struct EpsGraph {
    double eps = 0.0;
    std::vector<std::vector<std::pair<Index, double>>> adj;

    std::size_t edge_count() const;
};

EpsGraph eps_graph(const MetricMeasureSpace& space, double eps);

/// Multi-source shortest-path distance in the eps-graph from `sources`
/// (sources get 0, unreachable points +inf).  `parents` (if given) receives
/// the predecessor of each settled point (-1 for sources/unreachable).
ScalarField infimal_eps_path_length(const MetricMeasureSpace& space, const EpsGraph& graph,
                                    const std::vector<Index>& sources,
                                    std::vector<Index>* parents = nullptr);

/// Truncation u_A = min(u, A).
ScalarField truncate_field(const ScalarField& u, double cap);

/// Shortest eps-path from ball(p, frac*r) to ball(q, frac*r), r = d(p,q):
/// multi-source Dijkstra, target = argmin of u over the q-side ball (ties by
/// id).  Overlapping balls give the empty path.  Throws ComputeError when no
/// eps-path reaches the target ball.
EpsPath half_gap_path(const MetricMeasureSpace& space, const EpsGraph& graph, Index p, Index q,
                      double ball_fraction = 0.25);

/// Diagnostics of the recursive gap-filling.
struct QuasiconvexifyReport {
    EpsPath path;
    std::vector<double> round_gap_totals;  // total open gap after each round
    int rounds = 0;
};

/// Recursive gap-filling between x and x': apply half_gap_path to every open
/// gap, bridge gaps below eps with a single edge, and concatenate.  The total
/// gap halves every round (checked); failure to connect raises ComputeError.
QuasiconvexifyReport quasiconvexify(const MetricMeasureSpace& space, Index x, Index x_prime,
                                    double eps, int max_rounds = 64,
                                    double ball_fraction = 0.25);

/// Variant reusing a prebuilt eps-graph (eps is taken from the graph).
QuasiconvexifyReport quasiconvexify(const MetricMeasureSpace& space, const EpsGraph& graph,
                                    Index x, Index x_prime, int max_rounds = 64,
                                    double ball_fraction = 0.25);

/// Max over sampled pairs of quasiconvexified length / distance; pairs are
/// seeded deterministically.  Unreachable pairs report +inf.
struct QuasiconvexityEstimate {
    double constant = 0.0;
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<double> ratios;
    Index failed_a = -1, failed_b = -1;  // first unreachable pair, if any
};

QuasiconvexityEstimate quasiconvexity_constant(const MetricMeasureSpace& space,
                                               int num_pairs, double eps, std::uint64_t seed,
                                               int max_rounds = 64);

}  // namespace mmslab
