#pragma once

#include "mmslab/space.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mmslab {

/// Deterministic generator description.  `kind` selects the construction;
/// the other fields are kind-specific (unused ones are ignored).
struct GeneratorSpec {
    std::string kind;  // euclidean_grid | snowflake | glued | heisenberg_word |
                       // laakso_like | sierpinski_gasket | cusp_pair
    int n = 0;         // grid points per axis / cusp side
    int dim = 1;       // grid dimension (1..3)
    double alpha = 0.5;  // snowflake exponent, in (0,1)
    int level = 2;       // laakso_like / sierpinski_gasket recursion depth
    int radius = 4;      // heisenberg word-ball radius
    std::uint64_t seed = 1;  // randomized function probes only, never geometry
    std::shared_ptr<GeneratorSpec> base;            // snowflake base
    std::shared_ptr<GeneratorSpec> side_a, side_b;  // glued sides
    std::vector<std::pair<Index, Index>> glue_pairs;
};

MetricMeasureSpace generate(const GeneratorSpec& spec);

/// n^dim lattice on [0,1]^dim, Euclidean metric, unit masses.
MetricMeasureSpace euclidean_grid(int n, int dim);

/// Same point set and masses, distances d^alpha (alpha in (0,1)).
MetricMeasureSpace snowflake(const MetricMeasureSpace& base, double alpha);

/// Disjoint union with the quotient path metric through the glue pairs
/// (a_i on side A identified with b_i on side B at distance 0).
MetricMeasureSpace glued(const MetricMeasureSpace& a, const MetricMeasureSpace& b,
                         const std::vector<std::pair<Index, Index>>& pairs);

/// Integer Heisenberg group elements with word length <= radius (generators
/// x, y and inverses); the metric is the exact word metric d(g,h) = |g^-1 h|.
MetricMeasureSpace heisenberg_word(int radius);

/// Exact word-ball sizes |B(r)| (closed balls) for r = 0..radius.
std::vector<std::int64_t> heisenberg_ball_sizes(int radius);

/// Level-k Laakso-style graph: each level replaces every edge by a
/// four-segment path whose middle two segments are doubled into two
/// parallel branches.  Shortest-path metric, unit masses.
MetricMeasureSpace laakso_like(int level);

/// Level-k Sierpinski gasket graph (three corner-glued copies per level),
/// shortest-path metric with edge length 2^-level, unit masses.
MetricMeasureSpace sierpinski_gasket(int level);

/// Two n x n unit grids glued at one corner point.
MetricMeasureSpace cusp_pair(int n);

}  // namespace mmslab
