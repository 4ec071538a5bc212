#pragma once

#include "mmslab/differentiation.hpp"
#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <string>
#include <vector>

namespace mmslab {

struct AtlasConfig {
    double dependence_tol = 1e-3;  // relative seminorm threshold
    double residual_tol = 0.25;    // relative differential-residual threshold
    double min_mass = 0.02;        // patch qualification, fraction of total mass
    double slack = 0.05;           // acceptable uncovered mass fraction
    int max_tuple = 5;             // tuple search size cap
    int max_rounds = 64;
};

struct CoordinatePatch {
    std::vector<Index> subset;  // V
    std::vector<std::string> coord_labels;
    std::vector<int> coord_indices;  // into the dictionary
    Index dimension = 0;
    double mass = 0.0;
    // per dictionary function: differential field on V
    std::vector<DifferentialFieldSummary> differentials;
    std::vector<std::string> differential_labels;
};

struct Atlas {
    std::vector<CoordinatePatch> patches;
    double uncovered_mass = 0.0;
    bool stalled = false;
    std::string stall_reason;
};

struct PatchCandidate {
    std::vector<int> tuple;  // dictionary indices
    std::vector<Index> subset;
    double mass = 0.0;
};

/// Searches dictionary tuples by increasing size (lexicographic label order
/// within a size) and returns the qualifying tuple of maximal size; ties by
/// larger patch mass, then enumeration order.  A tuple qualifies when its
/// independence set inside the region, filtered to the points where every
/// dictionary function's differential residual is <= residual_tol * LIP,
/// still holds at least min_mass of the total mass.  best_mass (if given)
/// receives the largest qualifying patch mass seen during the search.
std::optional<PatchCandidate> find_patch(const MetricMeasureSpace& space,
                                         const std::vector<ScalarField>& dictionary,
                                         const std::vector<Index>& region,
                                         const ScaleLadder& ladder, const ScaleWindow& window,
                                         const AtlasConfig& config,
                                         double* best_mass = nullptr);

/// Greedy loop: find a patch in the uncovered region, accept it only when
/// its mass is at least half of the best discoverable this round, repeat
/// until the uncovered mass drops below slack (or the search stalls).
Atlas build_structure(const MetricMeasureSpace& space,
                      const std::vector<ScalarField>& dictionary, const ScaleLadder& ladder,
                      const ScaleWindow& window, const AtlasConfig& config);

}  // namespace mmslab
