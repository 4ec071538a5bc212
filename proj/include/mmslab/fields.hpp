#pragma once

#include "mmslab/space.hpp"

#include <string>
#include <vector>

namespace mmslab {

/// A real value per space point; the finite sample of a Lipschitz function.
struct ScalarField {
    Vector values;
    std::string label;

    double operator()(Index i) const { return values[i]; }
    Index size() const { return values.size(); }
};

ScalarField constant_field(const MetricMeasureSpace& space, double value,
                           std::string label = "const");

/// Coordinate function x -> coords(x)[axis]; requires a coordinate backend.
ScalarField coordinate_field(const MetricMeasureSpace& space, Index axis);

/// Linear combination of coordinate functions, sum_i coeffs[i] * x_i.
ScalarField linear_field(const MetricMeasureSpace& space, const Vector& coeffs);

/// Distance function d(., z).
ScalarField distance_field(const MetricMeasureSpace& space, Index z);

/// McShane extension of prescribed values on anchors:
/// f(x) = min_i (values[i] + d(x, anchors[i])).  Always 1-Lipschitz.
ScalarField mcshane_field(const MetricMeasureSpace& space, const std::vector<Index>& anchors,
                          const std::vector<double>& values, std::string label);

/// Seeded random 1-Lipschitz field: McShane interpolation of uniform random
/// values (range ~ diameter) on k random anchor points.
ScalarField random_lipschitz_field(const MetricMeasureSpace& space, std::uint64_t seed,
                                   int anchors = 4);

/// Deterministic farthest-point sample of k anchor ids (first = point 0).
std::vector<Index> farthest_point_sample(const MetricMeasureSpace& space, int k);

/// Balanced articulation cuts of the eps-connectivity graph: points whose
/// removal splits the space into components each holding >= min_side_fraction
/// of the mass.  Used to build cut-indicator probes.  At most max_cuts are
/// returned, most balanced first.
std::vector<Index> balanced_cut_points(const MetricMeasureSpace& space, double eps,
                                       double min_side_fraction = 0.1, int max_cuts = 4);

/// +/-1 two-sided indicator across the cut point z (0 at z itself):
/// +1 on the largest component of the eps-graph minus z, -1 elsewhere.
ScalarField cut_indicator_field(const MetricMeasureSpace& space, Index z, double eps);

}  // namespace mmslab
