#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <vector>

namespace mmslab {

/// Finite blow-up: the sub-space on ball(x, R * r_k) with metric d / r_k and
/// masses renormalized to total 1.  Distances are exact scalings.
struct PointedRescaling {
    MetricMeasureSpace view;
    std::vector<Index> ids;   // view index -> base point id
    Index base_in_view = 0;   // index of x inside the view
    double scale = 1.0;       // r_k
    double radius = 0.0;      // R
};

PointedRescaling rescale(const MetricMeasureSpace& space, Index x, double r_k, double R);

/// Tangent function on the view: (f(y) - f(x)) / r_k.
ScalarField tangent_function(const PointedRescaling& view, const ScalarField& f);

struct VarSandwichRow {
    double r_k = 0.0;
    double R = 0.0;
    double var_view = 0.0;      // variation at radius R in the rescaled view
    double var_original = 0.0;  // variation at radius R * r_k in the base space
    bool scale_in_window = false;
    bool ok = false;  // lip <= var <= Lip whenever the scale lies in the window
};

struct VarSandwichReport {
    double lip = 0.0;
    double Lip = 0.0;
    std::vector<VarSandwichRow> rows;
    bool all_ok = true;
    double max_identity_gap = 0.0;  // |var_view - var_original|
};

/// Checks the rescaling identity var_view(R) == var(x, R*r_k) and, for
/// scales inside the lip/Lip window, the sandwich lip <= var <= Lip.
VarSandwichReport var_sandwich_check(const MetricMeasureSpace& space, const ScalarField& f,
                                     Index x, const ScaleLadder& ladder,
                                     const ScaleWindow& window,
                                     const std::vector<double>& R_list);

/// Finite Hausdorff-approximation surrogate: greedy c-nets on both views
/// anchored at the base points, matched greedily by bottleneck cost; the
/// distortion is the worst matched-pair metric gap plus the larger
/// unmatched-cover radius.
double net_distortion(const PointedRescaling& a, const PointedRescaling& b, double c);

}  // namespace mmslab
