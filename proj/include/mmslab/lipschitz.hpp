#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <vector>

namespace mmslab {

/// Per-point pointwise Lipschitz data over a scale ladder.
struct LipschitzProfile {
    std::vector<double> radii;  // ladder radii the columns refer to
    Matrix var;                 // n x |radii|, variation per (point, radius)
    Vector lip;                 // min of var over window radii (skipping empty balls)
    Vector Lip;                 // max of var over window radii
    Vector ratio;               // Lip/lip; 1 when both 0; +inf when lip = 0 < Lip
    std::vector<bool> degenerate;  // no nonempty punctured window ball at the point
    double global_lip = 0.0;

    /// Mass-weighted fraction of points with ratio <= K.
    double ratio_mass_fraction(const MetricMeasureSpace& space, double K) const;
};

/// Exact max over pairs of |f(p)-f(q)| / d(p,q); 0 when fewer than 2 points.
double global_lip(const MetricMeasureSpace& space, const ScalarField& f);

/// var_{x,r} f = sup { |f(y)-f(x)| / r : y in B(x,r) }; 0 on trivial balls.
/// Note the divisor is r, not d(x,y).
double variation(const MetricMeasureSpace& space, const ScalarField& f, Index x, double r);

/// Variation at several radii in one sweep; radii must be positive.
/// Returns values aligned with `radii`.
std::vector<double> variation_profile(const MetricMeasureSpace& space, const ScalarField& f,
                                      Index x, const std::vector<double>& radii);

/// Variation of several fields at several radii around one point, sharing a
/// single neighbor sweep.  Returns #fields x #radii; min_nbr_dist (if given)
/// receives the smallest positive neighbor distance (inf if isolated), which
/// tells which radii have empty punctured balls.
Matrix variation_profile_multi(const MetricMeasureSpace& space,
                               const std::vector<const Vector*>& fields, Index x,
                               const std::vector<double>& radii,
                               double* min_nbr_dist = nullptr);

/// min (lip) over ladder radii inside the window, skipping radii whose
/// punctured ball is empty.  Degenerate (all empty) reports 0.
double pointwise_lip(const MetricMeasureSpace& space, const ScalarField& f, Index x,
                     const ScaleLadder& ladder, const ScaleWindow& window);

/// max (Lip) over the same radii.
double pointwise_Lip(const MetricMeasureSpace& space, const ScalarField& f, Index x,
                     const ScaleLadder& ladder, const ScaleWindow& window);

/// Full profile for every point (parallel over points).
LipschitzProfile liplip_ratio_field(const MetricMeasureSpace& space, const ScalarField& f,
                                    const ScaleLadder& ladder, const ScaleWindow& window);

}  // namespace mmslab
