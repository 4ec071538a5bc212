#pragma once

#include "mmslab/fields.hpp"
#include "mmslab/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmslab {

/// N-tuple of scalar fields on one space, with cached global Lipschitz
/// constants (dependence thresholds are relative to the largest one).
struct CoordinateTuple {
    std::vector<ScalarField> fields;
    std::vector<double> lips;

    static CoordinateTuple make(const MetricMeasureSpace& space,
                                std::vector<ScalarField> fields);
    Index dim() const { return static_cast<Index>(fields.size()); }
    double max_lip() const;
    std::string label() const;
};

struct DependenceCertificate {
    Vector lambda;        // unit vector, first nonzero component positive
    double seminorm = 0.0;
    bool dependent = false;
    bool degenerate = false;  // all fields constant near the point
};

/// Rows (f(y)-f(x)) / r_min(y) over the window balls around x; the local
/// seminorm of lambda is max_y |lambda . row_y|.  Exposed for tests.
Matrix dependence_rows(const MetricMeasureSpace& space, const CoordinateTuple& tuple, Index x,
                       const ScaleLadder& ladder, const ScaleWindow& window);

/// Discrete pointwise Lip of the combination lambda . tuple at x.
double local_seminorm(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                      const Vector& lambda, Index x, const ScaleLadder& ladder,
                      const ScaleWindow& window);

/// Approximately minimizes the local seminorm over the unit sphere:
/// smallest-singular-vector initialization polished by deterministic
/// great-circle descent.  dependent := seminorm <= tol * max_i LIP(f_i).
DependenceCertificate dependence_test(const MetricMeasureSpace& space,
                                      const CoordinateTuple& tuple, Index x,
                                      const ScaleLadder& ladder, const ScaleWindow& window,
                                      double tol);

/// Points where the tuple is not dependent, plus their mass fraction.
struct IndependenceSet {
    std::vector<Index> points;
    double mass_fraction = 0.0;
};

IndependenceSet independence_set(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                                 const ScaleLadder& ladder, const ScaleWindow& window,
                                 double tol);

struct DifferentialAtPoint {
    Vector df;
    double residual = 0.0;
    double radius_used = 0.0;
    bool degenerate = false;  // all coordinate differences vanish on the ball
};

/// Chebyshev-optimal differential at x: minimizes over lambda the max over
/// y in B(x,radius)\{x} of |f(y)-f(x) - lambda.(coords(y)-coords(x))| / d(x,y),
/// solved exactly as an LP; minimal-norm tie-break.
DifferentialAtPoint solve_differential(const MetricMeasureSpace& space, const ScalarField& f,
                                       const CoordinateTuple& coords, Index x, double radius);

struct DifferentialFieldSummary {
    std::vector<Index> points;
    std::vector<DifferentialAtPoint> values;
    double mass_fraction_below_tol = 0.0;
    double max_df_shift = 0.0;  // uniqueness diagnostic under radius perturbation
};

/// Differential at every region point; radius defaults per point to the
/// smallest ladder radius with at least 3N ball points.  The summary reports
/// the mass fraction with residual <= tol * LIP(f) and re-solves at the next
/// ladder radius to gauge df stability.
DifferentialFieldSummary differential_field(const MetricMeasureSpace& space,
                                            const ScalarField& f,
                                            const CoordinateTuple& coords,
                                            const std::vector<Index>& region,
                                            const ScaleLadder& ladder, double tol,
                                            bool uniqueness_diagnostic = false);

/// Brute-force sphere-grid minimizer of the local seminorm for N <= 3
/// (hierarchically refined); the independent test oracle.
double sphere_grid_min_seminorm(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                                Index x, const ScaleLadder& ladder, const ScaleWindow& window,
                                int levels = 3, int base_resolution = 120);

}  // namespace mmslab
