#pragma once

#include "mmslab/types.hpp"

namespace mmslab {

/// Solution of the weighted linear Chebyshev problem
///   minimize over lambda:  max_i |b_i - A.row(i) . lambda| / d_i      (d_i > 0)
/// solved exactly as a linear program in epigraph form (two constraints per
/// row).  Among optimal lambda the one of minimal Euclidean norm is returned
/// (projection of 0 onto the optimal face), making the output deterministic.
struct MinimaxSolution {
    Vector lambda;
    double value = 0.0;   // achieved max of |residual|/d, recomputed exactly
    int iterations = 0;   // simplex pivots
};

MinimaxSolution solve_weighted_minimax(const Matrix& A, const Vector& b, const Vector& d);

/// Objective at a given lambda (exact recomputation).
double minimax_objective(const Matrix& A, const Vector& b, const Vector& d,
                         const Vector& lambda);

}  // namespace mmslab
