#include "mmslab/minimax.hpp"

#include <algorithm>
#include <cmath>

namespace mmslab {

double minimax_objective(const Matrix& A, const Vector& b, const Vector& d,
                         const Vector& lambda) {
    double worst = 0.0;
    for (Index i = 0; i < A.rows(); ++i)
        worst = std::max(worst, std::abs(b[i] - A.row(i).dot(lambda)) / d[i]);
    return worst;
}

namespace {

/// Primal simplex on the epigraph LP
///   min t  s.t.  +-(h_i - G_i . lambda) <= t,  lambda = lp - lm,  lp,lm,t,s >= 0
/// with rows pre-normalized by d (t-coefficients are -1).  Returns lambda and
/// basic t value.
struct SimplexResult {
    Vector lambda;
    double t = 0.0;
    int iterations = 0;
};

SimplexResult epigraph_simplex(const Matrix& G, const Vector& h) {
    const Index m = G.rows();
    const Index N = G.cols();
    const Index rows = 2 * m;
    const Index tcol = 2 * N;
    const Index cols = 2 * N + 1 + rows;  // lp, lm, t, slacks
    Matrix T = Matrix::Zero(rows, cols + 1);
    for (Index i = 0; i < m; ++i) {
        T.block(i, 0, 1, N) = G.row(i);
        T.block(i, N, 1, N) = -G.row(i);
        T(i, tcol) = -1.0;
        T(i, tcol + 1 + i) = 1.0;
        T(i, cols) = h[i];
        T.block(m + i, 0, 1, N) = -G.row(i);
        T.block(m + i, N, 1, N) = G.row(i);
        T(m + i, tcol) = -1.0;
        T(m + i, tcol + 1 + m + i) = 1.0;
        T(m + i, cols) = -h[i];
    }
    std::vector<Index> basic(rows);
    for (Index i = 0; i < rows; ++i) basic[i] = tcol + 1 + i;

    const double scale = 1.0 + h.cwiseAbs().maxCoeff() + G.cwiseAbs().maxCoeff();
    const double piv_tol = 1e-11 * scale;

    auto pivot = [&](Index pr, Index pc) {
        T.row(pr) /= T(pr, pc);
        for (Index i = 0; i < rows; ++i) {
            if (i == pr) continue;
            double f = T(i, pc);
            if (f != 0.0) T.row(i) -= f * T.row(pr);
        }
        basic[pr] = pc;
    };

    // one feasibility pivot: bring t into the row with the most negative rhs
    // (all rhs ratios against the -1 t-column), after which rhs >= 0
    Index worst_row = -1;
    double worst = 0.0;
    for (Index i = 0; i < rows; ++i)
        if (T(i, cols) < worst) {
            worst = T(i, cols);
            worst_row = i;
        }
    if (worst_row >= 0) pivot(worst_row, tcol);

    // reduced costs for objective c = e_t
    Vector zrow = Vector::Zero(cols);
    auto rebuild_zrow = [&] {
        zrow.setZero();
        for (Index i = 0; i < rows; ++i)
            if (basic[i] == tcol) zrow = T.row(i).head(cols);
        zrow[tcol] -= 1.0;
        for (Index i = 0; i < rows; ++i) zrow[basic[i]] = 0.0;
    };
    rebuild_zrow();

    SimplexResult res;
    const int bland_after = static_cast<int>(20 * (rows + N));
    const int max_iter = static_cast<int>(2000 + 200 * (rows + N));
    while (true) {
        // entering column: reduced cost z_j - c_j > 0 improves the minimum
        Index enter = -1;
        if (res.iterations < bland_after) {
            double best = 1e-9 * scale;
            for (Index j = 0; j < cols; ++j)
                if (zrow[j] > best) {
                    best = zrow[j];
                    enter = j;
                }
        } else {
            for (Index j = 0; j < cols; ++j)
                if (zrow[j] > 1e-9 * scale) {
                    enter = j;
                    break;
                }
        }
        if (enter < 0) break;
        Index leave = -1;
        double best_ratio = kInf;
        for (Index i = 0; i < rows; ++i) {
            if (T(i, enter) <= piv_tol) continue;
            double ratio = T(i, cols) / T(i, enter);
            if (ratio < best_ratio - 1e-15 * scale ||
                (ratio < best_ratio + 1e-15 * scale && leave >= 0 &&
                 basic[i] < basic[leave])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw ComputeError("minimax LP reported unbounded (cannot happen)");
        pivot(leave, enter);
        rebuild_zrow();
        if (++res.iterations > max_iter)
            throw ComputeError("minimax LP exceeded the iteration cap");
    }

    Vector x = Vector::Zero(cols);
    for (Index i = 0; i < rows; ++i) x[basic[i]] = T(i, cols);
    res.lambda = x.head(N) - x.segment(N, N);
    res.t = x[tcol];
    return res;
}

/// Projection of 0 onto { lambda : C lambda <= e } by Hildreth coordinate
/// ascent on the dual.  C rows with zero norm are skipped (their constraints
/// are satisfied by construction).
Vector min_norm_point(const Matrix& C, const Vector& e, Vector start) {
    const Index m = C.rows();
    Vector norms(m);
    for (Index i = 0; i < m; ++i) norms[i] = C.row(i).squaredNorm();
    Vector z = Vector::Zero(m);
    Vector lambda = Vector::Zero(C.cols());
    const double tol = 1e-16 * (1.0 + e.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double moved = 0.0;
        for (Index i = 0; i < m; ++i) {
            if (norms[i] < 1e-300) continue;
            double w = C.row(i).dot(lambda) - e[i];
            double delta = w / norms[i];
            double zi = std::max(0.0, z[i] + delta);
            double step = zi - z[i];
            if (step != 0.0) {
                lambda -= step * C.row(i).transpose();
                z[i] = zi;
                moved = std::max(moved, std::abs(step) * std::sqrt(norms[i]));
            }
        }
        if (moved < tol) break;
    }
    (void)start;
    return lambda;
}

}  // namespace

MinimaxSolution solve_weighted_minimax(const Matrix& A, const Vector& b, const Vector& d) {
    const Index m = A.rows();
    const Index N = A.cols();
    if (b.size() != m || d.size() != m)
        throw InputError("solve_weighted_minimax: inconsistent dimensions");
    MinimaxSolution sol;
    if (m == 0 || N == 0) {
        sol.lambda = Vector::Zero(N);
        sol.value = m == 0 ? 0.0 : b.cwiseAbs().cwiseQuotient(d).maxCoeff();
        return sol;
    }
    for (Index i = 0; i < m; ++i)
        if (!(d[i] > 0.0)) throw InputError("solve_weighted_minimax: weights must be positive");

    Matrix G(m, N);
    Vector h(m);
    for (Index i = 0; i < m; ++i) {
        G.row(i) = A.row(i) / d[i];
        h[i] = b[i] / d[i];
    }
    SimplexResult lp = epigraph_simplex(G, h);
    sol.iterations = lp.iterations;

    // deterministic tie-break: minimal Euclidean norm over the optimal face
    double slack = lp.t * 1e-12 + 1e-14 * (1.0 + h.cwiseAbs().maxCoeff());
    Matrix C(2 * m, N);
    Vector e(2 * m);
    C.topRows(m) = G;
    C.bottomRows(m) = -G;
    e.head(m) = h.array() + (lp.t + slack);
    e.tail(m) = -h.array() + (lp.t + slack);
    sol.lambda = min_norm_point(C, e, lp.lambda);

    double polished = minimax_objective(A, b, d, sol.lambda);
    double at_vertex = minimax_objective(A, b, d, lp.lambda);
    // the polished point may sit up to `slack` above t*; beyond that fall
    // back to the simplex vertex
    if (polished <= at_vertex + 2.0 * slack) {
        sol.value = polished;
    } else {
        sol.lambda = lp.lambda;
        sol.value = at_vertex;
    }
    return sol;
}

}  // namespace mmslab
