#include "mmslab/differentiation.hpp"

#include "mmslab/lipschitz.hpp"
#include "mmslab/minimax.hpp"
#include "mmslab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace mmslab {

CoordinateTuple CoordinateTuple::make(const MetricMeasureSpace& space,
                                      std::vector<ScalarField> fields) {
    if (fields.empty()) throw InputError("coordinate tuple needs at least one field");
    for (auto& f : fields)
        if (f.values.size() != space.size())
            throw InputError("tuple field '" + f.label + "' does not match the space");
    CoordinateTuple t;
    t.fields = std::move(fields);
    for (auto& f : t.fields) t.lips.push_back(global_lip(space, f));
    return t;
}

double CoordinateTuple::max_lip() const {
    return lips.empty() ? 0.0 : *std::max_element(lips.begin(), lips.end());
}

std::string CoordinateTuple::label() const {
    std::string out = "(";
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i].label;
    return out + ")";
}

Matrix dependence_rows(const MetricMeasureSpace& space, const CoordinateTuple& tuple, Index x,
                       const ScaleLadder& ladder, const ScaleWindow& window) {
    space.check_point(x);
    std::vector<double> radii = ladder.window(window.lo, window.hi);
    const Index N = tuple.dim();
    if (radii.empty()) return Matrix(0, N);
    std::sort(radii.begin(), radii.end());
    auto nbrs = space.sorted_neighbors(x, radii.back());
    Matrix rows(static_cast<Index>(nbrs.size()), N);
    Index out = 0;
    std::size_t k = 0;
    for (auto& [d, y] : nbrs) {
        while (k < radii.size() && radii[k] <= d) ++k;
        if (k == radii.size()) break;  // beyond every window radius
        double r = radii[k];           // smallest window radius containing y
        for (Index j = 0; j < N; ++j)
            rows(out, j) = (tuple.fields[j].values[y] - tuple.fields[j].values[x]) / r;
        ++out;
    }
    rows.conservativeResize(out, N);
    return rows;
}

namespace {

double rows_objective(const Matrix& rows, const Vector& lambda) {
    if (rows.rows() == 0) return 0.0;
    return (rows * lambda).cwiseAbs().maxCoeff();
}

/// Minimizes theta -> max_i |c_i cos(theta) + s_i sin(theta)| over
/// [lo, hi] by grid search plus golden-section refinement.
std::pair<double, double> envelope_min(const Vector& c, const Vector& s, double lo, double hi,
                                       int grid) {
    auto eval = [&](double th) {
        return (c * std::cos(th) + s * std::sin(th)).cwiseAbs().maxCoeff();
    };
    double best_th = lo, best = eval(lo);
    double step = (hi - lo) / grid;
    for (int k = 1; k <= grid; ++k) {
        double th = lo + k * step;
        double v = eval(th);
        if (v < best) {
            best = v;
            best_th = th;
        }
    }
    double a = best_th - step, b = best_th + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval(x2);
        }
    }
    double th = f1 < f2 ? x1 : x2;
    double v = eval(th);
    if (v < best) {
        best = v;
        best_th = th;
    }
    return {best_th, best};
}

Vector canonical_sign(Vector v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            break;
        }
    }
    return v;
}

/// Smallest right singular vector of rows via the N x N Gram matrix.
Vector smallest_singular_vector(const Matrix& rows) {
    Matrix gram = rows.transpose() * rows;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    return es.eigenvectors().col(0);  // eigenvalues ascending
}

}  // namespace

double local_seminorm(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                      const Vector& lambda, Index x, const ScaleLadder& ladder,
                      const ScaleWindow& window) {
    if (lambda.size() != tuple.dim())
        throw InputError("local_seminorm: lambda dimension mismatch");
    Matrix rows = dependence_rows(space, tuple, x, ladder, window);
    return rows_objective(rows, lambda);
}

DependenceCertificate dependence_test(const MetricMeasureSpace& space,
                                      const CoordinateTuple& tuple, Index x,
                                      const ScaleLadder& ladder, const ScaleWindow& window,
                                      double tol) {
    const Index N = tuple.dim();
    Matrix rows = dependence_rows(space, tuple, x, ladder, window);
    DependenceCertificate cert;
    double row_scale = rows.rows() ? rows.cwiseAbs().maxCoeff() : 0.0;
    if (rows.rows() == 0 || row_scale == 0.0) {
        cert.lambda = Vector::Unit(N, 0);
        cert.seminorm = 0.0;
        cert.dependent = true;
        cert.degenerate = true;
        return cert;
    }
    if (N == 1) {
        cert.lambda = Vector::Ones(1);
        cert.seminorm = rows.cwiseAbs().maxCoeff();
    } else if (N == 2) {
        // the unit sphere is a single circle; minimize the envelope directly
        auto [th, v] = envelope_min(rows.col(0), rows.col(1), 0.0, M_PI, 256);
        cert.lambda = Vector(2);
        cert.lambda << std::cos(th), std::sin(th);
        cert.seminorm = v;
    } else {
        Vector lambda = smallest_singular_vector(rows);
        double value = rows_objective(rows, lambda);
        for (int sweep = 0; sweep < 6; ++sweep) {
            double before = value;
            for (Index axis = 0; axis < N; ++axis) {
                Vector u = Vector::Unit(N, axis);
                u -= u.dot(lambda) * lambda;
                double nu = u.norm();
                if (nu < 1e-10) continue;
                u /= nu;
                Vector c = rows * lambda, s = rows * u;
                auto [th, v] = envelope_min(c, s, -M_PI / 2.0, M_PI / 2.0, 64);
                if (v < value) {
                    lambda = std::cos(th) * lambda + std::sin(th) * u;
                    lambda.normalize();
                    value = v;
                }
            }
            if (before - value <= 1e-14 * (1.0 + before)) break;
        }
        cert.lambda = lambda;
        cert.seminorm = rows_objective(rows, lambda);
    }
    cert.lambda = canonical_sign(cert.lambda);
    cert.dependent = cert.seminorm <= tol * tuple.max_lip();
    return cert;
}

IndependenceSet independence_set(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                                 const ScaleLadder& ladder, const ScaleWindow& window,
                                 double tol) {
    const Index n = space.size();
    std::vector<char> indep(n, 0);
    parallel_for(n, [&](std::ptrdiff_t x) {
        auto cert = dependence_test(space, tuple, x, ladder, window, tol);
        indep[x] = cert.dependent ? 0 : 1;
    });
    IndependenceSet out;
    double m = 0.0;
    for (Index x = 0; x < n; ++x)
        if (indep[x]) {
            out.points.push_back(x);
            m += space.mass(x);
        }
    out.mass_fraction = m / space.total_mass();
    return out;
}

DifferentialAtPoint solve_differential(const MetricMeasureSpace& space, const ScalarField& f,
                                       const CoordinateTuple& coords, Index x, double radius) {
    space.check_point(x);
    if (!(radius > 0.0)) throw InputError("solve_differential requires radius > 0");
    const Index N = coords.dim();
    std::vector<Index> ball;
    for (Index y : space.ball(x, radius))
        if (y != x) ball.push_back(y);
    if (static_cast<Index>(ball.size()) < N + 1)
        throw InputError("solve_differential needs at least N+1 points besides x in the ball");
    const Index m = static_cast<Index>(ball.size());
    Matrix A(m, N);
    Vector b(m), d(m);
    for (Index i = 0; i < m; ++i) {
        Index y = ball[i];
        for (Index j = 0; j < N; ++j)
            A(i, j) = coords.fields[j].values[y] - coords.fields[j].values[x];
        b[i] = f.values[y] - f.values[x];
        d[i] = space.dist(x, y);
    }
    DifferentialAtPoint out;
    out.radius_used = radius;
    // degenerate when the coordinate differences span fewer than N
    // directions on this ball (identical or vanishing coordinates)
    Eigen::SelfAdjointEigenSolver<Matrix> es(A.transpose() * A);
    double top = es.eigenvalues()[N - 1];
    Index rank = 0;
    for (Index k = 0; k < N; ++k)
        if (top > 0.0 && es.eigenvalues()[k] > 1e-18 * top) ++rank;
    out.degenerate = rank < N;
    MinimaxSolution sol = solve_weighted_minimax(A, b, d);
    out.df = sol.lambda;
    out.residual = sol.value;
    return out;
}

DifferentialFieldSummary differential_field(const MetricMeasureSpace& space,
                                            const ScalarField& f,
                                            const CoordinateTuple& coords,
                                            const std::vector<Index>& region,
                                            const ScaleLadder& ladder, double tol,
                                            bool uniqueness_diagnostic) {
    if (region.empty()) throw InputError("differential_field needs a nonempty region");
    const Index N = coords.dim();
    DifferentialFieldSummary summary;
    summary.points = region;
    summary.values.resize(region.size());
    const double f_lip = global_lip(space, f);
    std::vector<double> shifts(region.size(), 0.0);

    // ladder radii ascending for the per-point radius rule
    std::vector<double> asc(ladder.radii.rbegin(), ladder.radii.rend());
    parallel_for(static_cast<std::ptrdiff_t>(region.size()), [&](std::ptrdiff_t k) {
        Index x = region[k];
        auto nbrs = space.sorted_neighbors(x, asc.back() * (1.0 + 1e-12));
        double radius = 0.0, radius_next = 0.0;
        for (double r : asc) {
            Index count = 0;
            for (auto& [dd, y] : nbrs)
                if (dd < r)
                    ++count;
                else
                    break;
            if (count >= 3 * N) {
                if (radius == 0.0)
                    radius = r;
                else if (radius_next == 0.0 && r > radius)
                    radius_next = r;
            }
        }
        if (radius == 0.0) radius = asc.back();
        DifferentialAtPoint dp;
        Index usable = 0;
        for (auto& [dd, y] : nbrs)
            if (dd < radius) ++usable;
        if (usable < N + 1) {
            dp.df = Vector::Zero(N);
            dp.degenerate = true;
            dp.radius_used = radius;
            dp.residual = usable == 0 ? 0.0 : variation(space, f, x, radius);
        } else {
            dp = solve_differential(space, f, coords, x, radius);
            if (uniqueness_diagnostic && radius_next > 0.0) {
                auto dp2 = solve_differential(space, f, coords, x, radius_next);
                shifts[k] = (dp2.df - dp.df).cwiseAbs().maxCoeff();
            }
        }
        summary.values[k] = std::move(dp);
    });

    double mass_ok = 0.0, mass_total = 0.0;
    for (std::size_t k = 0; k < region.size(); ++k) {
        mass_total += space.mass(region[k]);
        if (summary.values[k].residual <= tol * std::max(f_lip, 1e-300))
            mass_ok += space.mass(region[k]);
        summary.max_df_shift = std::max(summary.max_df_shift, shifts[k]);
    }
    summary.mass_fraction_below_tol = mass_total > 0.0 ? mass_ok / mass_total : 0.0;
    return summary;
}

double sphere_grid_min_seminorm(const MetricMeasureSpace& space, const CoordinateTuple& tuple,
                                Index x, const ScaleLadder& ladder, const ScaleWindow& window,
                                int levels, int base_resolution) {
    const Index N = tuple.dim();
    if (N > 3) throw InputError("sphere_grid_min_seminorm supports N <= 3");
    Matrix rows = dependence_rows(space, tuple, x, ladder, window);
    if (rows.rows() == 0) return 0.0;
    if (N == 1) return rows.cwiseAbs().maxCoeff();
    if (N == 2) {
        double lo = 0.0, hi = M_PI, best = kInf;
        for (int lv = 0; lv < levels; ++lv) {
            double step = (hi - lo) / base_resolution;
            double best_th = lo;
            best = kInf;
            for (int k = 0; k <= base_resolution; ++k) {
                double th = lo + k * step;
                Vector lam(2);
                lam << std::cos(th), std::sin(th);
                double v = rows_objective(rows, lam);
                if (v < best) {
                    best = v;
                    best_th = th;
                }
            }
            lo = best_th - step;
            hi = best_th + step;
        }
        return best;
    }
    // N == 3: hemisphere in spherical coordinates, hierarchically refined
    double plo = 0.0, phi = M_PI / 2.0, qlo = 0.0, qhi = 2.0 * M_PI, best = kInf;
    for (int lv = 0; lv < levels; ++lv) {
        int res = base_resolution;
        double pstep = (phi - plo) / res, qstep = (qhi - qlo) / (2 * res);
        double bp = plo, bq = qlo;
        best = kInf;
        for (int i = 0; i <= res; ++i)
            for (int j = 0; j <= 2 * res; ++j) {
                double p = plo + i * pstep, q = qlo + j * qstep;
                Vector lam(3);
                lam << std::sin(p) * std::cos(q), std::sin(p) * std::sin(q), std::cos(p);
                double v = rows_objective(rows, lam);
                if (v < best) {
                    best = v;
                    bp = p;
                    bq = q;
                }
            }
        plo = bp - pstep;
        phi = bp + pstep;
        qlo = bq - qstep;
        qhi = bq + qstep;
    }
    return best;
}

}  // namespace mmslab
