#include "mmslab/poincare.hpp"

#include "mmslab/lipschitz.hpp"
#include "mmslab/parallel.hpp"
#include "mmslab/quasiconvex.hpp"

#include <algorithm>
#include <cmath>

namespace mmslab {

double mean_oscillation(const MetricMeasureSpace& space, const ScalarField& f,
                        const std::vector<Index>& ball) {
    if (ball.empty()) throw InputError("mean_oscillation requires a nonempty ball");
    double m = 0.0, mf = 0.0;
    for (Index y : ball) {
        m += space.mass(y);
        mf += space.mass(y) * f.values[y];
    }
    double f_b = mf / m;
    double osc = 0.0;
    for (Index y : ball) osc += space.mass(y) * std::abs(f.values[y] - f_b);
    return osc / m;
}

ScalarField discrete_lip_field(const MetricMeasureSpace& space, const ScalarField& f,
                               const ScaleLadder& ladder) {
    const Index n = space.size();
    Vector out = Vector::Zero(n);
    parallel_for(n, [&](std::ptrdiff_t x) {
        double nearest = kInf;
        for (Index y = 0; y < n; ++y) {
            double d = space.dist(x, y);
            if (d > 0.0) nearest = std::min(nearest, d);
        }
        // smallest ladder radius whose punctured ball is nonempty
        double radius = 0.0;
        for (auto it = ladder.radii.rbegin(); it != ladder.radii.rend(); ++it)
            if (*it > nearest) {
                radius = *it;
                break;
            }
        if (radius == 0.0) return;
        double best = 0.0;
        for (Index y = 0; y < n; ++y) {
            double d = space.dist(x, y);
            if (d < radius) best = std::max(best, std::abs(f.values[y] - f.values[x]));
        }
        out[x] = best / radius;
    });
    return {std::move(out), "lip[" + f.label + "]"};
}

PiReport pi_constant_estimate(const MetricMeasureSpace& space,
                              const std::vector<ScalarField>& probes, double p,
                              double dilation, const ScaleLadder& ladder, bool keep_table) {
    if (probes.empty()) throw InputError("pi_constant_estimate needs at least one probe");
    if (!(p >= 1.0)) throw InputError("PI exponent p must be >= 1");
    if (!(dilation >= 1.0)) throw InputError("PI dilation must be >= 1");
    const Index n = space.size();
    const int np = static_cast<int>(probes.size());

    PiReport report;
    report.p = p;
    report.dilation = dilation;
    for (auto& f : probes) report.probe_labels.push_back(f.label);

    // lip surrogate per probe, then mass * lip^p per point
    Matrix lip_p(n, np);
    for (int k = 0; k < np; ++k) {
        ScalarField lf = discrete_lip_field(space, probes[k], ladder);
        for (Index i = 0; i < n; ++i)
            lip_p(i, k) = space.mass(i) * std::pow(lf.values[i], p);
    }

    struct CenterBest {
        double ratio = -1.0;
        double radius = 0.0;
        int probe = 0;
        bool failed = false;
    };
    std::vector<CenterBest> best(n);
    std::vector<std::vector<PiRatioEntry>> tables(keep_table ? n : 0);

    parallel_for(n, [&](std::ptrdiff_t x) {
        // order every point by distance to the center once; every ball and
        // dilated ball is then a prefix of this order
        Vector d = space.dists_from(x);
        std::vector<Index> order(n);
        for (Index i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](Index a, Index b) {
            return d[a] != d[b] ? d[a] < d[b] : a < b;
        });
        // prefix sums of mass, mass*f per probe, mass*lip^p per probe
        Vector pref_mass(n + 1);
        Matrix pref_mf(n + 1, np), pref_lip(n + 1, np);
        pref_mass[0] = 0.0;
        pref_mf.row(0).setZero();
        pref_lip.row(0).setZero();
        for (Index i = 0; i < n; ++i) {
            Index y = order[i];
            pref_mass[i + 1] = pref_mass[i] + space.mass(y);
            for (int k = 0; k < np; ++k) {
                pref_mf(i + 1, k) = pref_mf(i, k) + space.mass(y) * probes[k].values[y];
                pref_lip(i + 1, k) = pref_lip(i, k) + lip_p(y, k);
            }
        }
        auto prefix_below = [&](double r) {
            // count of points with d < r (order is sorted by distance)
            Index lo = 0, hi = n;
            while (lo < hi) {
                Index mid = (lo + hi) / 2;
                if (d[order[mid]] < r)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return lo;
        };
        for (double r : ladder.radii) {
            Index nb = prefix_below(r);
            if (nb == 0) continue;
            Index nlb = prefix_below(dilation * r);
            double mass_b = pref_mass[nb];
            double mass_lb = pref_mass[nlb];
            for (int k = 0; k < np; ++k) {
                double f_b = pref_mf(nb, k) / mass_b;
                double osc = 0.0;
                for (Index i = 0; i < nb; ++i) {
                    Index y = order[i];
                    osc += space.mass(y) * std::abs(probes[k].values[y] - f_b);
                }
                osc /= mass_b;
                double rhs_mean = pref_lip(nlb, k) / mass_lb;
                double rhs = r * std::pow(rhs_mean, 1.0 / p);
                double ratio;
                if (osc == 0.0)
                    ratio = 0.0;
                else if (rhs == 0.0) {
                    ratio = kInf;
                    best[x].failed = true;
                } else
                    ratio = osc / rhs;
                if (keep_table)
                    tables[x].push_back({static_cast<Index>(x), r, k, ratio});
                if (ratio > best[x].ratio) {
                    best[x].ratio = ratio;
                    best[x].radius = r;
                    best[x].probe = k;
                }
            }
        }
    });

    for (Index x = 0; x < n; ++x) {
        if (best[x].failed) report.failed = true;
        if (best[x].ratio > report.constant_estimate) {
            report.constant_estimate = best[x].ratio;
            report.worst_center = x;
            report.worst_radius = best[x].radius;
            report.worst_probe = probes[best[x].probe].label;
        }
    }
    if (keep_table)
        for (auto& t : tables)
            report.ratio_table.insert(report.ratio_table.end(), t.begin(), t.end());
    return report;
}

std::vector<ScalarField> default_pi_probes(const MetricMeasureSpace& space,
                                           std::uint64_t seed, int random_fields) {
    std::vector<ScalarField> probes;
    if (space.has_coords())
        for (Index k = 0; k < space.coord_dim(); ++k)
            probes.push_back(coordinate_field(space, k));
    for (Index z : farthest_point_sample(space, 4))
        probes.push_back(distance_field(space, z));
    for (int k = 0; k < random_fields; ++k)
        probes.push_back(random_lipschitz_field(space, derive_seed(seed, 100 + k)));
    // articulation-cut indicators witness PI degeneration across cut points
    double floor = space.uniform_step() > 0.0 ? space.uniform_step()
                                              : space.min_positive_dist();
    for (Index z : balanced_cut_points(space, 1.5 * floor))
        probes.push_back(cut_indicator_field(space, z, 1.5 * floor));
    return probes;
}

ChainOscillationReport chain_oscillation_bound_check(const MetricMeasureSpace& space,
                                                     const ScalarField& f, Index x, Index y,
                                                     double lambda, double safety) {
    space.check_point(x);
    space.check_point(y);
    if (!(lambda > 0.0)) throw InputError("chain dilation lambda must be > 0");
    double r = space.dist(x, y);
    if (!(r > 0.0)) throw InputError("chain endpoints must be distinct");

    // chain with steps < lambda * r * safety via quasiconvexification
    auto rep = quasiconvexify(space, x, y, lambda * r * safety);
    ChainOscillationReport out;
    out.chain = rep.path.vertices;

    double ball_r = lambda * r;
    std::vector<double> avg(out.chain.size());
    for (std::size_t i = 0; i < out.chain.size(); ++i) {
        auto ball = space.ball(out.chain[i], ball_r);
        double m = 0.0, mf = 0.0;
        for (Index z : ball) {
            m += space.mass(z);
            mf += space.mass(z) * f.values[z];
        }
        avg[i] = mf / m;  // ball contains its center, so m > 0
    }
    out.lhs = std::abs(f.values[y] - f.values[x]);
    out.telescope_terms.push_back(std::abs(f.values[x] - avg.front()));
    for (std::size_t i = 0; i + 1 < avg.size(); ++i) {
        double t = std::abs(avg[i + 1] - avg[i]);
        out.telescope_terms.push_back(t);
        out.max_ball_gap = std::max(out.max_ball_gap, t);
    }
    out.telescope_terms.push_back(std::abs(avg.back() - f.values[y]));
    out.rhs = 0.0;
    for (double t : out.telescope_terms) out.rhs += t;
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-15;
    return out;
}

}  // namespace mmslab
