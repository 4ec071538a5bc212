#include "mmslab/blowup.hpp"

#include "mmslab/lipschitz.hpp"

#include <algorithm>
#include <cmath>

namespace mmslab {

PointedRescaling rescale(const MetricMeasureSpace& space, Index x, double r_k, double R) {
    space.check_point(x);
    if (!(r_k > 0.0)) throw InputError("rescale requires r_k > 0");
    if (!(R > 0.0)) throw InputError("rescale requires R > 0");
    std::vector<Index> ids = space.ball(x, R * r_k);
    if (ids.empty()) throw InputError("rescale: empty ball");
    const Index m = static_cast<Index>(ids.size());
    if (m > 6000) throw InputError("rescale: view too large (over 6000 points)");
    Matrix d(m, m);
    Vector mass(m);
    for (Index i = 0; i < m; ++i) {
        mass[i] = space.mass(ids[i]);
        d(i, i) = 0.0;
        for (Index j = i + 1; j < m; ++j) d(i, j) = d(j, i) = space.dist(ids[i], ids[j]) / r_k;
    }
    mass /= mass.sum();
    PointedRescaling out;
    out.view = MetricMeasureSpace::from_matrix(std::move(d), std::move(mass),
                                               space.label() + "@rescaled");
    out.ids = std::move(ids);
    out.scale = r_k;
    out.radius = R;
    out.base_in_view =
        static_cast<Index>(std::find(out.ids.begin(), out.ids.end(), x) - out.ids.begin());
    if (space.uniform_step() > 0.0) out.view.declare_step(space.uniform_step() / r_k);
    return out;
}

ScalarField tangent_function(const PointedRescaling& view, const ScalarField& f) {
    Vector g(view.ids.size());
    const double fx = f.values[view.ids[view.base_in_view]];
    for (std::size_t i = 0; i < view.ids.size(); ++i)
        g[i] = (f.values[view.ids[i]] - fx) / view.scale;
    return {std::move(g), f.label + "@tangent"};
}

VarSandwichReport var_sandwich_check(const MetricMeasureSpace& space, const ScalarField& f,
                                     Index x, const ScaleLadder& ladder,
                                     const ScaleWindow& window,
                                     const std::vector<double>& R_list) {
    VarSandwichReport report;
    report.lip = pointwise_lip(space, f, x, ladder, window);
    report.Lip = pointwise_Lip(space, f, x, ladder, window);
    for (double r_k : ladder.radii)
        for (double R : R_list) {
            VarSandwichRow row;
            row.r_k = r_k;
            row.R = R;
            PointedRescaling view = rescale(space, x, r_k, std::max(R, 1.0) * 2.0);
            ScalarField tf = tangent_function(view, f);
            row.var_view = variation(view.view, tf, view.base_in_view, R);
            row.var_original = variation(space, f, x, R * r_k);
            report.max_identity_gap =
                std::max(report.max_identity_gap, std::abs(row.var_view - row.var_original));
            double scale = R * r_k;
            row.scale_in_window =
                scale >= window.lo && scale <= window.hi &&
                std::find(ladder.radii.begin(), ladder.radii.end(), scale) != ladder.radii.end();
            if (row.scale_in_window)
                row.ok = report.lip <= row.var_original && row.var_original <= report.Lip;
            else
                row.ok = true;
            report.all_ok = report.all_ok && row.ok;
            report.rows.push_back(row);
        }
    return report;
}

double net_distortion(const PointedRescaling& a, const PointedRescaling& b, double c) {
    if (!(c > 0.0)) throw InputError("net_distortion requires c > 0");
    auto anchored_net = [&](const PointedRescaling& v) {
        std::vector<Index> all(v.view.size());
        for (Index i = 0; i < v.view.size(); ++i) all[i] = i;
        std::vector<Index> order{v.base_in_view};
        for (Index i = 0; i < v.view.size(); ++i)
            if (i != v.base_in_view) order.push_back(i);
        return greedy_separated_net_ordered(v.view, all, c, order).members;
    };
    std::vector<Index> na = anchored_net(a), nb = anchored_net(b);

    // greedy bottleneck matching anchored at the bases (net order starts there)
    std::vector<std::pair<Index, Index>> matched{{na.front(), nb.front()}};
    std::vector<char> used(nb.size(), 0);
    used[0] = 1;
    for (std::size_t i = 1; i < na.size(); ++i) {
        double best_cost = kInf;
        std::size_t best_j = nb.size();
        for (std::size_t j = 1; j < nb.size(); ++j) {
            if (used[j]) continue;
            double cost = 0.0;
            for (auto& [p, q] : matched)
                cost = std::max(cost, std::abs(a.view.dist(na[i], p) - b.view.dist(nb[j], q)));
            if (cost < best_cost) {
                best_cost = cost;
                best_j = j;
            }
        }
        if (best_j == nb.size()) break;  // b exhausted
        used[best_j] = 1;
        matched.emplace_back(na[i], nb[best_j]);
    }

    double dist = 0.0;
    for (std::size_t u = 0; u < matched.size(); ++u)
        for (std::size_t v = u + 1; v < matched.size(); ++v)
            dist = std::max(dist, std::abs(a.view.dist(matched[u].first, matched[v].first) -
                                           b.view.dist(matched[u].second, matched[v].second)));

    // unmatched members sit >= c from every matched member (c-separation),
    // so either side's leftover contributes its cover radius
    auto uncover = [&](const PointedRescaling& v, const std::vector<Index>& net,
                       auto member_of_matched) {
        double worst = 0.0;
        for (Index m : net) {
            bool is_matched = false;
            double nearest = kInf;
            for (auto& mp : matched) {
                Index mm = member_of_matched(mp);
                if (mm == m) {
                    is_matched = true;
                    break;
                }
                nearest = std::min(nearest, v.view.dist(m, mm));
            }
            if (!is_matched) worst = std::max(worst, nearest);
        }
        return worst;
    };
    double ua = uncover(a, na, [](const std::pair<Index, Index>& mp) { return mp.first; });
    double ub = uncover(b, nb, [](const std::pair<Index, Index>& mp) { return mp.second; });
    return dist + std::max(ua, ub);
}

}  // namespace mmslab
