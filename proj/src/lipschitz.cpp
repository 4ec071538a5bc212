#include "mmslab/lipschitz.hpp"

#include "mmslab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace mmslab {

double global_lip(const MetricMeasureSpace& space, const ScalarField& f) {
    const Index n = space.size();
    if (n < 2) return 0.0;
    std::vector<double> per_point(n, 0.0);
    parallel_for(n, [&](std::ptrdiff_t i) {
        double best = 0.0;
        for (Index j = 0; j < n; ++j) {
            if (j == static_cast<Index>(i)) continue;
            best = std::max(best, std::abs(f.values[j] - f.values[i]) / space.dist(i, j));
        }
        per_point[i] = best;
    });
    return *std::max_element(per_point.begin(), per_point.end());
}

double variation(const MetricMeasureSpace& space, const ScalarField& f, Index x, double r) {
    if (!(r > 0.0)) throw InputError("variation requires r > 0");
    space.check_point(x);
    double sup = 0.0;
    const double fx = f.values[x];
    for (Index y = 0; y < space.size(); ++y)
        if (space.dist(x, y) < r) sup = std::max(sup, std::abs(f.values[y] - fx) / r);
    return sup;
}

std::vector<double> variation_profile(const MetricMeasureSpace& space, const ScalarField& f,
                                      Index x, const std::vector<double>& radii) {
    space.check_point(x);
    for (double r : radii)
        if (!(r > 0.0)) throw InputError("variation requires r > 0");
    // sweep neighbors in increasing distance, tracking the running max |df|
    double r_cap = *std::max_element(radii.begin(), radii.end());
    auto nbrs = space.sorted_neighbors(x, r_cap);
    // radii ascending with original slots
    std::vector<std::pair<double, std::size_t>> order(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) order[k] = {radii[k], k};
    std::sort(order.begin(), order.end());
    std::vector<double> out(radii.size(), 0.0);
    const double fx = f.values[x];
    double run_max = 0.0;
    std::size_t j = 0;
    for (auto& [r, slot] : order) {
        while (j < nbrs.size() && nbrs[j].first < r) {
            run_max = std::max(run_max, std::abs(f.values[nbrs[j].second] - fx));
            ++j;
        }
        out[slot] = run_max == 0.0 ? 0.0 : run_max / r;
    }
    return out;
}

Matrix variation_profile_multi(const MetricMeasureSpace& space,
                               const std::vector<const Vector*>& fields, Index x,
                               const std::vector<double>& radii, double* min_nbr_dist) {
    space.check_point(x);
    for (double r : radii)
        if (!(r > 0.0)) throw InputError("variation requires r > 0");
    double r_cap = *std::max_element(radii.begin(), radii.end());
    auto nbrs = space.sorted_neighbors(x, r_cap);
    if (min_nbr_dist) *min_nbr_dist = nbrs.empty() ? kInf : nbrs.front().first;
    std::vector<std::pair<double, std::size_t>> order(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) order[k] = {radii[k], k};
    std::sort(order.begin(), order.end());
    Matrix out = Matrix::Zero(static_cast<Index>(fields.size()),
                              static_cast<Index>(radii.size()));
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
        const Vector& f = *fields[fi];
        const double fx = f[x];
        double run_max = 0.0;
        std::size_t j = 0;
        for (auto& [r, slot] : order) {
            while (j < nbrs.size() && nbrs[j].first < r) {
                run_max = std::max(run_max, std::abs(f[nbrs[j].second] - fx));
                ++j;
            }
            out(fi, slot) = run_max == 0.0 ? 0.0 : run_max / r;
        }
    }
    return out;
}

namespace {

/// (lip, Lip, degenerate) over window radii with nonempty punctured balls.
std::array<double, 2> lip_pair(const MetricMeasureSpace& space, const ScalarField& f, Index x,
                               const ScaleLadder& ladder, const ScaleWindow& window,
                               bool* degenerate) {
    std::vector<double> radii = ladder.window(window.lo, window.hi);
    double lo = kInf, hi = 0.0;
    bool any = false;
    if (!radii.empty()) {
        auto vars = variation_profile(space, f, x, radii);
        auto nbrs = space.sorted_neighbors(x, *std::max_element(radii.begin(), radii.end()));
        for (std::size_t k = 0; k < radii.size(); ++k) {
            // skip radii whose punctured ball is empty
            bool nonempty = !nbrs.empty() && nbrs.front().first < radii[k];
            if (!nonempty) continue;
            any = true;
            lo = std::min(lo, vars[k]);
            hi = std::max(hi, vars[k]);
        }
    }
    if (degenerate) *degenerate = !any;
    if (!any) return {0.0, 0.0};
    return {lo, hi};
}

}  // namespace

double pointwise_lip(const MetricMeasureSpace& space, const ScalarField& f, Index x,
                     const ScaleLadder& ladder, const ScaleWindow& window) {
    return lip_pair(space, f, x, ladder, window, nullptr)[0];
}

double pointwise_Lip(const MetricMeasureSpace& space, const ScalarField& f, Index x,
                     const ScaleLadder& ladder, const ScaleWindow& window) {
    return lip_pair(space, f, x, ladder, window, nullptr)[1];
}

LipschitzProfile liplip_ratio_field(const MetricMeasureSpace& space, const ScalarField& f,
                                    const ScaleLadder& ladder, const ScaleWindow& window) {
    const Index n = space.size();
    LipschitzProfile p;
    p.radii = ladder.radii;
    p.var.resize(n, static_cast<Index>(ladder.radii.size()));
    p.lip.resize(n);
    p.Lip.resize(n);
    p.ratio.resize(n);
    p.degenerate.assign(n, false);
    std::vector<char> degen(n, 0);
    parallel_for(n, [&](std::ptrdiff_t x) {
        auto vars = variation_profile(space, f, x, ladder.radii);
        for (std::size_t k = 0; k < vars.size(); ++k) p.var(x, k) = vars[k];
        bool d = false;
        auto [lo, hi] = lip_pair(space, f, x, ladder, window, &d);
        degen[x] = d ? 1 : 0;
        p.lip[x] = lo;
        p.Lip[x] = hi;
        if (lo == 0.0 && hi == 0.0)
            p.ratio[x] = 1.0;
        else if (lo == 0.0)
            p.ratio[x] = kInf;
        else
            p.ratio[x] = hi / lo;
    });
    for (Index x = 0; x < n; ++x) p.degenerate[x] = degen[x] != 0;
    p.global_lip = global_lip(space, f);
    return p;
}

double LipschitzProfile::ratio_mass_fraction(const MetricMeasureSpace& space, double K) const {
    double m = 0.0;
    for (Index x = 0; x < space.size(); ++x)
        if (ratio[x] <= K) m += space.mass(x);
    return m / space.total_mass();
}

}  // namespace mmslab
