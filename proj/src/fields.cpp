#include "mmslab/fields.hpp"

#include <algorithm>
#include <queue>

namespace mmslab {

ScalarField constant_field(const MetricMeasureSpace& space, double value, std::string label) {
    return {Vector::Constant(space.size(), value), std::move(label)};
}

ScalarField coordinate_field(const MetricMeasureSpace& space, Index axis) {
    if (!space.has_coords()) throw InputError("space has no coordinates");
    if (axis < 0 || axis >= space.coord_dim()) throw InputError("coordinate axis out of range");
    return {space.coords().col(axis), "coord:" + std::to_string(axis)};
}

ScalarField linear_field(const MetricMeasureSpace& space, const Vector& coeffs) {
    if (!space.has_coords()) throw InputError("space has no coordinates");
    if (coeffs.size() != space.coord_dim())
        throw InputError("linear coefficient count does not match coordinate dimension");
    std::string label = "linear:";
    for (Index i = 0; i < coeffs.size(); ++i)
        label += (i ? "," : "") + std::to_string(coeffs[i]);
    return {space.coords() * coeffs, std::move(label)};
}

ScalarField distance_field(const MetricMeasureSpace& space, Index z) {
    space.check_point(z);
    return {space.dists_from(z), "dist:" + std::to_string(z)};
}

ScalarField mcshane_field(const MetricMeasureSpace& space, const std::vector<Index>& anchors,
                          const std::vector<double>& values, std::string label) {
    if (anchors.empty() || anchors.size() != values.size())
        throw InputError("mcshane_field needs matching nonempty anchors and values");
    Vector f = Vector::Constant(space.size(), kInf);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        space.check_point(anchors[i]);
        for (Index x = 0; x < space.size(); ++x)
            f[x] = std::min(f[x], values[i] + space.dist(x, anchors[i]));
    }
    return {std::move(f), std::move(label)};
}

ScalarField random_lipschitz_field(const MetricMeasureSpace& space, std::uint64_t seed,
                                   int anchors) {
    SplitMix64 rng(seed);
    const Index n = space.size();
    anchors = std::min<int>(anchors, static_cast<int>(n));
    std::vector<Index> ids;
    while (static_cast<int>(ids.size()) < anchors) {
        Index c = static_cast<Index>(rng.next_below(n));
        if (std::find(ids.begin(), ids.end(), c) == ids.end()) ids.push_back(c);
    }
    double range = std::max(space.diameter(), 1e-12);
    std::vector<double> vals(ids.size());
    for (auto& v : vals) v = rng.next_double() * range;
    return mcshane_field(space, ids, vals, "rand:" + std::to_string(seed));
}

std::vector<Index> farthest_point_sample(const MetricMeasureSpace& space, int k) {
    const Index n = space.size();
    k = std::min<int>(k, static_cast<int>(n));
    std::vector<Index> out;
    if (k <= 0) return out;
    out.push_back(0);
    Vector nearest = space.dists_from(0);
    while (static_cast<int>(out.size()) < k) {
        Index best = 0;
        for (Index i = 1; i < n; ++i)
            if (nearest[i] > nearest[best]) best = i;
        out.push_back(best);
        Vector d = space.dists_from(best);
        nearest = nearest.cwiseMin(d);
    }
    return out;
}

namespace {

std::vector<std::vector<Index>> eps_adjacency(const MetricMeasureSpace& space, double eps) {
    const Index n = space.size();
    std::vector<std::vector<Index>> adj(n);
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b) {
            double d = space.dist(a, b);
            if (d > 0.0 && d < eps) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
    return adj;
}

/// Components after deleting `skip` (-1 deletes nothing); label per point,
/// -1 for the deleted point.
std::vector<int> components_without(const std::vector<std::vector<Index>>& adj, Index skip) {
    const Index n = static_cast<Index>(adj.size());
    std::vector<int> comp(n, -2);
    if (skip >= 0) comp[skip] = -1;
    int label = 0;
    for (Index s = 0; s < n; ++s) {
        if (comp[s] != -2) continue;
        comp[s] = label;
        std::queue<Index> q;
        q.push(s);
        while (!q.empty()) {
            Index u = q.front();
            q.pop();
            for (Index v : adj[u])
                if (comp[v] == -2) {
                    comp[v] = label;
                    q.push(v);
                }
        }
        ++label;
    }
    return comp;
}

/// Articulation points (iterative Tarjan lowlink).
std::vector<Index> articulation_points(const std::vector<std::vector<Index>>& adj) {
    const Index n = static_cast<Index>(adj.size());
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Index> parent(n, -1);
    std::vector<bool> is_art(n, false);
    int timer = 0;
    for (Index root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        // (node, next-neighbor-slot)
        std::vector<std::pair<Index, std::size_t>> stack{{root, 0}};
        disc[root] = low[root] = timer++;
        Index root_children = 0;
        while (!stack.empty()) {
            auto& [u, slot] = stack.back();
            if (slot < adj[u].size()) {
                Index v = adj[u][slot++];
                if (disc[v] == -1) {
                    parent[v] = u;
                    if (u == root) ++root_children;
                    disc[v] = low[v] = timer++;
                    stack.emplace_back(v, 0);
                } else if (v != parent[u]) {
                    low[u] = std::min(low[u], disc[v]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    Index p = stack.back().first;
                    low[p] = std::min(low[p], low[u]);
                    if (p != root && low[u] >= disc[p]) is_art[p] = true;
                }
            }
        }
        if (root_children > 1) is_art[root] = true;
    }
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i)
        if (is_art[i]) out.push_back(i);
    return out;
}

std::vector<double> component_masses(const MetricMeasureSpace& space,
                                     const std::vector<int>& comp) {
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<double> cmass(std::max(ncomp, 1), 0.0);
    for (Index i = 0; i < space.size(); ++i)
        if (comp[i] >= 0) cmass[comp[i]] += space.mass(i);
    return cmass;
}

}  // namespace

std::vector<Index> balanced_cut_points(const MetricMeasureSpace& space, double eps,
                                       double min_side_fraction, int max_cuts) {
    auto adj = eps_adjacency(space, eps);
    // (imbalance, id) over articulation points with two heavy sides
    std::vector<std::pair<double, Index>> cuts;
    for (Index z : articulation_points(adj)) {
        std::vector<double> cmass = component_masses(space, components_without(adj, z));
        std::sort(cmass.rbegin(), cmass.rend());
        double second = cmass.size() > 1 ? cmass[1] : 0.0;
        if (second < min_side_fraction * space.total_mass()) continue;
        cuts.emplace_back(cmass[0] - second, z);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Index> out;
    for (auto& [imb, z] : cuts) {
        out.push_back(z);
        if (static_cast<int>(out.size()) >= max_cuts) break;
    }
    return out;
}

ScalarField cut_indicator_field(const MetricMeasureSpace& space, Index z, double eps) {
    space.check_point(z);
    auto adj = eps_adjacency(space, eps);
    std::vector<int> comp = components_without(adj, z);
    std::vector<double> cmass = component_masses(space, comp);
    int big = static_cast<int>(std::max_element(cmass.begin(), cmass.end()) - cmass.begin());
    Vector f(space.size());
    for (Index i = 0; i < space.size(); ++i)
        f[i] = comp[i] < 0 ? 0.0 : (comp[i] == big ? 1.0 : -1.0);
    return {std::move(f), "cut:" + std::to_string(z)};
}

}  // namespace mmslab
