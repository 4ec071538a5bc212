#include "mmslab/quasiconvex.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mmslab {

void EpsPath::check(const MetricMeasureSpace& space) const {
    double sum = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        double d = space.dist(vertices[i - 1], vertices[i]);
        if (!(d < eps))
            throw ComputeError("eps-path invariant violated: step " + std::to_string(i) +
                               " has d >= eps");
        sum += d;
    }
    if (sum != length) throw ComputeError("eps-path length does not equal recomputed sum");
}

std::size_t EpsGraph::edge_count() const {
    std::size_t total = 0;
    for (auto& nb : adj) total += nb.size();
    return total / 2;
}

EpsGraph eps_graph(const MetricMeasureSpace& space, double eps) {
    if (!(eps > 0.0)) throw InputError("eps_graph requires eps > 0");
    EpsGraph g;
    g.eps = eps;
    g.adj.resize(space.size());
    for (Index a = 0; a < space.size(); ++a)
        for (Index b = a + 1; b < space.size(); ++b) {
            double d = space.dist(a, b);
            if (d > 0.0 && d < eps) {
                g.adj[a].emplace_back(b, d);
                g.adj[b].emplace_back(a, d);
            }
        }
    return g;
}

namespace {

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<Index> parent;
    Index first_target = -1;  // first settled target, -1 if none reached
};

/// Multi-source Dijkstra; if `targets` is nonempty, stops once the best
/// target is settled.  Ties in distance settle in ascending id order.
DijkstraResult dijkstra(const EpsGraph& graph, const std::vector<Index>& sources,
                        const std::vector<char>* targets) {
    const Index n = static_cast<Index>(graph.adj.size());
    DijkstraResult res;
    res.dist.assign(n, kInf);
    res.parent.assign(n, -1);
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Index s : sources) {
        res.dist[s] = 0.0;
        heap.emplace(0.0, s);
    }
    std::vector<char> settled(n, 0);
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        if (targets && (*targets)[u]) {
            res.first_target = u;
            return res;
        }
        for (auto& [v, w] : graph.adj[u]) {
            double nd = du + w;
            if (nd < res.dist[v]) {
                res.dist[v] = nd;
                res.parent[v] = u;
                heap.emplace(nd, v);
            }
        }
    }
    return res;
}

}  // namespace

ScalarField infimal_eps_path_length(const MetricMeasureSpace& space, const EpsGraph& graph,
                                    const std::vector<Index>& sources,
                                    std::vector<Index>* parents) {
    if (sources.empty()) throw InputError("infimal_eps_path_length needs a nonempty source set");
    for (Index s : sources) space.check_point(s);
    DijkstraResult res = dijkstra(graph, sources, nullptr);
    if (parents) *parents = res.parent;
    Vector u(space.size());
    for (Index i = 0; i < space.size(); ++i) u[i] = res.dist[i];
    return {std::move(u), "u"};
}

ScalarField truncate_field(const ScalarField& u, double cap) {
    ScalarField out = u;
    for (Index i = 0; i < out.values.size(); ++i) out.values[i] = std::min(out.values[i], cap);
    out.label = u.label + "_trunc";
    return out;
}

EpsPath half_gap_path(const MetricMeasureSpace& space, const EpsGraph& graph, Index p, Index q,
                      double ball_fraction) {
    space.check_point(p);
    space.check_point(q);
    double r = space.dist(p, q);
    if (!(r > 0.0)) throw InputError("half_gap_path requires d(p,q) > 0");
    std::vector<Index> sources = space.ball(p, ball_fraction * r);
    std::vector<Index> target_ids = space.ball(q, ball_fraction * r);
    std::vector<char> targets(space.size(), 0);
    for (Index t : target_ids) targets[t] = 1;
    for (Index s : sources)
        if (targets[s]) return {graph.eps, {}, 0.0};  // balls overlap
    DijkstraResult res = dijkstra(graph, sources, &targets);
    if (res.first_target < 0)
        throw ComputeError("no eps-path between quarter balls of " + std::to_string(p) +
                           " and " + std::to_string(q) + " at eps " + std::to_string(graph.eps));
    EpsPath path;
    path.eps = graph.eps;
    for (Index v = res.first_target; v >= 0; v = res.parent[v]) path.vertices.push_back(v);
    std::reverse(path.vertices.begin(), path.vertices.end());
    for (std::size_t i = 1; i < path.vertices.size(); ++i)
        path.length += space.dist(path.vertices[i - 1], path.vertices[i]);
    return path;
}

QuasiconvexifyReport quasiconvexify(const MetricMeasureSpace& space, Index x, Index x_prime,
                                    double eps, int max_rounds, double ball_fraction) {
    EpsGraph graph = eps_graph(space, eps);
    return quasiconvexify(space, graph, x, x_prime, max_rounds, ball_fraction);
}

QuasiconvexifyReport quasiconvexify(const MetricMeasureSpace& space, const EpsGraph& graph,
                                    Index x, Index x_prime, int max_rounds,
                                    double ball_fraction) {
    space.check_point(x);
    space.check_point(x_prime);
    if (x == x_prime) throw InputError("quasiconvexify requires distinct endpoints");
    const double eps = graph.eps;

    // resolution tree: every gap is either bridged (single edge) or split
    // into (left gap, path piece, right gap)
    struct Gap {
        Index a, b;
        bool bridged = false;
        std::vector<Index> piece;  // vertices a'..b' of the filling path
        int left = -1, right = -1;
    };
    std::vector<Gap> gaps{{x, x_prime}};
    std::vector<int> open{0};
    QuasiconvexifyReport report;

    while (!open.empty()) {
        if (report.rounds++ >= max_rounds)
            throw ComputeError("quasiconvexify did not close all gaps within " +
                               std::to_string(max_rounds) + " rounds");
        std::vector<int> next;
        for (int gi : open) {
            Index a = gaps[gi].a, b = gaps[gi].b;
            double g = space.dist(a, b);
            if (g < eps) {
                gaps[gi].bridged = true;
                continue;
            }
            EpsPath piece = half_gap_path(space, graph, a, b, ball_fraction);
            if (piece.vertices.empty())
                throw ComputeError("half_gap_path returned an empty piece for an open gap");
            Index a2 = piece.vertices.front(), b2 = piece.vertices.back();
            gaps[gi].piece = piece.vertices;
            if (a2 != a) {
                gaps.push_back({a, a2});
                gaps[gi].left = static_cast<int>(gaps.size()) - 1;
                next.push_back(gaps[gi].left);
            }
            if (b2 != b) {
                gaps.push_back({b2, b});
                gaps[gi].right = static_cast<int>(gaps.size()) - 1;
                next.push_back(gaps[gi].right);
            }
        }
        double total = 0.0;
        for (int gi : next) total += space.dist(gaps[gi].a, gaps[gi].b);
        if (!report.round_gap_totals.empty()) {
            double prev = report.round_gap_totals.back();
            if (total > 0.5 * prev * (1.0 + 1e-12))
                throw ComputeError("gap total failed to halve between rounds");
        }
        report.round_gap_totals.push_back(total);
        open = std::move(next);
    }

    // assemble the vertex sequence x ... x'
    std::vector<Index> verts{x};
    auto emit = [&](Index v) {
        if (verts.back() != v) verts.push_back(v);
    };
    auto assemble = [&](auto&& self, int gi) -> void {
        const Gap& gap = gaps[gi];
        if (gap.bridged) {
            emit(gap.b);
            return;
        }
        if (gap.left >= 0) self(self, gap.left);
        for (Index v : gap.piece) emit(v);
        if (gap.right >= 0) self(self, gap.right);
        emit(gap.b);
    };
    assemble(assemble, 0);

    report.path.eps = eps;
    report.path.vertices = std::move(verts);
    for (std::size_t i = 1; i < report.path.vertices.size(); ++i)
        report.path.length +=
            space.dist(report.path.vertices[i - 1], report.path.vertices[i]);
    report.path.check(space);
    return report;
}

QuasiconvexityEstimate quasiconvexity_constant(const MetricMeasureSpace& space, int num_pairs,
                                               double eps, std::uint64_t seed, int max_rounds) {
    if (space.size() < 2) throw InputError("need at least 2 points to sample pairs");
    EpsGraph graph = eps_graph(space, eps);
    SplitMix64 rng(derive_seed(seed, 0x9c));
    QuasiconvexityEstimate est;
    while (static_cast<int>(est.pairs.size()) < num_pairs) {
        Index a = static_cast<Index>(rng.next_below(space.size()));
        Index b = static_cast<Index>(rng.next_below(space.size()));
        if (a == b || !(space.dist(a, b) > 0.0)) continue;
        est.pairs.emplace_back(a, b);
    }
    for (auto& [a, b] : est.pairs) {
        try {
            auto rep = quasiconvexify(space, graph, a, b, max_rounds, 0.25);
            double ratio = rep.path.length / space.dist(a, b);
            est.ratios.push_back(ratio);
            est.constant = std::max(est.constant, ratio);
        } catch (const ComputeError&) {
            est.ratios.push_back(kInf);
            est.constant = kInf;
            if (est.failed_a < 0) {
                est.failed_a = a;
                est.failed_b = b;
            }
        }
    }
    return est;
}

}  // namespace mmslab
