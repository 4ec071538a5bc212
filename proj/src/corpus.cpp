#include "mmslab/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace mmslab {

MetricMeasureSpace euclidean_grid(int n, int dim) {
    if (n < 1) throw InputError("euclidean_grid needs n >= 1");
    if (dim < 1 || dim > 3) throw InputError("euclidean_grid supports dim 1..3");
    Index total = 1;
    for (int k = 0; k < dim; ++k) total *= n;
    Matrix coords(total, dim);
    std::array<int, 3> idx{0, 0, 0};
    double h = n > 1 ? 1.0 / (n - 1) : 0.0;
    for (Index p = 0; p < total; ++p) {
        for (int k = 0; k < dim; ++k) coords(p, k) = idx[k] * h;
        for (int k = dim - 1; k >= 0; --k) {
            if (++idx[k] < n) break;
            idx[k] = 0;
        }
    }
    auto s = MetricMeasureSpace::from_coords(std::move(coords), Vector(),
                                             "grid:" + std::to_string(n) + "x" +
                                                 std::to_string(dim));
    if (n > 1) s.declare_step(h);
    return s;
}

MetricMeasureSpace snowflake(const MetricMeasureSpace& base, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("snowflake alpha must be in (0,1)");
    std::string label = "snowflake:" + base.label();
    if (base.has_coords()) {
        // compose exponents so nested snowflakes stay coordinate-backed
        return MetricMeasureSpace::from_coords(base.coords(), base.masses(), std::move(label),
                                               alpha);
    }
    const Index n = base.size();
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = std::pow(base.dist(i, j), alpha);
    }
    return MetricMeasureSpace::from_matrix(std::move(d), base.masses(), std::move(label));
}

MetricMeasureSpace glued(const MetricMeasureSpace& a, const MetricMeasureSpace& b,
                         const std::vector<std::pair<Index, Index>>& pairs) {
    if (pairs.empty()) throw InputError("glued needs at least one glue pair");
    const Index na = a.size(), nb = b.size();
    const int K = static_cast<int>(pairs.size());
    for (auto& [p, q] : pairs) {
        a.check_point(p);
        b.check_point(q);
    }
    // portal-to-portal distances inside the quotient (Floyd-Warshall over portals)
    Matrix portal(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            portal(i, j) = std::min(a.dist(pairs[i].first, pairs[j].first),
                                    b.dist(pairs[i].second, pairs[j].second));
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                portal(i, j) = std::min(portal(i, j), portal(i, k) + portal(k, j));

    // quotient ids: all of A, then B points that are not glued
    std::vector<Index> b_id(nb, -1);
    for (auto& [p, q] : pairs) b_id[q] = p;
    std::vector<Index> b_extra;
    for (Index q = 0; q < nb; ++q)
        if (b_id[q] < 0) {
            b_id[q] = na + static_cast<Index>(b_extra.size());
            b_extra.push_back(q);
        }
    const Index n = na + static_cast<Index>(b_extra.size());

    auto da_portal = [&](Index x, int i) { return a.dist(x, pairs[i].first); };
    auto db_portal = [&](Index y, int i) { return b.dist(y, pairs[i].second); };
    auto through = [&](auto&& dx, auto&& dy, Index x, Index y) {
        double best = kInf;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                best = std::min(best, dx(x, i) + portal(i, j) + dy(y, j));
        return best;
    };

    Matrix d = Matrix::Zero(n, n);
    for (Index x = 0; x < na; ++x)
        for (Index y = x + 1; y < na; ++y)
            d(x, y) = d(y, x) = std::min(a.dist(x, y), through(da_portal, da_portal, x, y));
    for (std::size_t u = 0; u < b_extra.size(); ++u)
        for (std::size_t v = u + 1; v < b_extra.size(); ++v) {
            double val = std::min(b.dist(b_extra[u], b_extra[v]),
                                  through(db_portal, db_portal, b_extra[u], b_extra[v]));
            d(na + u, na + v) = d(na + v, na + u) = val;
        }
    for (Index x = 0; x < na; ++x)
        for (std::size_t v = 0; v < b_extra.size(); ++v) {
            double val = through(da_portal, db_portal, x, b_extra[v]);
            d(x, na + v) = d(na + v, x) = val;
        }

    Vector mass(n);
    for (Index x = 0; x < na; ++x) mass[x] = a.mass(x);
    for (std::size_t v = 0; v < b_extra.size(); ++v) mass[na + v] = b.mass(b_extra[v]);
    for (auto& [p, q] : pairs) mass[p] += b.mass(q);

    auto s = MetricMeasureSpace::from_matrix(std::move(d), std::move(mass),
                                             "glued:" + a.label() + "+" + b.label());
    if (a.uniform_step() > 0.0 && b.uniform_step() > 0.0)
        s.declare_step(std::min(a.uniform_step(), b.uniform_step()));
    return s;
}

namespace {

struct HeisenbergElement {
    int a, b, c;
};

inline HeisenbergElement h_mul(const HeisenbergElement& g, const HeisenbergElement& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
}

inline HeisenbergElement h_inv(const HeisenbergElement& g) {
    return {-g.a, -g.b, -g.c + g.a * g.b};
}

inline std::uint64_t h_key(const HeisenbergElement& g) {
    return (static_cast<std::uint64_t>(g.a + (1 << 19)) << 44) |
           (static_cast<std::uint64_t>(g.b + (1 << 19)) << 24) |
           static_cast<std::uint64_t>(g.c + (1 << 23));
}

/// BFS word lengths out to `depth` in the Cayley graph of the integer
/// Heisenberg group with generators x^+-, y^+-.
std::unordered_map<std::uint64_t, int> heisenberg_lengths(int depth,
                                                          std::vector<HeisenbergElement>* order) {
    const std::array<HeisenbergElement, 4> gens{
        HeisenbergElement{1, 0, 0}, HeisenbergElement{-1, 0, 0},
        HeisenbergElement{0, 1, 0}, HeisenbergElement{0, -1, 0}};
    std::unordered_map<std::uint64_t, int> len;
    std::queue<HeisenbergElement> q;
    HeisenbergElement id{0, 0, 0};
    len[h_key(id)] = 0;
    if (order) order->push_back(id);
    q.push(id);
    while (!q.empty()) {
        HeisenbergElement g = q.front();
        q.pop();
        int lg = len[h_key(g)];
        if (lg >= depth) continue;
        for (const auto& s : gens) {
            HeisenbergElement h = h_mul(g, s);
            auto [it, fresh] = len.try_emplace(h_key(h), lg + 1);
            if (fresh) {
                if (order) order->push_back(h);
                q.push(h);
            }
        }
    }
    return len;
}

}  // namespace

std::vector<std::int64_t> heisenberg_ball_sizes(int radius) {
    if (radius < 0) throw InputError("heisenberg radius must be >= 0");
    auto len = heisenberg_lengths(radius, nullptr);
    std::vector<std::int64_t> sizes(radius + 1, 0);
    for (auto& [key, l] : len) ++sizes[l];
    for (int r = 1; r <= radius; ++r) sizes[r] += sizes[r - 1];
    return sizes;
}

MetricMeasureSpace heisenberg_word(int radius) {
    if (radius < 1 || radius > 10)
        throw InputError("heisenberg_word radius must be in 1..10");
    std::vector<HeisenbergElement> elems;
    auto len_r = heisenberg_lengths(radius, &elems);
    // deterministic ids: sort by (word length, a, b, c)
    std::sort(elems.begin(), elems.end(), [&](const auto& g, const auto& h) {
        return std::make_tuple(len_r[h_key(g)], g.a, g.b, g.c) <
               std::make_tuple(len_r[h_key(h)], h.a, h.b, h.c);
    });
    auto len_2r = heisenberg_lengths(2 * radius, nullptr);
    const Index n = static_cast<Index>(elems.size());
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        HeisenbergElement gi = h_inv(elems[i]);
        for (Index j = i + 1; j < n; ++j) {
            int w = len_2r.at(h_key(h_mul(gi, elems[j])));
            d(i, j) = d(j, i) = static_cast<double>(w);
        }
    }
    auto s = MetricMeasureSpace::from_matrix(std::move(d), Vector(),
                                             "heisenberg:" + std::to_string(radius));
    s.declare_step(1.0);
    return s;
}

namespace {

/// All-pairs shortest paths on a weighted graph (Dijkstra per source).
Matrix graph_metric(Index n, const std::vector<std::vector<std::pair<Index, double>>>& adj) {
    Matrix d = Matrix::Constant(n, n, kInf);
    for (Index s = 0; s < n; ++s) {
        using Item = std::pair<double, Index>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        d(s, s) = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (du > d(s, u)) continue;
            for (auto& [v, w] : adj[u]) {
                double nd = du + w;
                if (nd < d(s, v)) {
                    d(s, v) = nd;
                    heap.emplace(nd, v);
                }
            }
        }
    }
    return d;
}

}  // namespace

MetricMeasureSpace laakso_like(int level) {
    if (level < 0 || level > 4) throw InputError("laakso_like level must be in 0..4");
    struct Edge {
        Index u, v;
        double len;
    };
    std::vector<Edge> edges{{0, 1, 1.0}};
    Index next = 2;
    for (int l = 0; l < level; ++l) {
        std::vector<Edge> out;
        out.reserve(edges.size() * 6);
        for (const Edge& e : edges) {
            double q = e.len / 4.0;
            Index a = next++, up = next++, down = next++, b = next++;
            out.push_back({e.u, a, q});
            out.push_back({a, up, q});
            out.push_back({up, b, q});
            out.push_back({a, down, q});
            out.push_back({down, b, q});
            out.push_back({b, e.v, q});
        }
        edges = std::move(out);
    }
    std::vector<std::vector<std::pair<Index, double>>> adj(next);
    for (const Edge& e : edges) {
        adj[e.u].emplace_back(e.v, e.len);
        adj[e.v].emplace_back(e.u, e.len);
    }
    auto s = MetricMeasureSpace::from_matrix(graph_metric(next, adj), Vector(),
                                             "laakso:" + std::to_string(level));
    s.declare_step(std::pow(0.25, level));
    return s;
}

MetricMeasureSpace sierpinski_gasket(int level) {
    if (level < 0 || level > 6) throw InputError("sierpinski_gasket level must be in 0..6");
    // integer coordinates in the basis u = (1,0), v = (1/2, sqrt(3)/2),
    // scaled so the smallest edges are unit steps
    using IPt = std::pair<int, int>;
    std::map<IPt, Index> ids;
    std::vector<IPt> pts;
    auto id_of = [&](IPt p) {
        auto [it, fresh] = ids.try_emplace(p, static_cast<Index>(pts.size()));
        if (fresh) pts.push_back(p);
        return it->second;
    };
    std::vector<std::pair<Index, Index>> edges;
    int side = 1 << level;
    auto recurse = [&](auto&& self, int l, IPt p1, IPt p2, IPt p3) -> void {
        if (l == 0) {
            Index a = id_of(p1), b = id_of(p2), c = id_of(p3);
            edges.emplace_back(a, b);
            edges.emplace_back(b, c);
            edges.emplace_back(c, a);
            return;
        }
        auto mid = [](IPt a, IPt b) { return IPt{(a.first + b.first) / 2, (a.second + b.second) / 2}; };
        IPt m12 = mid(p1, p2), m23 = mid(p2, p3), m31 = mid(p3, p1);
        self(self, l - 1, p1, m12, m31);
        self(self, l - 1, m12, p2, m23);
        self(self, l - 1, m31, m23, p3);
    };
    recurse(recurse, level, IPt{0, 0}, IPt{side, 0}, IPt{0, side});
    const Index n = static_cast<Index>(pts.size());
    double step = 1.0 / side;
    std::vector<std::vector<std::pair<Index, double>>> adj(n);
    for (auto& [u, v] : edges) {
        adj[u].emplace_back(v, step);
        adj[v].emplace_back(u, step);
    }
    auto s = MetricMeasureSpace::from_matrix(graph_metric(n, adj), Vector(),
                                             "gasket:" + std::to_string(level));
    s.declare_step(step);
    return s;
}

MetricMeasureSpace cusp_pair(int n) {
    if (n < 2) throw InputError("cusp_pair needs n >= 2");
    MetricMeasureSpace a = euclidean_grid(n, 2);
    MetricMeasureSpace b = euclidean_grid(n, 2);
    // glue A's (1,1) corner to B's (0,0) corner
    Index corner_a = static_cast<Index>(n) * n - 1;
    auto s = glued(a, b, {{corner_a, 0}});
    return s;
}

MetricMeasureSpace generate(const GeneratorSpec& spec) {
    if (spec.kind == "euclidean_grid") return euclidean_grid(spec.n, spec.dim);
    if (spec.kind == "snowflake") {
        MetricMeasureSpace base = spec.base ? generate(*spec.base)
                                            : euclidean_grid(spec.n, spec.dim);
        return snowflake(base, spec.alpha);
    }
    if (spec.kind == "glued") {
        if (!spec.side_a || !spec.side_b)
            throw InputError("glued generator needs side_a and side_b specs");
        return glued(generate(*spec.side_a), generate(*spec.side_b), spec.glue_pairs);
    }
    if (spec.kind == "heisenberg_word") return heisenberg_word(spec.radius);
    if (spec.kind == "laakso_like") return laakso_like(spec.level);
    if (spec.kind == "sierpinski_gasket") return sierpinski_gasket(spec.level);
    if (spec.kind == "cusp_pair") return cusp_pair(spec.n);
    throw InputError("unknown generator kind '" + spec.kind + "'");
}

}  // namespace mmslab
