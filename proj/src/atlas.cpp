#include "mmslab/atlas.hpp"

#include "mmslab/lipschitz.hpp"
#include "mmslab/parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace mmslab {

namespace {

double mass_of(const MetricMeasureSpace& space, const std::vector<Index>& pts) {
    double m = 0.0;
    for (Index x : pts) m += space.mass(x);
    return m;
}

/// Subsets of {0..n-1} of the given size in lexicographic order.
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    if (size > n) return;
    while (true) {
        fn(idx);
        int k = size - 1;
        while (k >= 0 && idx[k] == n - size + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::optional<PatchCandidate> find_patch(const MetricMeasureSpace& space,
                                         const std::vector<ScalarField>& dictionary,
                                         const std::vector<Index>& region,
                                         const ScaleLadder& ladder, const ScaleWindow& window,
                                         const AtlasConfig& config, double* best_mass) {
    if (region.empty() || mass_of(space, region) <= 0.0)
        throw InputError("find_patch requires a region of positive mass");
    const int nd = static_cast<int>(dictionary.size());
    // dictionary order: lexicographic by label
    std::vector<int> order(nd);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return dictionary[a].label < dictionary[b].label; });
    std::vector<double> dict_lips(nd);
    for (int i = 0; i < nd; ++i) dict_lips[i] = global_lip(space, dictionary[i]);

    std::optional<PatchCandidate> best;
    double discoverable = 0.0;
    const double min_mass_abs = config.min_mass * space.total_mass();

    for (int size = 1; size <= std::min(config.max_tuple, nd); ++size) {
        for_each_subset(nd, size, [&](const std::vector<int>& pick) {
            std::vector<int> tuple_ids;
            std::vector<ScalarField> fields;
            for (int k : pick) {
                tuple_ids.push_back(order[k]);
                fields.push_back(dictionary[order[k]]);
            }
            CoordinateTuple tuple = CoordinateTuple::make(space, fields);
            // independence inside the region
            std::vector<char> indep(region.size(), 0);
            parallel_for(static_cast<std::ptrdiff_t>(region.size()), [&](std::ptrdiff_t k) {
                auto cert = dependence_test(space, tuple, region[k], ladder, window,
                                            config.dependence_tol);
                indep[k] = cert.dependent ? 0 : 1;
            });
            std::vector<Index> ind_pts;
            for (std::size_t k = 0; k < region.size(); ++k)
                if (indep[k]) ind_pts.push_back(region[k]);
            if (mass_of(space, ind_pts) < min_mass_abs) return;
            // keep only points where every dictionary function fits to
            // first order through this tuple
            std::vector<char> good(ind_pts.size(), 1);
            for (int g = 0; g < nd; ++g) {
                auto df = differential_field(space, dictionary[g], tuple, ind_pts, ladder,
                                             config.residual_tol);
                for (std::size_t k = 0; k < ind_pts.size(); ++k) {
                    double thr = config.residual_tol * std::max(dict_lips[g], 1e-300);
                    if (df.values[k].degenerate || df.values[k].residual > thr) good[k] = 0;
                }
            }
            PatchCandidate cand;
            cand.tuple = tuple_ids;
            for (std::size_t k = 0; k < ind_pts.size(); ++k)
                if (good[k]) cand.subset.push_back(ind_pts[k]);
            cand.mass = mass_of(space, cand.subset);
            if (cand.mass < min_mass_abs) return;
            discoverable = std::max(discoverable, cand.mass);
            // maximal size wins; within a size, larger mass wins; ties keep
            // the earlier (lexicographic) tuple
            if (!best || cand.tuple.size() > best->tuple.size() ||
                (cand.tuple.size() == best->tuple.size() && cand.mass > best->mass))
                best = std::move(cand);
        });
    }
    if (best_mass) *best_mass = discoverable;
    return best;
}

Atlas build_structure(const MetricMeasureSpace& space,
                      const std::vector<ScalarField>& dictionary, const ScaleLadder& ladder,
                      const ScaleWindow& window, const AtlasConfig& config) {
    Atlas atlas;
    std::vector<char> covered(space.size(), 0);
    for (int round = 0; round < config.max_rounds; ++round) {
        std::vector<Index> region;
        for (Index x = 0; x < space.size(); ++x)
            if (!covered[x]) region.push_back(x);
        atlas.uncovered_mass = mass_of(space, region);
        if (atlas.uncovered_mass <= config.slack * space.total_mass()) return atlas;
        if (dictionary.empty()) {
            atlas.stalled = true;
            atlas.stall_reason = "empty dictionary";
            return atlas;
        }
        double discoverable = 0.0;
        auto cand = find_patch(space, dictionary, region, ladder, window, config,
                               &discoverable);
        if (!cand) {
            atlas.stalled = true;
            atlas.stall_reason = "no qualifying tuple on the uncovered region";
            return atlas;
        }
        if (cand->mass < 0.5 * discoverable) {
            atlas.stalled = true;
            atlas.stall_reason = "maximal-size patch fell below half the best discoverable mass";
            return atlas;
        }
        CoordinatePatch patch;
        patch.subset = cand->subset;
        patch.mass = cand->mass;
        patch.dimension = static_cast<Index>(cand->tuple.size());
        patch.coord_indices = cand->tuple;
        std::vector<ScalarField> fields;
        for (int id : cand->tuple) {
            patch.coord_labels.push_back(dictionary[id].label);
            fields.push_back(dictionary[id]);
        }
        CoordinateTuple tuple = CoordinateTuple::make(space, fields);
        for (std::size_t g = 0; g < dictionary.size(); ++g) {
            patch.differentials.push_back(differential_field(
                space, dictionary[g], tuple, patch.subset, ladder, config.residual_tol));
            patch.differential_labels.push_back(dictionary[g].label);
        }
        for (Index x : patch.subset) covered[x] = 1;
        atlas.patches.push_back(std::move(patch));
    }
    atlas.stalled = true;
    atlas.stall_reason = "round cap reached";
    std::vector<Index> region;
    for (Index x = 0; x < space.size(); ++x)
        if (!covered[x]) region.push_back(x);
    atlas.uncovered_mass = mass_of(space, region);
    return atlas;
}

}  // namespace mmslab
