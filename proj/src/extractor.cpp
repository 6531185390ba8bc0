#include "capath/extractor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "capath/oracle.hpp"

namespace capath {

namespace {

void note(ExtractRun* run, TraceStep step) {
    if (run && run->record_trace) run->trace.push_back(std::move(step));
}

std::string join_lengths(const std::vector<Length>& ls) {
    std::string out = "(";
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ls[i]);
    }
    return out + ")";
}

WitnessPath truncate_to(WitnessPath w, Length order) {
    if (static_cast<Length>(w.vertices.size()) < order)
        throw InternalError("cannot truncate a path below the required order");
    w.vertices.resize(static_cast<std::size_t>(order));
    return w;
}

WitnessPath map_vertices(WitnessPath w, const std::vector<int>& to_original) {
    for (int& v : w.vertices) v = to_original[static_cast<std::size_t>(v)];
    return w;
}

// (length, color) pairs sorted by length, stable on color
std::vector<std::pair<Length, Color>> sorted_slots(const std::vector<Length>& targets) {
    std::vector<std::pair<Length, Color>> slots;
    slots.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        slots.emplace_back(targets[i], static_cast<Color>(i) + 1);
    std::stable_sort(slots.begin(), slots.end());
    return slots;
}

struct DepthGuard {
    ExtractRun* run;
    explicit DepthGuard(ExtractRun* r) : run(r) {
        ++run->depth;
        run->stats.max_depth = std::max(run->stats.max_depth, run->depth);
        if (run->depth > run->initial_target_sum)
            throw InternalError("recursion depth exceeded the sum of the initial targets");
    }
    ~DepthGuard() { --run->depth; }
};

WitnessPath solve(ExtractionContext ctx);

// --- two-class base -------------------------------------------------------

// deterministic rotation-extension growth of a path to order `want` in the
// graph given by `adj`; returns a path of exactly `want` vertices on success
std::optional<std::vector<int>> grow_path(const std::vector<std::vector<int>>& adj, int n,
                                          int want) {
    if (want <= 0) return std::vector<int>{};
    for (int start = 0; start < n; ++start) {
        std::vector<int> path{start};
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        used[static_cast<std::size_t>(start)] = 1;
        std::vector<char> tried(static_cast<std::size_t>(n), 0);
        bool reversed_once = false;
        int budget = 4 * n * n + 16;

        while (static_cast<int>(path.size()) < want && budget-- > 0) {
            const int back = path.back();
            int next = -1;
            for (int u : adj[static_cast<std::size_t>(back)])
                if (!used[static_cast<std::size_t>(u)]) {
                    next = u;
                    break;
                }
            if (next < 0) {
                const int front = path.front();
                for (int u : adj[static_cast<std::size_t>(front)])
                    if (!used[static_cast<std::size_t>(u)]) {
                        next = u;
                        break;
                    }
                if (next >= 0) {
                    std::reverse(path.begin(), path.end());
                }
            }
            if (next >= 0) {
                path.push_back(next);
                used[static_cast<std::size_t>(next)] = 1;
                std::fill(tried.begin(), tried.end(), 0);
                reversed_once = false;
                continue;
            }
            // rotate: back adjacent to path[k] with k <= size-3 exposes path[k+1]
            std::vector<int> pos(static_cast<std::size_t>(n), -1);
            for (std::size_t i = 0; i < path.size(); ++i)
                pos[static_cast<std::size_t>(path[i])] = static_cast<int>(i);
            bool rotated = false;
            for (int u : adj[static_cast<std::size_t>(path.back())]) {
                const int k = pos[static_cast<std::size_t>(u)];
                if (k < 0 || k + 2 >= static_cast<int>(path.size())) continue;
                const int new_end = path[static_cast<std::size_t>(k) + 1];
                if (tried[static_cast<std::size_t>(new_end)]) continue;
                std::reverse(path.begin() + k + 1, path.end());
                tried[static_cast<std::size_t>(new_end)] = 1;
                rotated = true;
                break;
            }
            if (!rotated) {
                if (!reversed_once) {
                    std::reverse(path.begin(), path.end());
                    reversed_once = true;
                    continue;
                }
                break;  // stuck; next start
            }
        }
        if (static_cast<int>(path.size()) >= want) {
            path.resize(static_cast<std::size_t>(want));
            return path;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<int>> avoiding_adjacency(const EdgeColoring& c, Color avoided) {
    const int n = c.vertex_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (c.color(u, v) != avoided) {
                adj[static_cast<std::size_t>(u)].push_back(v);
                adj[static_cast<std::size_t>(v)].push_back(u);
            }
    return adj;
}

}  // namespace

ExtractionContext make_context(EdgeColoring working, std::vector<Length> target_per_color,
                               ExtractRun* run) {
    if (target_per_color.size() != static_cast<std::size_t>(working.color_count()))
        throw std::invalid_argument("one target length per color required");
    ExtractionContext ctx{std::move(working), std::move(target_per_color), 0, run};
    ctx.s = p_value(TargetLengths(ctx.target_per_color)).value;
    return ctx;
}

std::pair<int, Color> max_degree_pivot(const EdgeColoring& c) {
    const int n = c.vertex_count();
    if (n < 2) throw std::invalid_argument("pivot needs at least two vertices");
    const int t = c.color_count();
    std::vector<int> degree(static_cast<std::size_t>(n) * static_cast<std::size_t>(t), 0);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            const int col = c.color(u, v) - 1;
            ++degree[static_cast<std::size_t>(u) * t + col];
            ++degree[static_cast<std::size_t>(v) * t + col];
        }
    int best_v = 0;
    Color best_c = 1;
    int best_deg = -1;
    for (int v = 0; v < n; ++v)
        for (int col = 0; col < t; ++col)
            if (degree[static_cast<std::size_t>(v) * t + col] > best_deg) {
                best_deg = degree[static_cast<std::size_t>(v) * t + col];
                best_v = v;
                best_c = col + 1;
            }
    return {best_v, best_c};
}

WitnessPath alternate_extend(const EdgeColoring& c, const WitnessPath& path,
                             std::span<const int> spare_near, std::span<const int> spare_far,
                             Color cross_color) {
    if (path.vertices.empty()) throw std::invalid_argument("cannot extend an empty path");
    if (cross_color == path.avoided_color)
        throw std::invalid_argument("cross color equals the avoided color");
    std::vector<char> on_path(static_cast<std::size_t>(c.vertex_count()), 0);
    for (int v : path.vertices) on_path[static_cast<std::size_t>(v)] = 1;
    auto check_spare = [&](int v) {
        if (v < 0 || v >= c.vertex_count()) throw std::invalid_argument("spare vertex out of range");
        if (on_path[static_cast<std::size_t>(v)])
            throw std::invalid_argument("spare vertex already on the path");
        on_path[static_cast<std::size_t>(v)] = 1;
    };
    const std::size_t pairs = std::min(spare_near.size(), spare_far.size());
    WitnessPath out = path;
    int prev = out.vertices.back();
    for (std::size_t k = 0; k < pairs; ++k) {
        check_spare(spare_near[k]);
        if (c.color(prev, spare_near[k]) != cross_color)
            throw std::invalid_argument("extension edge does not carry the cross color");
        out.vertices.push_back(spare_near[k]);
        check_spare(spare_far[k]);
        if (c.color(spare_near[k], spare_far[k]) != cross_color)
            throw std::invalid_argument("extension edge does not carry the cross color");
        out.vertices.push_back(spare_far[k]);
        prev = spare_far[k];
    }
    return out;
}

namespace {

// --- near-path resolution ---------------------------------------------------

// case A: exactly one endpoint edge to the pivot carries the avoided color.
// `path` is oriented so color(x, front) != j and color(x, back) == j.
WitnessPath near_path_one_end(ExtractionContext& ctx, const WitnessPath& path, int x,
                              Color pivot_color) {
    const EdgeColoring& g = ctx.coloring;
    const Color j = path.avoided_color;
    const auto& p = path.vertices;
    const int z = p.back();
    std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : p) on_path[static_cast<std::size_t>(v)] = 1;
    on_path[static_cast<std::size_t>(x)] = 1;

    // a pivot-color edge leaving the path extends reverse(p) + x immediately
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!on_path[static_cast<std::size_t>(v)] && g.color(x, v) == pivot_color) {
            WitnessPath out{j, std::vector<int>(p.rbegin(), p.rend())};
            out.vertices.push_back(x);
            out.vertices.push_back(v);
            note(ctx.run, {"near-path", "pivot-edge-extension", std::pair<int, Color>{x, pivot_color},
                           std::nullopt, {}});
            return out;
        }
    // all pivot-color neighbors of x sit on the path; each one whose successor
    // toward the front reaches z off the avoided color closes a cycle
    for (std::size_t idx = 1; idx < p.size(); ++idx) {
        const int w = p[idx];
        if (g.color(x, w) != pivot_color) continue;
        const int w_plus = p[idx - 1];
        if (g.color(z, w_plus) == j) continue;
        std::vector<int> cyc;
        cyc.push_back(x);
        for (std::size_t i = 0; i < idx; ++i) cyc.push_back(p[i]);  // y .. w_plus
        for (std::size_t i = p.size(); i-- > idx;) cyc.push_back(p[i]);  // z .. w
        note(ctx.run, {"near-path", "rotate-to-cycle", std::pair<int, Color>{x, pivot_color},
                       static_cast<int>(cyc.size()), {}});
        return resolve_avoiding_cycle(ctx, {j, std::move(cyc)});
    }
    // otherwise any outside vertex reached from z off the avoided color works
    for (int a = 0; a < g.vertex_count(); ++a)
        if (!on_path[static_cast<std::size_t>(a)] && g.color(z, a) != j) {
            WitnessPath out{j, {}};
            out.vertices.push_back(x);
            out.vertices.insert(out.vertices.end(), p.begin(), p.end());
            out.vertices.push_back(a);
            note(ctx.run, {"near-path", "outside-extension", std::pair<int, Color>{x, pivot_color},
                           std::nullopt, {}});
            return out;
        }
    ++ctx.run->stats.contradiction_hits;
    throw InternalError("near-path resolution ran out of cases; pivot maximality was violated");
}

// case B: both endpoint edges to the pivot carry the avoided color
WitnessPath near_path_both_ends(ExtractionContext& ctx, const WitnessPath& path, int x,
                                Color pivot_color) {
    const EdgeColoring& g = ctx.coloring;
    const Color j = path.avoided_color;
    const auto& p = path.vertices;
    const int z = p.back();
    std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : p) on_path[static_cast<std::size_t>(v)] = 1;
    on_path[static_cast<std::size_t>(x)] = 1;

    // rotating at a pivot-color neighbor leaves exactly one endpoint edge in
    // the avoided color, which case A handles
    for (std::size_t idx = 1; idx < p.size(); ++idx) {
        const int w = p[idx];
        if (g.color(x, w) != pivot_color) continue;
        const int w_plus = p[idx - 1];
        if (g.color(z, w_plus) == j) continue;
        // w..z forward, then the new edge (z, w_plus), then w_plus..y backward;
        // endpoint edges to x: (x,w) pivot color, (x,y) avoided color
        std::vector<int> rotated;
        for (std::size_t i = idx; i < p.size(); ++i) rotated.push_back(p[i]);
        for (std::size_t i = idx; i-- > 0;) rotated.push_back(p[i]);
        note(ctx.run, {"near-path", "rotate-to-one-end", std::pair<int, Color>{x, pivot_color},
                       std::nullopt, {}});
        return near_path_one_end(ctx, {j, std::move(rotated)}, x, pivot_color);
    }
    for (int a = 0; a < g.vertex_count(); ++a)
        if (!on_path[static_cast<std::size_t>(a)] && g.color(x, a) == pivot_color &&
            g.color(z, a) != j) {
            WitnessPath out{j, p};
            out.vertices.push_back(a);
            out.vertices.push_back(x);
            note(ctx.run, {"near-path", "outside-pivot-extension",
                           std::pair<int, Color>{x, pivot_color}, std::nullopt, {}});
            return out;
        }
    ++ctx.run->stats.contradiction_hits;
    throw InternalError("near-path resolution ran out of cases; pivot maximality was violated");
}

}  // namespace

WitnessPath resolve_path_via_pivot(ExtractionContext& ctx, const WitnessPath& near,
                                   int pivot_vertex, Color pivot_color) {
    ++ctx.run->stats.near_path_resolutions;
    const EdgeColoring& g = ctx.coloring;
    const Color j = near.avoided_color;
    if (j == pivot_color) throw std::invalid_argument("near path must avoid a non-pivot color");
    const Length lj = ctx.target(j);
    if (static_cast<Length>(near.vertices.size()) != lj - 2)
        throw std::invalid_argument("near path must be exactly two short of its target");
    if (!validate_witness(g, near, static_cast<int>(lj) - 2))
        throw std::invalid_argument("near path is not a valid avoiding path");
    for (int v : near.vertices)
        if (v == pivot_vertex) throw std::invalid_argument("near path must not contain the pivot");

    const int y = near.vertices.front();
    const int z = near.vertices.back();
    const bool y_avoided = g.color(pivot_vertex, y) == j;
    const bool z_avoided = g.color(pivot_vertex, z) == j;
    if (!y_avoided && !z_avoided) {
        std::vector<int> cyc{pivot_vertex};
        cyc.insert(cyc.end(), near.vertices.begin(), near.vertices.end());
        note(ctx.run, {"near-path", "close-cycle", std::pair<int, Color>{pivot_vertex, pivot_color},
                       static_cast<int>(cyc.size()), {}});
        return resolve_avoiding_cycle(ctx, {j, std::move(cyc)});
    }
    if (y_avoided && z_avoided) return near_path_both_ends(ctx, near, pivot_vertex, pivot_color);
    WitnessPath oriented = near;
    if (y_avoided) std::reverse(oriented.vertices.begin(), oriented.vertices.end());
    return near_path_one_end(ctx, oriented, pivot_vertex, pivot_color);
}

WitnessPath resolve_avoiding_cycle(ExtractionContext& ctx, const AvoidingCycle& cycle) {
    ++ctx.run->stats.cycle_resolutions;
    const EdgeColoring& g = ctx.coloring;
    const Color j = cycle.avoided_color;
    const auto& cyc = cycle.vertices;
    const int m = static_cast<int>(cyc.size());
    if (static_cast<Length>(m) != ctx.target(j) - 1)
        throw std::invalid_argument("cycle must be exactly one short of its target");
    for (int i = 0; i < m; ++i)
        if (g.color(cyc[static_cast<std::size_t>(i)], cyc[static_cast<std::size_t>((i + 1) % m)]) == j)
            throw std::invalid_argument("cycle uses an edge of the avoided color");

    std::vector<char> on_cycle(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : cyc) on_cycle[static_cast<std::size_t>(v)] = 1;
    std::vector<int> outside;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!on_cycle[static_cast<std::size_t>(v)]) outside.push_back(v);
    const int q = static_cast<int>(outside.size());
    if (q < 1) throw InternalError("cycle spans the whole working coloring");

    // any cross edge off the avoided color opens the cycle into a full witness
    for (int a = 0; a < m; ++a)
        for (int v : outside)
            if (g.color(cyc[static_cast<std::size_t>(a)], v) != j) {
                WitnessPath out{j, {}};
                for (int i = 1; i <= m; ++i)
                    out.vertices.push_back(cyc[static_cast<std::size_t>((a + i) % m)]);
                out.vertices.push_back(v);
                note(ctx.run, {"cycle", "cross-edge-extension", std::nullopt, m, {}});
                return out;
            }

    // every cross edge carries the avoided color from here on
    const auto slots = sorted_slots(ctx.target_per_color);
    auto zigzag = [&](bool start_outside, int total_vertices) {
        // alternate cycle and outside vertices across cross edges only
        std::vector<int> path;
        int ci = 0, qi = 0;
        bool take_outside = start_outside;
        while (static_cast<int>(path.size()) < total_vertices) {
            if (take_outside) {
                if (qi >= q) break;
                path.push_back(outside[static_cast<std::size_t>(qi++)]);
            } else {
                if (ci >= m) break;
                path.push_back(cyc[static_cast<std::size_t>(ci++)]);
            }
            take_outside = !take_outside;
        }
        return path;
    };

    if (m == q) {
        // cross edges alone give a path through every vertex, made of the
        // avoided color only, so it misses every other color
        std::vector<int> all = zigzag(false, 2 * m);
        if (static_cast<int>(all.size()) != 2 * m)
            throw InternalError("alternating walk failed to cover both sides");
        Color jp = 0;
        for (auto it = slots.rbegin(); it != slots.rend(); ++it)
            if (it->second != j) {
                jp = it->second;
                break;
            }
        note(ctx.run, {"cycle", "all-cross-walk", std::nullopt, m, {}});
        return truncate_to({jp, std::move(all)}, ctx.target(jp));
    }

    if (m < q) {
        // outside is the larger side: a cross-only path of order 2m+1
        const Color jp = (slots[0].second != j) ? slots[0].second : slots[1].second;
        if (ctx.target(jp) <= 2 * static_cast<Length>(m) + 1) {
            std::vector<int> walk = zigzag(true, 2 * m + 1);
            if (static_cast<int>(walk.size()) != 2 * m + 1)
                throw InternalError("alternating walk shorter than expected");
            note(ctx.run, {"cycle", "cross-walk-serves-smallest", std::nullopt, m, {}});
            return truncate_to({jp, std::move(walk)}, ctx.target(jp));
        }
        // here the avoided color holds the smallest target; recurse among the
        // outside vertices with every other target cut by twice (target-1)
        if (ctx.target(j) != slots[0].first)
            throw InternalError("cycle color is expected to hold the smallest target");
        const Length k = ctx.target(j) - 1;  // == m
        std::vector<Length> sub_targets(ctx.target_per_color);
        for (std::size_t c = 0; c < sub_targets.size(); ++c)
            if (static_cast<Color>(c) + 1 != j) {
                sub_targets[c] -= 2 * k;
                if (sub_targets[c] < 2)
                    throw InternalError("reduced target fell below 2 in the outside recursion");
            }
        const Length p_sub = p_value(TargetLengths(sub_targets)).value;
        if (p_sub > q)
            throw InternalError("outside recursion does not fit its vertex budget");
        note(ctx.run, {"cycle", "recurse-outside", std::nullopt, m, sub_targets});
        auto sub = induced_subgraph(g, outside);
        WitnessPath w = map_vertices(
            solve(ExtractionContext{std::move(sub.coloring), sub_targets, p_sub, ctx.run}),
            sub.to_original);
        if (w.avoided_color == j) return w;
        // stitch the witness back to full order through the cycle vertices
        std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int v : w.vertices) used[static_cast<std::size_t>(v)] = 1;
        std::vector<int> spare_far;
        for (int v : outside)
            if (!used[static_cast<std::size_t>(v)]) spare_far.push_back(v);
        if (static_cast<Length>(spare_far.size()) < k)
            throw InternalError("not enough outside vertices left for the alternating extension");
        spare_far.resize(static_cast<std::size_t>(k));
        std::vector<int> spare_near(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(k));
        note(ctx.run, {"cycle", "alternate-extend", std::nullopt, m, {}});
        return alternate_extend(g, w, spare_near, spare_far, j);
    }

    // m > q: the cycle is the larger side; a cross-only path of order 2q+1
    Color jp = (slots[0].second != j) ? slots[0].second : slots[1].second;
    if (ctx.target(jp) <= 2 * static_cast<Length>(q) + 1) {
        std::vector<int> walk = zigzag(false, 2 * q + 1);
        if (static_cast<int>(walk.size()) != 2 * q + 1)
            throw InternalError("alternating walk shorter than expected");
        note(ctx.run, {"cycle", "cross-walk-serves-smallest", std::nullopt, m, {}});
        return truncate_to({jp, std::move(walk)}, ctx.target(jp));
    }
    // all other targets exceed 2q+1: drop the cycle color, cut the rest by 2q,
    // fold the cycle color into the surviving color with the largest target,
    // and recurse inside the cycle
    std::vector<Length> survivors(ctx.target_per_color);
    Color partner = 0;
    Length partner_target = -1;
    for (std::size_t c = 0; c < survivors.size(); ++c) {
        const Color col = static_cast<Color>(c) + 1;
        if (col == j) continue;
        if (survivors[c] > partner_target) {
            partner_target = survivors[c];
            partner = col;
        }
    }
    const int t = g.color_count();
    ColorMergeMap fold = ColorMergeMap::merge_pair(t, partner, j);
    std::vector<Length> sub_targets(static_cast<std::size_t>(fold.class_count()), 0);
    std::vector<Color> representative(static_cast<std::size_t>(fold.class_count()), 0);
    for (Color col = 1; col <= t; ++col) {
        if (col == j) continue;
        const Color cls = fold.apply(col);
        sub_targets[static_cast<std::size_t>(cls) - 1] = ctx.target(col) - 2 * q;
        representative[static_cast<std::size_t>(cls) - 1] = col;
        if (ctx.target(col) - 2 * q < 2)
            throw InternalError("reduced target fell below 2 in the inside recursion");
    }
    const Length p_sub = p_value(TargetLengths(sub_targets)).value;
    if (p_sub > static_cast<Length>(m))
        throw InternalError("inside recursion does not fit its vertex budget");
    note(ctx.run, {"cycle", "recurse-inside", std::nullopt, m, sub_targets});
    std::vector<int> cycle_sorted(cyc);
    std::sort(cycle_sorted.begin(), cycle_sorted.end());
    auto sub = induced_subgraph(g, cycle_sorted);
    EdgeColoring folded = merge_colors(sub.coloring, fold);
    WitnessPath w = map_vertices(
        solve(ExtractionContext{std::move(folded), sub_targets, p_sub, ctx.run}),
        sub.to_original);
    w.avoided_color = representative[static_cast<std::size_t>(w.avoided_color) - 1];
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : w.vertices) used[static_cast<std::size_t>(v)] = 1;
    std::vector<int> spare_far;
    for (int v : cycle_sorted)
        if (!used[static_cast<std::size_t>(v)]) spare_far.push_back(v);
    if (static_cast<int>(spare_far.size()) < q)
        throw InternalError("not enough cycle vertices left for the alternating extension");
    spare_far.resize(static_cast<std::size_t>(q));
    note(ctx.run, {"cycle", "alternate-extend", std::nullopt, m, {}});
    return alternate_extend(g, w, outside, spare_far, j);
}

WitnessPath base_two_color(const EdgeColoring& two_class, Length target1, Length target2,
                           ExtractRun* run) {
    if (two_class.color_count() != 2)
        throw std::invalid_argument("two-class base needs exactly two classes");
    if (target1 < 2 || target2 < 2) throw std::invalid_argument("targets must be at least 2");
    const int n = two_class.vertex_count();
    const Length need = p_value(TargetLengths({target1, target2})).value;
    if (static_cast<Length>(n) < need)
        throw std::invalid_argument("two-class base needs at least " + std::to_string(need) +
                                    " vertices, got " + std::to_string(n));
    if (run) ++run->stats.two_color_bases;

    const Length want[2] = {target1, target2};
    for (Color avoid = 1; avoid <= 2; ++avoid) {
        const Length w = want[avoid - 1];
        if (w > n) continue;
        auto adj = avoiding_adjacency(two_class, avoid);
        if (auto path = grow_path(adj, n, static_cast<int>(w))) {
            note(run, {"two-color-base", "rotation-extension", std::nullopt, std::nullopt,
                       {target1, target2}});
            return {avoid, std::move(*path)};
        }
    }
    if (n > kDfsMaxVertices)
        throw CapabilityError("two-class growth failed and " + std::to_string(n) +
                              " vertices exceed the exact-search bound");
    for (Color avoid = 1; avoid <= 2; ++avoid) {
        const Length w = want[avoid - 1];
        if (w > n) continue;
        const auto r = longest_avoiding_path(two_class, avoid, static_cast<int>(w));
        if (r.order >= w) {
            note(run, {"two-color-base", "exact-search", std::nullopt, std::nullopt,
                       {target1, target2}});
            return truncate_to({avoid, r.vertices}, w);
        }
    }
    throw InternalError("no two-class witness at or above the threshold vertex count");
}

namespace {

WitnessPath solve(ExtractionContext ctx) {
    ExtractRun* run = ctx.run;
    DepthGuard guard(run);
    const int t = ctx.coloring.color_count();
    const Length s = p_value(TargetLengths(ctx.target_per_color)).value;
    if (static_cast<Length>(ctx.coloring.vertex_count()) < s)
        throw InternalError("recursion entered with fewer vertices than its threshold");
    if (static_cast<Length>(ctx.coloring.vertex_count()) > s) {
        // the case arithmetic below assumes exactly s vertices
        std::vector<int> keep(static_cast<std::size_t>(s));
        std::iota(keep.begin(), keep.end(), 0);
        note(run, {"restrict", std::to_string(ctx.coloring.vertex_count()) + "->" +
                                   std::to_string(s),
                   std::nullopt, std::nullopt, {}});
        ctx.coloring = induced_subgraph(ctx.coloring, keep).coloring;
    }
    ctx.s = s;

    WitnessPath result;
    if (t == 2) {
        result = base_two_color(ctx.coloring, ctx.target(1), ctx.target(2), run);
    } else {
        const auto slots = sorted_slots(ctx.target_per_color);
        std::vector<Length> prefix_lengths;
        prefix_lengths.reserve(slots.size() - 1);
        for (std::size_t k = 0; k + 1 < slots.size(); ++k)
            prefix_lengths.push_back(slots[k].first);
        const Length p_prefix = p_value(TargetLengths(prefix_lengths)).value;

        if (slots.back().first >= p_prefix) {
            // the top slot asks for more than the smaller instance already
            // forces; fold the two largest-target colors into one class
            const Color low = slots[slots.size() - 2].second;
            const Color high = slots.back().second;
            if (s != p_prefix) throw InternalError("threshold mismatch in the fold branch");
            ++run->stats.merge_steps;
            ColorMergeMap fold = ColorMergeMap::merge_pair(t, low, high);
            std::vector<Length> sub_targets(static_cast<std::size_t>(fold.class_count()), 0);
            std::vector<Color> representative(static_cast<std::size_t>(fold.class_count()), 0);
            for (Color col = 1; col <= t; ++col) {
                const Color cls = fold.apply(col);
                const Length tgt = (col == high) ? ctx.target(low) : ctx.target(col);
                auto& slot_target = sub_targets[static_cast<std::size_t>(cls) - 1];
                if (slot_target == 0 || tgt < slot_target) {
                    slot_target = tgt;
                    representative[static_cast<std::size_t>(cls) - 1] =
                        (col == high) ? low : col;
                }
            }
            note(run, {"fold-top-pair",
                       "colors " + std::to_string(low) + "+" + std::to_string(high), std::nullopt,
                       std::nullopt, sub_targets});
            EdgeColoring folded = merge_colors(ctx.coloring, fold);
            result = solve(ExtractionContext{std::move(folded), sub_targets, 0, run});
            result.avoided_color =
                representative[static_cast<std::size_t>(result.avoided_color) - 1];
        } else if (slots.front().first <= 3) {
            // a tiny smallest target: one class for its color, one for the rest
            const Color keep = slots.front().second;
            ++run->stats.merge_steps;
            ColorMergeMap fold = ColorMergeMap::isolate(t, keep);
            const Color kept_class = fold.apply(keep);
            const Color bulk_class = (kept_class == 1) ? 2 : 1;
            std::vector<Length> sub_targets(2, 0);
            sub_targets[static_cast<std::size_t>(kept_class) - 1] = slots[0].first;
            sub_targets[static_cast<std::size_t>(bulk_class) - 1] = slots[1].first;
            note(run, {"fold-around-smallest", "keep color " + std::to_string(keep), std::nullopt,
                       std::nullopt, sub_targets});
            EdgeColoring folded = merge_colors(ctx.coloring, fold);
            WitnessPath w = base_two_color(folded, sub_targets[0], sub_targets[1], run);
            w.avoided_color = (w.avoided_color == kept_class) ? keep : slots[1].second;
            result = w;
        } else {
            // main branch: all targets at least 4 and the top target beats the
            // smaller instance's threshold
            if (slots.back().first > s)
                throw InternalError("largest target exceeds the threshold vertex count");
            const auto [x, i] = max_degree_pivot(ctx.coloring);
            ++run->stats.pivot_steps;
            std::vector<Length> reduced(ctx.target_per_color);
            for (std::size_t c = 0; c < reduced.size(); ++c)
                if (static_cast<Color>(c) + 1 != i) reduced[c] -= 2;
            const Length p_reduced = p_value(TargetLengths(reduced)).value;

            std::vector<int> others;
            others.reserve(static_cast<std::size_t>(ctx.coloring.vertex_count()) - 1);
            for (int v = 0; v < ctx.coloring.vertex_count(); ++v)
                if (v != x) others.push_back(v);
            auto sub = induced_subgraph(ctx.coloring, others);

            if (p_reduced <= s - 1) {
                note(run, {"pivot", "reduce-others", std::pair<int, Color>{x, i}, std::nullopt,
                           reduced});
                WitnessPath w = map_vertices(
                    solve(ExtractionContext{std::move(sub.coloring), reduced, p_reduced, run}),
                    sub.to_original);
                if (w.avoided_color == i) {
                    result = w;  // already full order for the pivot color
                } else {
                    result = resolve_path_via_pivot(ctx, w, x, i);
                }
            } else {
                // forced shape: the pivot color's target equals the largest
                // target equals s; drop that slot, cut the rest by 2, fold the
                // pivot color into the largest surviving target
                if (ctx.target(i) != s || slots.back().first != s)
                    throw InternalError("reduction overflow without the forced equal-target shape");
                Color partner = 0;
                Length partner_target = -1;
                for (Color col = 1; col <= t; ++col) {
                    if (col == i) continue;
                    if (ctx.target(col) > partner_target) {
                        partner_target = ctx.target(col);
                        partner = col;
                    }
                }
                ++run->stats.merge_steps;
                ColorMergeMap fold = ColorMergeMap::merge_pair(t, partner, i);
                std::vector<Length> sub_targets(static_cast<std::size_t>(fold.class_count()), 0);
                std::vector<Color> representative(static_cast<std::size_t>(fold.class_count()), 0);
                for (Color col = 1; col <= t; ++col) {
                    if (col == i) continue;
                    const Color cls = fold.apply(col);
                    sub_targets[static_cast<std::size_t>(cls) - 1] = ctx.target(col) - 2;
                    representative[static_cast<std::size_t>(cls) - 1] = col;
                }
                const Length p_drop = p_value(TargetLengths(sub_targets)).value;
                if (p_drop > s - 1)
                    throw InternalError("drop-slot recursion does not fit its vertex budget");
                note(run, {"pivot", "drop-slot-fold", std::pair<int, Color>{x, i}, std::nullopt,
                           sub_targets});
                EdgeColoring folded = merge_colors(sub.coloring, fold);
                WitnessPath w = map_vertices(
                    solve(ExtractionContext{std::move(folded), sub_targets, p_drop, run}),
                    sub.to_original);
                w.avoided_color =
                    representative[static_cast<std::size_t>(w.avoided_color) - 1];
                result = resolve_path_via_pivot(ctx, w, x, i);
            }
        }
    }

    const Length required = ctx.target(result.avoided_color);
    if (static_cast<Length>(result.vertices.size()) != required ||
        !validate_witness(ctx.coloring, result, static_cast<int>(required)))
        throw InternalError("recursion produced an invalid witness for its own level");
    return result;
}

}  // namespace

ExtractionResult extract(const EdgeColoring& c, std::span<const Length> target_per_color) {
    if (target_per_color.size() != static_cast<std::size_t>(c.color_count()))
        throw std::invalid_argument("one target length per color required");
    std::vector<Length> targets(target_per_color.begin(), target_per_color.end());
    TargetLengths tl(targets);
    const Length s = p_value(tl).value;
    if (static_cast<Length>(c.vertex_count()) < s)
        throw std::invalid_argument("coloring has " + std::to_string(c.vertex_count()) +
                                    " vertices; the threshold for these targets is " +
                                    std::to_string(s));

    ExtractRun run;
    run.initial_target_sum = std::accumulate(targets.begin(), targets.end(), Length{0});
    WitnessPath w = solve(ExtractionContext{c, targets, s, &run});

    const Length required = targets[static_cast<std::size_t>(w.avoided_color) - 1];
    if (!validate_witness(c, w, static_cast<int>(required)))
        throw InternalError("extraction produced a witness that fails validation");
    return {std::move(w), run.stats, std::move(run.trace)};
}

}  // namespace capath
