#include "capath/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace capath {

namespace {

// adjacency masks of the graph formed by edges NOT of the avoided color
std::vector<std::uint32_t> allowed_adjacency(const EdgeColoring& c, Color avoided) {
    const int n = c.vertex_count();
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (c.color(u, v) != avoided) {
                adj[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
                adj[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
            }
    return adj;
}

PathSearchResult reconstruct(const std::vector<std::uint32_t>& dp,
                             const std::vector<std::uint32_t>& adj, std::uint32_t set, int last) {
    std::vector<int> path{last};
    std::uint32_t s = set;
    int v = last;
    while (std::popcount(s) > 1) {
        const std::uint32_t rest = s ^ (std::uint32_t{1} << v);
        const std::uint32_t prevs = dp[rest] & adj[static_cast<std::size_t>(v)];
        if (!prevs) throw InternalError("path table has an endpoint with no predecessor");
        const int w = std::countr_zero(prevs);
        path.push_back(w);
        s = rest;
        v = w;
    }
    std::reverse(path.begin(), path.end());
    return {static_cast<int>(path.size()), std::move(path)};
}

// dp[S] = endpoint mask: v is set iff some path spans exactly S and ends at v
PathSearchResult subset_dp(const EdgeColoring& c, Color avoided, std::optional<int> stop_at) {
    const int n = c.vertex_count();
    const auto adj = allowed_adjacency(c, avoided);
    std::vector<std::uint32_t> dp(std::size_t{1} << n, 0);
    for (int v = 0; v < n; ++v) dp[std::uint32_t{1} << v] = std::uint32_t{1} << v;

    int best = 1;
    std::uint32_t best_set = 1;
    int best_end = 0;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t set = 1; set <= full; ++set) {
        const std::uint32_t ends = dp[set];
        if (!ends) continue;
        const int len = std::popcount(set);
        if (len > best) {
            best = len;
            best_set = set;
            best_end = std::countr_zero(ends);
            if (stop_at && best >= *stop_at) break;
        }
        std::uint32_t e = ends;
        while (e) {
            const int v = std::countr_zero(e);
            e &= e - 1;
            std::uint32_t cand = adj[static_cast<std::size_t>(v)] & ~set;
            while (cand) {
                const int u = std::countr_zero(cand);
                cand &= cand - 1;
                dp[set | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
            }
        }
    }
    return reconstruct(dp, adj, best_set, best_end);
}

struct DfsState {
    const std::vector<std::uint32_t>& adj;
    int n;
    std::optional<int> stop_at;
    int best = 1;
    std::vector<int> cur;
    std::vector<int> best_path;
    bool done = false;

    void walk(int v, std::uint32_t used) {
        cur.push_back(v);
        used |= std::uint32_t{1} << v;
        if (static_cast<int>(cur.size()) > best) {
            best = static_cast<int>(cur.size());
            best_path = cur;
            if (stop_at && best >= *stop_at) done = true;
        }
        if (!done && static_cast<int>(cur.size()) + (n - std::popcount(used)) > best) {
            std::uint32_t cand = adj[static_cast<std::size_t>(v)] & ~used;
            while (cand && !done) {
                const int u = std::countr_zero(cand);
                cand &= cand - 1;
                walk(u, used);
            }
        }
        cur.pop_back();
    }
};

PathSearchResult exhaustive_dfs(const EdgeColoring& c, Color avoided, std::optional<int> stop_at) {
    const int n = c.vertex_count();
    const auto adj = allowed_adjacency(c, avoided);
    DfsState st{adj, n, stop_at};
    st.best_path = {0};
    for (int v = 0; v < n && !st.done; ++v) st.walk(v, 0);
    return {st.best, std::move(st.best_path)};
}

// t^edges if it fits into 64 bits
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > ~std::uint64_t{0}) return std::nullopt;
    }
    return static_cast<std::uint64_t>(r);
}

// digits of index in base t give the canonical edge list, least significant
// digit = edge 0
std::vector<Color> decode_coloring(std::uint64_t index, std::size_t edges, int t) {
    std::vector<Color> colors(edges);
    for (std::size_t e = 0; e < edges; ++e) {
        colors[e] = static_cast<Color>(index % static_cast<std::uint64_t>(t)) + 1;
        index /= static_cast<std::uint64_t>(t);
    }
    return colors;
}

bool next_coloring(std::vector<Color>& colors, int t, std::size_t fixed_prefix) {
    for (std::size_t e = fixed_prefix; e < colors.size(); ++e) {
        if (colors[e] < t) {
            ++colors[e];
            std::fill(colors.begin() + static_cast<std::ptrdiff_t>(fixed_prefix),
                      colors.begin() + static_cast<std::ptrdiff_t>(e), 1);
            return true;
        }
    }
    return false;
}

bool contains_required_witness(const EdgeColoring& c, const std::vector<Length>& per_color) {
    for (int col = 1; col <= c.color_count(); ++col) {
        const Length want = per_color[static_cast<std::size_t>(col) - 1];
        if (want > c.vertex_count()) continue;
        const auto r = longest_avoiding_path(c, col, static_cast<int>(want));
        if (r.order >= want) return true;
    }
    return false;
}

}  // namespace

const char* to_string(SearchVerdict v) {
    switch (v) {
        case SearchVerdict::AllColoringsContainWitness: return "AllColoringsContainWitness";
        case SearchVerdict::CounterexampleFound: return "CounterexampleFound";
    }
    return "?";
}

PathSearchResult longest_avoiding_path(const EdgeColoring& c, Color avoided,
                                       std::optional<int> stop_at) {
    if (avoided < 1 || avoided > c.color_count())
        throw std::invalid_argument("avoided color out of range");
    const int n = c.vertex_count();
    if (n > kDfsMaxVertices)
        throw CapabilityError("exact longest-path search supports at most " +
                              std::to_string(kDfsMaxVertices) + " vertices, got " +
                              std::to_string(n));
    if (n == 1) return {1, {0}};
    if (n <= kSubsetDpMaxVertices) return subset_dp(c, avoided, stop_at);
    return exhaustive_dfs(c, avoided, stop_at);
}

bool is_valid_lower_witness(const EdgeColoring& c, const TargetLengths& targets) {
    if (static_cast<std::size_t>(c.color_count()) != targets.count())
        throw std::invalid_argument("coloring and targets disagree on the color count");
    for (int col = 1; col <= c.color_count(); ++col) {
        const Length want = targets.per_color()[static_cast<std::size_t>(col) - 1];
        if (want > c.vertex_count()) continue;  // too few vertices for such a path
        const auto r = longest_avoiding_path(c, col, static_cast<int>(want));
        if (r.order >= want) return false;
    }
    return true;
}

SearchReport exhaustive_verify_upper(int n, const TargetLengths& targets,
                                     const SearchOptions& opts) {
    const auto start_time = std::chrono::steady_clock::now();
    if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
    const int t = static_cast<int>(targets.count());
    const std::size_t edges = static_cast<std::size_t>(n) * (n - 1) / 2;

    if (opts.prune_color_symmetry) {
        const auto& ls = targets.sorted();
        if (ls.front() != ls.back())
            throw std::invalid_argument("color-symmetry pruning is only sound for constant tuples");
        if (edges == 0)
            throw std::invalid_argument("color-symmetry pruning needs at least one edge");
    }

    const std::size_t free_edges = edges - (opts.prune_color_symmetry ? 1 : 0);
    const auto maybe_total = checked_pow(static_cast<std::uint64_t>(t), free_edges);
    if (!maybe_total || *maybe_total > opts.budget) {
        const std::string count =
            maybe_total ? std::to_string(*maybe_total)
                        : (std::to_string(t) + "^" + std::to_string(free_edges));
        throw CapabilityError("enumeration would require " + count +
                              " colorings, over the budget of " + std::to_string(opts.budget));
    }
    const std::uint64_t total = *maybe_total;

    SearchReport report;
    report.n = n;
    report.t = t;
    report.targets = targets.per_color();
    report.pruned_color_symmetry = opts.prune_color_symmetry;

    const int jobs = std::max(1, opts.jobs);
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> examined{0};
    std::mutex found_mutex;
    std::optional<std::uint64_t> found_index;
    std::optional<EdgeColoring> found_coloring;

    auto run_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
        if (lo >= hi) return;
        std::vector<Color> colors = decode_coloring(lo, free_edges, t);
        std::size_t fixed = 0;
        if (opts.prune_color_symmetry) {
            // free digits sit above the pinned first edge
            colors.insert(colors.begin(), 1);
            fixed = 1;
        }
        std::uint64_t local_examined = 0;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (stop.load(std::memory_order_relaxed)) break;
            EdgeColoring c(n, t, colors);
            ++local_examined;
            if (!contains_required_witness(c, targets.per_color())) {
                // re-verify with full searches before reporting
                bool genuinely_bad = true;
                for (int col = 1; col <= t && genuinely_bad; ++col) {
                    const Length want = targets.per_color()[static_cast<std::size_t>(col) - 1];
                    if (want <= n && longest_avoiding_path(c, col).order >= want)
                        genuinely_bad = false;
                }
                if (genuinely_bad) {
                    std::lock_guard<std::mutex> lock(found_mutex);
                    if (!found_index || idx < *found_index) {
                        found_index = idx;
                        found_coloring = c;
                    }
                    stop.store(true, std::memory_order_relaxed);
                    break;
                }
            }
            if (idx + 1 < hi) next_coloring(colors, t, fixed);
        }
        examined.fetch_add(local_examined, std::memory_order_relaxed);
    };

    if (jobs == 1 || total < 2 * static_cast<std::uint64_t>(jobs)) {
        run_chunk(0, total);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int k = 0; k < jobs; ++k) {
            const std::uint64_t lo = total / static_cast<std::uint64_t>(jobs) * k +
                                     std::min<std::uint64_t>(k, total % jobs);
            const std::uint64_t hi = total / static_cast<std::uint64_t>(jobs) * (k + 1) +
                                     std::min<std::uint64_t>(k + 1, total % jobs);
            workers.emplace_back(run_chunk, lo, hi);
        }
        for (auto& w : workers) w.join();
    }

    report.colorings_examined = examined.load();
    report.colorings_covered =
        report.colorings_examined * (opts.prune_color_symmetry ? static_cast<std::uint64_t>(t) : 1);
    if (found_coloring) {
        report.verdict = SearchVerdict::CounterexampleFound;
        report.counterexample = std::move(found_coloring);
    } else {
        report.verdict = SearchVerdict::AllColoringsContainWitness;
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

EdgeColoring random_coloring(int n, int t, std::uint64_t seed) {
    if (n < 1 || t < 1) throw std::invalid_argument("need n >= 1 and t >= 1");
    std::mt19937_64 rng(seed);
    const std::uint64_t span = ~std::uint64_t{0} / static_cast<std::uint64_t>(t) *
                               static_cast<std::uint64_t>(t);
    std::vector<Color> colors(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Color& c : colors) {
        std::uint64_t draw = rng();
        while (draw >= span) draw = rng();  // rejection keeps the draw unbiased
        c = static_cast<Color>(draw % static_cast<std::uint64_t>(t)) + 1;
    }
    return EdgeColoring(n, t, std::move(colors));
}

}  // namespace capath
