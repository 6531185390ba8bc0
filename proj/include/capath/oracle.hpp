#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "capath/coloring.hpp"
#include "capath/formula.hpp"

namespace capath {

// Exact search limits. Up to kSubsetDpMaxVertices the longest-path search runs
// a subset dynamic program (memory-bound); up to kDfsMaxVertices it falls back
// to an exhaustive branch-and-bound walk (time-bound). Anything larger is a
// CapabilityError, never an approximate answer.
inline constexpr int kSubsetDpMaxVertices = 20;
inline constexpr int kDfsMaxVertices = 24;

struct PathSearchResult {
    int order = 0;
    std::vector<int> vertices;  // a path realizing `order`
};

// Exact maximum order over all paths that never use an edge of the avoided
// color. With stop_at the search may return as soon as it has proven
// order >= stop_at; the returned value is then at least stop_at and the
// cached realizing path is returned with it.
PathSearchResult longest_avoiding_path(const EdgeColoring& c, Color avoided,
                                       std::optional<int> stop_at = std::nullopt);

// True iff for every color the longest path avoiding it stays strictly below
// that color's target. Targets pair with colors by input position.
bool is_valid_lower_witness(const EdgeColoring& c, const TargetLengths& targets);

enum class SearchVerdict { AllColoringsContainWitness, CounterexampleFound };
const char* to_string(SearchVerdict v);

struct SearchOptions {
    std::uint64_t budget = 100'000'000;  // max colorings this call may enumerate
    bool prune_color_symmetry = false;   // constant tuples only: pin edge {0,1} to color 1
    int jobs = 1;
};

struct SearchReport {
    int n = 0;
    int t = 0;
    std::vector<Length> targets;  // per color
    SearchVerdict verdict = SearchVerdict::AllColoringsContainWitness;
    std::optional<EdgeColoring> counterexample;  // re-verified before being reported
    std::uint64_t colorings_examined = 0;
    std::uint64_t colorings_covered = 0;  // examined times the symmetry factor
    bool pruned_color_symmetry = false;
    double elapsed_seconds = 0.0;
};

// Enumerates every t-coloring of K_n (lexicographic over the canonical edge
// list) and checks each for a color-avoiding path of the required order.
// Work splits into contiguous index chunks across jobs; a found counterexample
// raises a shared flag whose only effect is early termination.
SearchReport exhaustive_verify_upper(int n, const TargetLengths& targets,
                                     const SearchOptions& opts = {});

// Deterministic function of (n, t, seed); each edge color uniform in 1..t.
EdgeColoring random_coloring(int n, int t, std::uint64_t seed);

}  // namespace capath
