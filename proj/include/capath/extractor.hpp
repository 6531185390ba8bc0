#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capath/coloring.hpp"
#include "capath/formula.hpp"

namespace capath {

struct ExtractStats {
    long long pivot_steps = 0;           // main-branch recursions through a pivot
    long long near_path_resolutions = 0;  // resolve_path_via_pivot entries
    long long cycle_resolutions = 0;      // resolve_avoiding_cycle entries
    long long contradiction_hits = 0;     // must stay 0 on every valid input
    long long merge_steps = 0;
    long long two_color_bases = 0;
    int max_depth = 0;
};

struct TraceStep {
    std::string step;
    std::string branch;
    std::optional<std::pair<int, Color>> pivot;  // (vertex, color)
    std::optional<int> cycle_length;
    std::vector<Length> recursion_targets;
};

// Bookkeeping shared by all levels of one extraction.
struct ExtractRun {
    ExtractStats stats;
    std::vector<TraceStep> trace;
    Length initial_target_sum = 0;
    int depth = 0;
    bool record_trace = true;
};

// One recursion level: a working coloring plus the required order for each
// live color. The solver trims the coloring to exactly the threshold vertex
// count before doing anything else; the case arithmetic assumes that count.
struct ExtractionContext {
    EdgeColoring coloring;
    std::vector<Length> target_per_color;  // index c-1 = required order for color c
    Length s = 0;                          // threshold; equals coloring.vertex_count()
    ExtractRun* run = nullptr;

    Length target(Color c) const { return target_per_color[static_cast<std::size_t>(c) - 1]; }
};

ExtractionContext make_context(EdgeColoring working, std::vector<Length> target_per_color,
                               ExtractRun* run);

struct ExtractionResult {
    WitnessPath witness;
    ExtractStats stats;
    std::vector<TraceStep> trace;
};

// For any coloring with at least the threshold vertex count, produce a path
// of the required order avoiding some color. The witness is validated against
// the input coloring before it is returned; a failed validation or an
// exhausted case split throws InternalError (a bug, never silent).
ExtractionResult extract(const EdgeColoring& c, std::span<const Length> target_per_color);

// (vertex, color) maximizing the color degree at the vertex; ties break to the
// lowest vertex, then the lowest color, so traces are reproducible.
std::pair<int, Color> max_degree_pivot(const EdgeColoring& c);

// `near` is a path of order target-2 avoiding its color, living in the working
// coloring minus the pivot vertex. Grows it to a full witness, or closes it
// into a one-short cycle and resolves that.
WitnessPath resolve_path_via_pivot(ExtractionContext& ctx, const WitnessPath& near,
                                   int pivot_vertex, Color pivot_color);

struct AvoidingCycle {
    Color avoided_color = 0;
    std::vector<int> vertices;  // cyclic order; length = target(avoided_color) - 1
};

// A cycle one short of its color's target either extends across a cross edge,
// or forces every cross edge into the avoided color, in which case zigzag
// paths and recursion inside either side finish the job.
WitnessPath resolve_avoiding_cycle(ExtractionContext& ctx, const AvoidingCycle& cycle);

// Appends near_1, far_1, near_2, far_2, ... to the path, consuming
// min(|near|, |far|) pairs. Every edge used must carry cross_color, which must
// differ from the path's avoided color; order grows by twice the pair count.
WitnessPath alternate_extend(const EdgeColoring& c, const WitnessPath& path,
                             std::span<const int> spare_near, std::span<const int> spare_far,
                             Color cross_color);

// Two-class base case: a path of order target1 avoiding class 1 or of order
// target2 avoiding class 2. Rotation-extension growth with restarts first,
// the exact search as fallback while the instance is small enough.
WitnessPath base_two_color(const EdgeColoring& two_class, Length target1, Length target2,
                           ExtractRun* run = nullptr);

}  // namespace capath
