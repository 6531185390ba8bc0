#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capath/common.hpp"

namespace capath {

// Edge coloring of the complete graph on labeled vertices 0..n-1, colors 1..t.
// Canonical edge order: for v = 1..n-1, for u = 0..v-1, edge {u,v}. With that
// order the edges among the first k vertices form a prefix of the list.
// Immutable after construction.
class EdgeColoring {
public:
    EdgeColoring(int n, int t, std::vector<Color> edge_colors);

    int vertex_count() const { return n_; }
    int color_count() const { return t_; }
    Color color(int u, int v) const;
    const std::vector<Color>& edge_colors() const { return colors_; }
    std::size_t edge_count() const { return colors_.size(); }

    static std::size_t edge_index(int u, int v);  // canonical position of {u,v}

    friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

private:
    int n_ = 0;
    int t_ = 0;
    std::vector<Color> colors_;
};

EdgeColoring build_coloring(int n, int t, std::vector<Color> edge_colors);

// A path plus the color none of its edges may use.
struct WitnessPath {
    Color avoided_color = 0;
    std::vector<int> vertices;

    friend bool operator==(const WitnessPath&, const WitnessPath&) = default;
};

// Surjection from colors 1..t onto classes 1..t'. A path avoiding a class
// avoids every color in that class's preimage.
class ColorMergeMap {
public:
    ColorMergeMap(int from_colors, std::vector<Color> image);

    static ColorMergeMap identity(int t);
    // colors a and b share a class; every other color keeps a class of its
    // own; classes are labeled in order of their smallest preimage
    static ColorMergeMap merge_pair(int t, Color a, Color b);
    // color `keep` alone in one class, everything else in the other
    static ColorMergeMap isolate(int t, Color keep);

    int from_colors() const { return from_; }
    int class_count() const { return to_; }
    Color apply(Color c) const;
    std::vector<Color> preimage(Color cls) const;

private:
    int from_ = 0;
    int to_ = 0;
    std::vector<Color> image_;
};

EdgeColoring merge_colors(const EdgeColoring& c, const ColorMergeMap& map);

struct InducedColoring {
    EdgeColoring coloring;
    std::vector<int> to_original;  // new label -> original label
};

InducedColoring induced_subgraph(const EdgeColoring& c, std::span<const int> vertices);

// True iff the vertices are distinct, in range, at least required_order many,
// and no consecutive edge carries the avoided color. Pure predicate.
bool validate_witness(const EdgeColoring& c, const WitnessPath& w, int required_order);

}  // namespace capath
