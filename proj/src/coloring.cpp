#include "capath/coloring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace capath {

EdgeColoring::EdgeColoring(int n, int t, std::vector<Color> edge_colors)
    : n_(n), t_(t), colors_(std::move(edge_colors)) {
    if (n_ < 1) throw std::invalid_argument("vertex count must be at least 1");
    if (t_ < 1) throw std::invalid_argument("color count must be at least 1");
    const std::size_t want = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    if (colors_.size() != want)
        throw std::invalid_argument("edge list has " + std::to_string(colors_.size()) +
                                    " entries, expected " + std::to_string(want));
    for (Color c : colors_)
        if (c < 1 || c > t_)
            throw std::invalid_argument("edge color " + std::to_string(c) + " outside 1.." +
                                        std::to_string(t_));
}

std::size_t EdgeColoring::edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(v) * (v - 1) / 2 + u;
}

Color EdgeColoring::color(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoints out of range");
    return colors_[edge_index(u, v)];
}

EdgeColoring build_coloring(int n, int t, std::vector<Color> edge_colors) {
    return EdgeColoring(n, t, std::move(edge_colors));
}

ColorMergeMap::ColorMergeMap(int from_colors, std::vector<Color> image)
    : from_(from_colors), image_(std::move(image)) {
    if (from_ < 1 || image_.size() != static_cast<std::size_t>(from_))
        throw std::invalid_argument("merge map must assign a class to every color");
    to_ = 0;
    for (Color c : image_) {
        if (c < 1) throw std::invalid_argument("merge map classes are 1-based");
        to_ = std::max(to_, c);
    }
    std::vector<char> seen(static_cast<std::size_t>(to_), 0);
    for (Color c : image_) seen[static_cast<std::size_t>(c) - 1] = 1;
    for (char s : seen)
        if (!s) throw std::invalid_argument("merge map must be onto 1..t'");
}

ColorMergeMap ColorMergeMap::identity(int t) {
    std::vector<Color> image(static_cast<std::size_t>(t));
    for (int c = 1; c <= t; ++c) image[static_cast<std::size_t>(c) - 1] = c;
    return ColorMergeMap(t, std::move(image));
}

ColorMergeMap ColorMergeMap::merge_pair(int t, Color a, Color b) {
    if (a == b || a < 1 || b < 1 || a > t || b > t)
        throw std::invalid_argument("merge_pair needs two distinct colors in range");
    if (a > b) std::swap(a, b);
    std::vector<Color> image(static_cast<std::size_t>(t));
    Color next = 1;
    for (int c = 1; c <= t; ++c) {
        if (c == b)
            image[static_cast<std::size_t>(c) - 1] = image[static_cast<std::size_t>(a) - 1];
        else
            image[static_cast<std::size_t>(c) - 1] = next++;
    }
    return ColorMergeMap(t, std::move(image));
}

ColorMergeMap ColorMergeMap::isolate(int t, Color keep) {
    if (t < 2 || keep < 1 || keep > t)
        throw std::invalid_argument("isolate needs t >= 2 and a color in range");
    // class labels in order of smallest preimage: the bulk class comes first
    // unless the kept color is color 1
    const Color kept_class = (keep == 1) ? 1 : 2;
    const Color bulk_class = (keep == 1) ? 2 : 1;
    std::vector<Color> image(static_cast<std::size_t>(t), bulk_class);
    image[static_cast<std::size_t>(keep) - 1] = kept_class;
    return ColorMergeMap(t, std::move(image));
}

Color ColorMergeMap::apply(Color c) const {
    if (c < 1 || c > from_) throw std::invalid_argument("color outside merge map domain");
    return image_[static_cast<std::size_t>(c) - 1];
}

std::vector<Color> ColorMergeMap::preimage(Color cls) const {
    if (cls < 1 || cls > to_) throw std::invalid_argument("class outside merge map range");
    std::vector<Color> pre;
    for (int c = 1; c <= from_; ++c)
        if (image_[static_cast<std::size_t>(c) - 1] == cls) pre.push_back(c);
    return pre;
}

EdgeColoring merge_colors(const EdgeColoring& c, const ColorMergeMap& map) {
    if (map.from_colors() != c.color_count())
        throw std::invalid_argument("merge map does not match the coloring's color count");
    std::vector<Color> merged;
    merged.reserve(c.edge_count());
    for (Color e : c.edge_colors()) merged.push_back(map.apply(e));
    return EdgeColoring(c.vertex_count(), map.class_count(), std::move(merged));
}

InducedColoring induced_subgraph(const EdgeColoring& c, std::span<const int> vertices) {
    if (vertices.empty()) throw std::invalid_argument("induced subgraph needs a nonempty vertex set");
    std::vector<char> seen(static_cast<std::size_t>(c.vertex_count()), 0);
    for (int v : vertices) {
        if (v < 0 || v >= c.vertex_count())
            throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
        if (seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("vertex " + std::to_string(v) + " listed twice");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    const int m = static_cast<int>(vertices.size());
    std::vector<Color> edges;
    edges.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int v = 1; v < m; ++v)
        for (int u = 0; u < v; ++u) edges.push_back(c.color(vertices[u], vertices[v]));
    return {EdgeColoring(m, c.color_count(), std::move(edges)),
            std::vector<int>(vertices.begin(), vertices.end())};
}

bool validate_witness(const EdgeColoring& c, const WitnessPath& w, int required_order) {
    if (w.avoided_color < 1 || w.avoided_color > c.color_count()) return false;
    if (static_cast<int>(w.vertices.size()) < required_order) return false;
    std::vector<char> seen(static_cast<std::size_t>(c.vertex_count()), 0);
    for (int v : w.vertices) {
        if (v < 0 || v >= c.vertex_count()) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 1; i < w.vertices.size(); ++i)
        if (c.color(w.vertices[i - 1], w.vertices[i]) == w.avoided_color) return false;
    return true;
}

}  // namespace capath
