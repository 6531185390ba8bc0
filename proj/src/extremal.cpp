#include "capath/extremal.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace capath {

namespace {

Length floor_div(Length a, Length b) {
    Length q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Length ceil_div(Length a, Length b) { return -floor_div(-a, b); }

// Explicit-branch size arithmetic on a sorted tuple; verifies every row of
// the constraint system before returning.
std::vector<Length> explicit_sizes(const std::vector<Length>& ls, Length s) {
    const std::size_t t = ls.size();
    std::vector<Length> a(t, 0);
    a[t - 1] = s - ls[t - 1];
    for (std::size_t i = t - 1; i >= 3; --i)
        a[i - 1] = 2 * a[i] + ls[i] - ls[i - 1];
    Length tail = 0;
    for (std::size_t i = 2; i < t; ++i) tail += a[i];
    a[0] = ceil_div(2 * s - 2 * tail + ls[1] - ls[0] - 1, 3);
    a[1] = floor_div(s - tail + ls[0] - ls[1] - 2, 3);

    // every row must hold exactly; a violated row means the arithmetic above
    // is wrong for this tuple
    auto fail = [&](const std::string& row) {
        throw InternalError("partition constraint violated (" + row + ")");
    };
    if (a[0] < 1) fail("a1 >= 1");
    for (Length v : a)
        if (v < 0) fail("aj >= 0");
    Length total = std::accumulate(a.begin(), a.end(), Length{0});
    if (total != s - 1) fail("sum = s-1");
    if (2 * a[1] + 2 * tail + 1 > ls[0] - 1) fail("row 1");
    if (a[0] + 2 * tail > ls[1] - 1) fail("row 2");
    for (std::size_t m = 3; m <= t; ++m) {
        Length head = 0, dbl = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) head += a[i];
        for (std::size_t i = m; i < t; ++i) dbl += 2 * a[i];
        if (head + dbl != ls[m - 1] - 1) fail("row " + std::to_string(m));
    }
    return a;
}

struct BuildResult {
    std::vector<Length> sizes;  // slot order
    ConstructionBranch branch = ConstructionBranch::Explicit;
};

// Sizes for a sorted tuple, routing between the construction's branches.
BuildResult block_sizes_for(const std::vector<Length>& ls) {
    const std::size_t t = ls.size();
    if (t == 2)
        return {{ls[1] - 1, ls[0] / 2 - 1}, ConstructionBranch::TwoColorBase};

    const std::vector<Length> pre(ls.begin(), ls.end() - 1);
    const Length p_pre = p_value(TargetLengths(pre)).value;
    if (ls[t - 1] >= p_pre) {
        // the smaller-tuple construction, read as a coloring that never uses
        // the last slot's color
        BuildResult inner = block_sizes_for(pre);
        inner.sizes.push_back(0);
        inner.branch = ConstructionBranch::GenEqualityRestrict;
        return inner;
    }
    const Length s = s_value(ls);
    if (s < ls[t - 1]) {
        // K_{s-1} cannot hold a path of the last slot's order at all, so the
        // smaller-tuple construction restricted to its first s-1 vertices works
        BuildResult inner = block_sizes_for(pre);
        std::vector<Length> cut(t, 0);
        Length remaining = s - 1;
        for (std::size_t i = 0; i + 1 < t && remaining > 0; ++i) {
            cut[i] = std::min(inner.sizes[i], remaining);
            remaining -= cut[i];
        }
        return {std::move(cut), ConstructionBranch::RecurseFewerColors};
    }
    return {explicit_sizes(ls, s), ConstructionBranch::Explicit};
}

}  // namespace

const char* to_string(ConstructionBranch b) {
    switch (b) {
        case ConstructionBranch::Explicit: return "Explicit";
        case ConstructionBranch::RecurseFewerColors: return "RecurseFewerColors";
        case ConstructionBranch::GenEqualityRestrict: return "GenEqualityRestrict";
        case ConstructionBranch::TwoColorBase: return "TwoColorBase";
    }
    return "?";
}

PartitionSpec partition_sizes(const TargetLengths& targets) {
    const auto& ls = targets.sorted();
    const std::size_t t = ls.size();
    if (t < 3) throw std::invalid_argument("explicit partition needs at least three slots");
    const Length p_pre = p_value(targets.prefix(t - 1)).value;
    if (ls[t - 1] >= p_pre)
        throw std::invalid_argument("last slot not below the prefix value; use the reduced-color branch");
    const Length s = s_value(ls);
    if (s < ls[t - 1])
        throw std::invalid_argument("s below the last slot; use the restricted branch");

    PartitionSpec spec;
    spec.sizes = explicit_sizes(ls, s);
    spec.s = s;
    spec.branch = ConstructionBranch::Explicit;
    for (std::size_t i = 2; i < t; ++i) spec.tail_sum += spec.sizes[i];
    return spec;
}

ExtremalConstruction construct_extremal(const TargetLengths& targets) {
    const auto& ls = targets.sorted();
    BuildResult built = block_sizes_for(ls);

    PartitionSpec spec;
    spec.sizes = built.sizes;
    spec.branch = built.branch;
    spec.s = s_value(ls);
    for (std::size_t i = 2; i < spec.sizes.size(); ++i) spec.tail_sum += spec.sizes[i];

    const Length n = std::accumulate(spec.sizes.begin(), spec.sizes.end(), Length{0});
    const Length p = p_value(targets).value;
    if (n != p - 1)
        throw InternalError("construction has " + std::to_string(n) + " vertices, expected " +
                            std::to_string(p - 1));

    // slot of each vertex under the consecutive-ranges convention
    std::vector<int> slot_of(static_cast<std::size_t>(n));
    {
        std::size_t v = 0;
        for (std::size_t j = 0; j < spec.sizes.size(); ++j)
            for (Length k = 0; k < spec.sizes[j]; ++k) slot_of[v++] = static_cast<int>(j);
    }
    std::vector<Color> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Length v = 1; v < n; ++v)
        for (Length u = 0; u < v; ++u) {
            const int j = std::max(slot_of[static_cast<std::size_t>(u)],
                                   slot_of[static_cast<std::size_t>(v)]);
            edges.push_back(static_cast<Color>(targets.input_position(static_cast<std::size_t>(j)) + 1));
        }
    return {EdgeColoring(static_cast<int>(n), static_cast<int>(targets.count()), std::move(edges)),
            std::move(spec)};
}

int block_of(const PartitionSpec& spec, int vertex) {
    if (vertex < 0) throw std::invalid_argument("vertex out of range");
    Length cum = 0;
    for (std::size_t j = 0; j < spec.sizes.size(); ++j) {
        cum += spec.sizes[j];
        if (vertex < cum) return static_cast<int>(j) + 1;
    }
    throw std::invalid_argument("vertex out of range");
}

}  // namespace capath
