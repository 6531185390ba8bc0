#pragma once

#include <vector>

#include "capath/coloring.hpp"
#include "capath/formula.hpp"

namespace capath {

enum class ConstructionBranch { Explicit, RecurseFewerColors, GenEqualityRestrict, TwoColorBase };
const char* to_string(ConstructionBranch b);

// Block sizes of the extremal construction, in slot order. Blocks occupy
// consecutive label ranges, block 1 first, so the output is reproducible
// byte for byte. Empty blocks are allowed and contribute no vertices.
struct PartitionSpec {
    std::vector<Length> sizes;
    Length s = 0;         // weighted-floor value of the full tuple
    Length tail_sum = 0;  // sizes[2] + ... + sizes[t-1]
    ConstructionBranch branch = ConstructionBranch::Explicit;
};

// Explicit-branch sizes: requires t >= 3, last slot below the prefix value,
// and s at least the last slot. All constraint rows are re-checked after the
// arithmetic; a failed row is an internal error, not an input error.
PartitionSpec partition_sizes(const TargetLengths& targets);

struct ExtremalConstruction {
    EdgeColoring coloring;  // p - 1 vertices; no slot-j color-avoiding path of order slot(j)
    PartitionSpec partition;
};

// Coloring rule: an edge takes the color of the larger-indexed block it
// touches; edge colors are mapped back to the caller's original color labels
// through the tuple's slot permutation.
ExtremalConstruction construct_extremal(const TargetLengths& targets);

// 1-based block index of a vertex under the consecutive-ranges convention.
int block_of(const PartitionSpec& spec, int vertex);

}  // namespace capath
