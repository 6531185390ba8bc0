#pragma once

#include <vector>

#include "json.hpp"

#include "capath/coloring.hpp"
#include "capath/extractor.hpp"
#include "capath/extremal.hpp"
#include "capath/oracle.hpp"

namespace capath {

// Canonical coloring document: {"n": int, "t": int, "edges": [int, ...]} with
// the canonical edge order and 1-based colors. Bit-exact CLI contract.
nlohmann::json coloring_to_json(const EdgeColoring& c);
EdgeColoring coloring_from_json(const nlohmann::json& j);

// {"avoided_color": int, "vertices": [int, ...]}
nlohmann::json witness_to_json(const WitnessPath& w);
WitnessPath witness_from_json(const nlohmann::json& j);

// {"sizes": [...], "s": int, "branch": "..."}
nlohmann::json partition_to_json(const PartitionSpec& spec);

nlohmann::json search_report_to_json(const SearchReport& report);

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace);

}  // namespace capath
