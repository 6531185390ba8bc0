#include "capath/serialize.hpp"

#include <stdexcept>

namespace capath {

using nlohmann::json;

json coloring_to_json(const EdgeColoring& c) {
    return json{{"n", c.vertex_count()}, {"t", c.color_count()}, {"edges", c.edge_colors()}};
}

EdgeColoring coloring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("t") || !j.contains("edges"))
        throw std::invalid_argument("coloring document needs fields n, t, edges");
    if (!j["n"].is_number_integer() || !j["t"].is_number_integer() || !j["edges"].is_array())
        throw std::invalid_argument("coloring document has wrong field types");
    return build_coloring(j["n"].get<int>(), j["t"].get<int>(),
                          j["edges"].get<std::vector<Color>>());
}

json witness_to_json(const WitnessPath& w) {
    return json{{"avoided_color", w.avoided_color}, {"vertices", w.vertices}};
}

WitnessPath witness_from_json(const json& j) {
    if (!j.is_object() || !j.contains("avoided_color") || !j.contains("vertices"))
        throw std::invalid_argument("witness document needs fields avoided_color, vertices");
    return {j["avoided_color"].get<Color>(), j["vertices"].get<std::vector<int>>()};
}

json partition_to_json(const PartitionSpec& spec) {
    return json{{"sizes", spec.sizes}, {"s", spec.s}, {"branch", to_string(spec.branch)}};
}

json search_report_to_json(const SearchReport& report) {
    json j{{"n", report.n},
           {"t", report.t},
           {"targets", report.targets},
           {"verdict", to_string(report.verdict)},
           {"colorings_examined", report.colorings_examined},
           {"colorings_covered", report.colorings_covered},
           {"pruned_color_symmetry", report.pruned_color_symmetry},
           {"elapsed_seconds", report.elapsed_seconds}};
    j["counterexample"] =
        report.counterexample ? coloring_to_json(*report.counterexample) : json(nullptr);
    return j;
}

json trace_to_json(const std::vector<TraceStep>& trace) {
    json arr = json::array();
    for (const TraceStep& step : trace) {
        json entry{{"step", step.step}};
        if (!step.branch.empty()) entry["branch"] = step.branch;
        if (step.pivot) entry["pivot"] = {{"vertex", step.pivot->first}, {"color", step.pivot->second}};
        if (step.cycle_length) entry["cycle_length"] = *step.cycle_length;
        if (!step.recursion_targets.empty()) entry["recursion_targets"] = step.recursion_targets;
        arr.push_back(std::move(entry));
    }
    return arr;
}

}  // namespace capath
