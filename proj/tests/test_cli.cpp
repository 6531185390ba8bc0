#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

#include "capath/serialize.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CAPATH_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/capath_cli_test_") + name;
}

}  // namespace

TEST_CASE("value prints the threshold and branch") {
    auto r = run_cli("value 3 4 5");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["value"] == 4);
    CHECK(doc["branch"] == "GenEquality");

    auto sym = run_cli("value --symmetric 8 3");
    CHECK(sym.exit_code == 0);
    CHECK(json::parse(sym.out)["value"] == 9);

    auto sym4 = run_cli("value 16 16 16 16");
    CHECK(json::parse(sym4.out)["value"] == 17);
}

TEST_CASE("usage problems exit with 2") {
    CHECK(run_cli("value 5").exit_code == 2);
    CHECK(run_cli("value 1 4").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("search 7 4 4 --budget 10").exit_code == 2);  // over budget
}

TEST_CASE("construct, verify, and extract compose through files") {
    const std::string coloring = tmp_path("c888.json");
    auto built = run_cli("construct 8 8 8 --out " + coloring);
    CHECK(built.exit_code == 0);

    std::ifstream side(coloring + ".partition.json");
    REQUIRE(side.good());
    json sidecar;
    side >> sidecar;
    CHECK(sidecar["sizes"] == json::array({5, 2, 1}));
    CHECK(sidecar["s"] == 9);
    CHECK(sidecar["branch"] == "Explicit");

    auto verified = run_cli("verify " + coloring + " 8 8 8");
    CHECK(verified.exit_code == 0);
    json vdoc = json::parse(verified.out);
    CHECK(vdoc["valid_lower_witness"] == true);

    // too strict a target flips the verdict to exit 1
    CHECK(run_cli("verify " + coloring + " 8 8 7").exit_code == 1);

    // one vertex below the threshold leaves nothing to extract
    CHECK(run_cli("extract " + coloring + " 8 8 8").exit_code == 2);
}

TEST_CASE("extract emits a validated witness") {
    // build a K_9 coloring file via the library, then extract via the CLI
    const std::string path = tmp_path("k9.json");
    capath::EdgeColoring c = capath::random_coloring(9, 3, 42);
    {
        std::ofstream out(path);
        out << capath::coloring_to_json(c).dump();
    }
    const std::string trace = tmp_path("k9.trace.json");
    auto r = run_cli("extract " + path + " 8 8 8 --trace " + trace);
    CHECK(r.exit_code == 0);
    capath::WitnessPath w = capath::witness_from_json(json::parse(r.out));
    CHECK(capath::validate_witness(c, w, 8));

    std::ifstream tin(trace);
    REQUIRE(tin.good());
    json tdoc;
    tin >> tdoc;
    CHECK(tdoc.is_array());
    CHECK(!tdoc.empty());
}

TEST_CASE("search reports exact verdicts with matching exit codes") {
    auto up = run_cli("search 5 4 4");
    CHECK(up.exit_code == 0);
    json udoc = json::parse(up.out);
    CHECK(udoc["verdict"] == "AllColoringsContainWitness");
    CHECK(udoc["colorings_examined"] == 1024);

    auto down = run_cli("search 4 4 4 --jobs 2");
    CHECK(down.exit_code == 1);
    json ddoc = json::parse(down.out);
    CHECK(ddoc["verdict"] == "CounterexampleFound");
    capath::EdgeColoring ce = capath::coloring_from_json(ddoc["counterexample"]);
    CHECK(capath::is_valid_lower_witness(ce, capath::TargetLengths({4, 4})));
}

TEST_CASE("certify runs a small grid end to end") {
    auto r = run_cli("certify --tmax 2 --lmax 5 --fuzz-seeds 20 --jobs 2");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["all_certified"] == true);

    auto sym = run_cli("certify --tmax 3 --symmetric 6 --fuzz-seeds 20");
    CHECK(sym.exit_code == 0);
    CHECK(json::parse(sym.out)["all_certified"] == true);
}
