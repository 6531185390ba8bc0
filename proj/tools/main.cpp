// Command-line front end: value, construct, verify, extract, search, certify.
// JSON goes to stdout, human-readable summaries to stderr. Exit codes:
// 0 success/verified, 1 mathematical failure or counterexample, 2 usage or
// capability problems.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "capath/extractor.hpp"
#include "capath/extremal.hpp"
#include "capath/formula.hpp"
#include "capath/oracle.hpp"
#include "capath/serialize.hpp"

using nlohmann::json;
using namespace capath;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

std::vector<Length> parse_lengths(const std::vector<Length>& raw) {
    for (Length l : raw)
        if (l < 2) throw std::invalid_argument("every target length must be at least 2");
    if (raw.size() < 2) throw std::invalid_argument("need at least two target lengths");
    return raw;
}

EdgeColoring read_coloring(const std::string& path) {
    json doc;
    if (path == "-") {
        std::cin >> doc;
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        in >> doc;
    }
    return coloring_from_json(doc);
}

void write_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << doc.dump(2) << "\n";
}

std::string lengths_text(const std::vector<Length>& ls) {
    std::string out;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ls[i]);
    }
    return out;
}

int cmd_value(const std::vector<Length>& lengths, bool symmetric) {
    json out;
    if (symmetric) {
        if (lengths.size() != 2)
            throw std::invalid_argument("--symmetric takes exactly: <length> <colors>");
        const Length ell = lengths[0], colors = lengths[1];
        out = {{"kind", "R"}, {"ell", ell}, {"t", colors}, {"value", r_value(ell, colors)}};
        std::cerr << "R(" << ell << ", " << colors << " colors) = " << out["value"] << "\n";
    } else {
        TargetLengths t(parse_lengths(lengths));
        const PValue r = p_value(t);
        out = {{"kind", "p"},
               {"lengths", t.per_color()},
               {"value", r.value},
               {"branch", to_string(r.trace.branch)}};
        if (r.trace.prefix_p) out["prefix_p"] = *r.trace.prefix_p;
        if (r.trace.s) out["s"] = *r.trace.s;
        std::cerr << "p(" << lengths_text(t.per_color()) << ") = " << r.value << " ["
                  << to_string(r.trace.branch) << "]\n";
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_construct(const std::vector<Length>& lengths, const std::string& out_path) {
    TargetLengths t(parse_lengths(lengths));
    auto built = construct_extremal(t);
    const json coloring_doc = coloring_to_json(built.coloring);
    const json sidecar = partition_to_json(built.partition);
    if (out_path.empty()) {
        std::cout << coloring_doc.dump() << "\n";
    } else {
        write_file(out_path, coloring_doc);
        write_file(out_path + ".partition.json", sidecar);
    }
    std::cerr << "construction for (" << lengths_text(t.per_color()) << "): "
              << built.coloring.vertex_count() << " vertices, blocks " << sidecar["sizes"].dump()
              << ", branch " << to_string(built.partition.branch) << "\n";
    if (built.coloring.vertex_count() <= kDfsMaxVertices) {
        if (!is_valid_lower_witness(built.coloring, t)) {
            std::cerr << "self-check failed: an avoiding path of target order exists\n";
            return kExitMathFailure;
        }
        std::cerr << "self-check passed: no avoiding path reaches its target order\n";
    } else {
        std::cerr << "self-check skipped: " << built.coloring.vertex_count()
                  << " vertices exceed the exact-search bound\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& file, const std::vector<Length>& lengths) {
    EdgeColoring c = read_coloring(file);
    TargetLengths t(parse_lengths(lengths));
    if (static_cast<std::size_t>(c.color_count()) != t.count())
        throw std::invalid_argument("coloring has " + std::to_string(c.color_count()) +
                                    " colors but " + std::to_string(t.count()) +
                                    " targets were given");
    json per_color = json::array();
    bool valid = true;
    for (Color col = 1; col <= c.color_count(); ++col) {
        const Length want = t.per_color()[static_cast<std::size_t>(col) - 1];
        int longest;
        if (want <= c.vertex_count()) {
            longest = longest_avoiding_path(c, col, static_cast<int>(want)).order;
            if (longest >= want) longest = longest_avoiding_path(c, col).order;
        } else {
            longest = longest_avoiding_path(c, col).order;
        }
        const bool ok = longest <= want - 1;
        valid = valid && ok;
        per_color.push_back(
            {{"color", col}, {"target", want}, {"longest_avoiding", longest}, {"ok", ok}});
        std::cerr << "color " << col << ": longest avoiding path " << longest << ", target "
                  << want << (ok ? " (ok)" : " (violated)") << "\n";
    }
    json out{{"n", c.vertex_count()}, {"per_color", per_color}, {"valid_lower_witness", valid}};
    std::cout << out.dump() << "\n";
    return valid ? kExitOk : kExitMathFailure;
}

int cmd_extract(const std::string& file, const std::vector<Length>& lengths,
                const std::string& trace_path, const std::string& out_path) {
    EdgeColoring c = read_coloring(file);
    std::vector<Length> targets = parse_lengths(lengths);
    if (targets.size() != static_cast<std::size_t>(c.color_count()))
        throw std::invalid_argument("one target length per color required");
    auto r = extract(c, targets);
    const json witness_doc = witness_to_json(r.witness);
    if (out_path.empty())
        std::cout << witness_doc.dump() << "\n";
    else
        write_file(out_path, witness_doc);
    if (!trace_path.empty()) write_file(trace_path, trace_to_json(r.trace));
    std::cerr << "witness of order " << r.witness.vertices.size() << " avoiding color "
              << r.witness.avoided_color << "\n";
    return kExitOk;
}

int cmd_search(int n, const std::vector<Length>& lengths, const SearchOptions& opts) {
    TargetLengths t(parse_lengths(lengths));
    SearchReport report = exhaustive_verify_upper(n, t, opts);
    std::cout << search_report_to_json(report).dump() << "\n";
    std::cerr << "examined " << report.colorings_examined << " colorings of K_" << n << ": "
              << to_string(report.verdict) << " (" << report.elapsed_seconds << "s)\n";
    return report.verdict == SearchVerdict::AllColoringsContainWitness ? kExitOk
                                                                       : kExitMathFailure;
}

struct CertifyOptions {
    int tmax = 3;
    Length lmax = 10;
    std::optional<Length> symmetric;
    int fuzz_seeds = 100;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::uint64_t search_budget = 1u << 20;
};

json certify_tuple(const std::vector<Length>& lengths, const CertifyOptions& opts, bool& ok_out) {
    const auto start = std::chrono::steady_clock::now();
    TargetLengths t(lengths);
    const PValue pv = p_value(t);
    json entry{{"lengths", lengths}, {"p", pv.value}, {"branch", to_string(pv.trace.branch)}};

    auto built = construct_extremal(t);
    bool lower_ok = built.coloring.vertex_count() == pv.value - 1;
    if (lower_ok && built.coloring.vertex_count() <= kDfsMaxVertices)
        lower_ok = is_valid_lower_witness(built.coloring, t);
    entry["lower_bound_certified"] = lower_ok;

    bool upper_ok = true;
    const std::size_t edges =
        static_cast<std::size_t>(pv.value) * (pv.value - 1) / 2;
    bool exhaustive_fits = true;
    {
        unsigned __int128 total = 1;
        for (std::size_t e = 0; e < edges && exhaustive_fits; ++e) {
            total *= static_cast<unsigned __int128>(t.count());
            if (total > opts.search_budget) exhaustive_fits = false;
        }
    }
    if (exhaustive_fits) {
        SearchOptions sopts;
        sopts.budget = opts.search_budget;
        sopts.jobs = opts.jobs;
        SearchReport report = exhaustive_verify_upper(static_cast<int>(pv.value), t, sopts);
        upper_ok = report.verdict == SearchVerdict::AllColoringsContainWitness;
        entry["upper_bound_evidence"] = "exhaustive";
    } else {
        // seeded extraction fuzz on colorings at the threshold order
        std::atomic<int> failures{0};
        std::atomic<long long> contradictions{0};
        std::atomic<int> next{0};
        const int jobs = std::max(1, opts.jobs);
        auto worker = [&]() {
            for (int k = next.fetch_add(1); k < opts.fuzz_seeds; k = next.fetch_add(1)) {
                EdgeColoring c = random_coloring(static_cast<int>(pv.value),
                                                 static_cast<int>(t.count()),
                                                 opts.seed + static_cast<std::uint64_t>(k));
                try {
                    auto r = extract(c, t.per_color());
                    const Length want =
                        t.per_color()[static_cast<std::size_t>(r.witness.avoided_color) - 1];
                    if (!validate_witness(c, r.witness, static_cast<int>(want))) ++failures;
                    contradictions += r.stats.contradiction_hits;
                } catch (const std::exception&) {
                    ++failures;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        upper_ok = failures.load() == 0 && contradictions.load() == 0;
        entry["upper_bound_evidence"] = "fuzz:" + std::to_string(opts.fuzz_seeds);
    }
    entry["upper_bound_ok"] = upper_ok;
    entry["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok_out = lower_ok && upper_ok;
    entry["certified"] = ok_out;
    return entry;
}

int cmd_certify(const CertifyOptions& opts) {
    std::vector<std::vector<Length>> grid;
    if (opts.symmetric) {
        for (int t = 2; t <= opts.tmax; ++t)
            grid.emplace_back(static_cast<std::size_t>(t), *opts.symmetric);
    } else {
        for (int t = 2; t <= opts.tmax; ++t) {
            std::vector<Length> cur(static_cast<std::size_t>(t), 2);
            while (true) {
                grid.push_back(cur);
                std::size_t i = cur.size();
                bool done = true;
                while (i-- > 0) {
                    if (cur[i] < opts.lmax) {
                        ++cur[i];
                        for (std::size_t k = i + 1; k < cur.size(); ++k) cur[k] = cur[i];
                        done = false;
                        break;
                    }
                }
                if (done) break;
            }
        }
    }

    json results = json::array();
    std::vector<std::string> failing;
    for (const auto& lengths : grid) {
        bool ok = false;
        results.push_back(certify_tuple(lengths, opts, ok));
        if (!ok) failing.push_back("(" + lengths_text(lengths) + ")");
        std::cerr << (ok ? "certified " : "FAILED    ") << "(" << lengths_text(lengths) << ")\n";
    }
    json out{{"tuples", grid.size()},
             {"tmax", opts.tmax},
             {"results", results},
             {"all_certified", failing.empty()}};
    if (opts.symmetric) out["symmetric"] = *opts.symmetric;
    else out["lmax"] = opts.lmax;
    std::cout << out.dump() << "\n";
    if (!failing.empty()) {
        std::cerr << "failing tuples:";
        for (const auto& f : failing) std::cerr << " " << f;
        std::cerr << "\n";
        return kExitMathFailure;
    }
    std::cerr << "all " << grid.size() << " tuples certified\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact color-avoiding path thresholds: formulas, extremal colorings, "
                 "brute-force verification, and witness extraction"};
    app.require_subcommand(1);

    // value
    auto* value = app.add_subcommand("value", "compute the threshold for a tuple of targets");
    std::vector<Length> value_lengths;
    bool value_symmetric = false;
    value->add_option("lengths", value_lengths, "target lengths (or: <length> <colors> with --symmetric)")
        ->required();
    value->add_flag("--symmetric", value_symmetric, "treat arguments as <length> <colors>");

    // construct
    auto* construct = app.add_subcommand("construct", "build the extremal coloring one below the threshold");
    std::vector<Length> construct_lengths;
    std::string construct_out;
    construct->add_option("lengths", construct_lengths, "target lengths, one per color")->required();
    construct->add_option("--out", construct_out, "coloring file; sidecar goes to <out>.partition.json");

    // verify
    auto* verify = app.add_subcommand("verify", "check a coloring against per-color targets");
    std::string verify_file;
    std::vector<Length> verify_lengths;
    verify->add_option("coloring", verify_file, "coloring JSON file, or - for stdin")->required();
    verify->add_option("lengths", verify_lengths, "target lengths, one per color")->required();

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "produce a color-avoiding path witness");
    std::string extract_file, extract_trace, extract_out;
    std::vector<Length> extract_lengths;
    extract_cmd->add_option("coloring", extract_file, "coloring JSON file, or - for stdin")->required();
    extract_cmd->add_option("lengths", extract_lengths, "target lengths, one per color")->required();
    extract_cmd->add_option("--trace", extract_trace, "write the step trace to this file");
    extract_cmd->add_option("--out", extract_out, "write the witness here instead of stdout");

    // search
    auto* search = app.add_subcommand("search", "enumerate every coloring of K_n");
    int search_n = 0;
    std::vector<Length> search_lengths;
    SearchOptions search_opts;
    search->add_option("n", search_n, "vertex count")->required();
    search->add_option("lengths", search_lengths, "target lengths, one per color")->required();
    search->add_flag("--prune-color-symmetry", search_opts.prune_color_symmetry,
                     "pin edge {0,1} to color 1 (constant tuples only)");
    search->add_option("--jobs", search_opts.jobs, "parallel chunks");
    search->add_option("--budget", search_opts.budget, "max colorings to enumerate");

    // certify
    auto* certify = app.add_subcommand("certify", "certify both directions over a grid of tuples");
    CertifyOptions copts;
    certify->add_option("--tmax", copts.tmax, "largest color count (default 3)");
    certify->add_option("--lmax", copts.lmax, "largest target length (default 10)");
    Length certify_symmetric = 0;
    auto* sym_opt = certify->add_option("--symmetric", certify_symmetric,
                                        "only constant tuples of this length");
    certify->add_option("--fuzz-seeds", copts.fuzz_seeds,
                        "seeded extractions per tuple when enumeration is too large");
    certify->add_option("--jobs", copts.jobs, "parallel workers");
    certify->add_option("--seed", copts.seed, "base seed for the fuzz harness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (value->parsed()) return cmd_value(value_lengths, value_symmetric);
        if (construct->parsed()) return cmd_construct(construct_lengths, construct_out);
        if (verify->parsed()) return cmd_verify(verify_file, verify_lengths);
        if (extract_cmd->parsed())
            return cmd_extract(extract_file, extract_lengths, extract_trace, extract_out);
        if (search->parsed()) return cmd_search(search_n, search_lengths, search_opts);
        if (certify->parsed()) {
            if (*sym_opt) copts.symmetric = certify_symmetric;
            return cmd_certify(copts);
        }
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const CapabilityError& e) {
        std::cerr << "capability: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
