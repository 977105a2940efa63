// gallai_lab: generation, counting, repair, testing and verification from the command line.
//
// Every command prints one JSON report {"command","seed","wall_time_s","payload"} on
// stdout. Exit codes: 0 success/accept, 1 reject/violation, 2 usage, parse or budget error.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gallai_lab/copies.hpp"
#include "gallai_lab/gallai.hpp"
#include "gallai_lab/hardness.hpp"
#include "gallai_lab/io.hpp"
#include "gallai_lab/kernels.hpp"
#include "gallai_lab/repair.hpp"

namespace fs = std::filesystem;
using namespace gallai_lab;
using io::Json;

namespace {

struct Common {
    std::uint64_t seed = 0;
    int workers = 0;
    std::uint64_t budget = 0;
    std::string format = "json";
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

int report(const Common& c, Json payload, int code) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - c.start).count();
    std::cout << io::dump(Json{{"command", c.command}, {"seed", c.seed}, {"wall_time_s", wall}, {"payload", std::move(payload)}});
    return code;
}

bool looks_like_digraph(const Json& j) { return j.is_object() && j.contains("edges"); }

ColoredGraph load_colored(const std::string& path) {
    const auto j = io::read_json(path);
    if (looks_like_digraph(j)) return color_projection(io::digraph_from_json(j));
    return io::colored_graph_from_json(j);
}

Json witness_json(const std::array<Vertex, 3>& w) { return Json::array({w[0], w[1], w[2]}); }

Json instance_payload(const HardnessInstance& inst, const std::string& out) {
    return Json{{"kind", to_string(inst.kind)},
                {"m", inst.m},
                {"factor", inst.factor},
                {"set_size", inst.set.size()},
                {"host_vertices", inst.host_size()},
                {"blowup_vertices", inst.blown_size()},
                {"claims", io::to_json(inst.claims)},
                {"out", out}};
}

}  // namespace

int main(int argc, char** argv) {
    Common c;
    for (int i = 0; i < argc; ++i) c.command += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"Gallai colorings: structure, rainbow-triangle repair, testing and hardness constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--workers", c.workers, "Worker threads for parallel scans (0 = runtime default)");
    app.add_option("--budget", c.budget,
                   "Work cap: enumeration candidates, or tester samples (0 = default; GALLAI_LAB_BUDGET overrides "
                   "the enumeration default)");
    app.add_option("--format", c.format, "Output format for trees")->check(CLI::IsMember({"json", "dot"}));

    // generate ---------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Write graphs or hardness bundles");
    gen->require_subcommand(1);

    int gen_n = 0, max_children = 4;
    std::string out, tree_out;
    auto* gen_gallai = gen->add_subcommand("gallai", "Random Gallai coloring composed from a random tree");
    gen_gallai->add_option("--n", gen_n, "Vertex count")->required()->check(CLI::Range(1, 65536));
    gen_gallai->add_option("--max-children", max_children, "Children per node drawn from [2, max]")
        ->check(CLI::Range(2, 1000));
    gen_gallai->add_option("-o,--out", out, "Graph output file")->required();
    gen_gallai->add_option("--tree-out", tree_out, "Also write the tree");

    std::string input, transcript_out;
    double noise = 0.0;
    auto* gen_corrupt = gen->add_subcommand("corrupt", "Recolor floor(noise * C(n,2)) distinct pairs");
    gen_corrupt->add_option("-i,--input", input, "Input graph")->required();
    gen_corrupt->add_option("--noise", noise, "Fraction of pairs to recolor")->required()->check(CLI::Range(0.0, 1.0));
    gen_corrupt->add_option("-o,--out", out, "Graph output file")->required();
    gen_corrupt->add_option("--transcript", transcript_out, "Write the applied edits as JSON lines");

    std::int64_t m = 0;
    int factor = 1, avoided = 2;
    std::string method = "greedy", pattern_path;
    bool no_count = false;
    auto add_hardness = [&](const char* name, const char* help) {
        auto* s = gen->add_subcommand(name, help);
        s->add_option("--m", m, "Interval scale m")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20));
        s->add_option("--factor", factor, "Blowup factor (design family planted when factor >= 2f)")
            ->check(CLI::Range(1, 65536));
        s->add_option("--method", method, "Avoiding-set method")->check(CLI::IsMember({"greedy", "behrend"}));
        s->add_option("-o,--out", out, "Bundle directory")->required();
        s->add_flag("--no-count", no_count, "Skip the exhaustive host count");
        return s;
    };
    auto* gen_tri = add_hardness("triangle-hardness", "Host with pair-disjoint copies of a pattern");
    gen_tri->add_option("--pattern", pattern_path, "Pattern graph (default: K3 in color 1)");
    gen_tri->add_option("--avoided", avoided, "Background color");
    auto* gen_f4 = add_hardness("f4-hardness", "Host with pair-disjoint copies of F4");
    auto* gen_d3 = add_hardness("d3-hardness", "Digraph host with pair-disjoint induced copies of D3");

    // count ------------------------------------------------------------------
    auto* count = app.add_subcommand("count", "Count rainbow triangles, color-avoiding triangles or pattern copies");
    count->add_option("input", input, "Graph or digraph file")->required();
    bool rainbow = false;
    std::optional<int> avoid_color;
    count->add_flag("--rainbow", rainbow, "Rainbow triangles (default)");
    count->add_option("--avoiding", avoid_color, "Triangles with no pair of this color");
    count->add_option("--pattern", pattern_path, "Pattern file (colored, or digraph for induced copies)");

    // repair -----------------------------------------------------------------
    auto* rep = app.add_subcommand("repair", "Recolor toward a Gallai coloring");
    rep->add_option("input", input, "Graph file")->required();
    RepairConfig rcfg;
    rep->add_option("--epsilon", rcfg.epsilon, "Closeness parameter")->check(CLI::Range(0.0, 1.0));
    rep->add_option("--seed-sample", rcfg.seed_sample, "Seed sample size s");
    rep->add_option("--batch-size", rcfg.batch_size, "Batch size t");
    rep->add_option("--batches", rcfg.batches, "Batch count k");
    rep->add_option("--density", rcfg.density, "Growth density delta (fraction of n)");
    rep->add_option("--retries", rcfg.retries, "Sampling attempts per split");
    rep->add_flag("--asymptotic-constants", rcfg.asymptotic_constants, "Derive s, t, k, delta from epsilon");
    rep->add_option("--transcript", transcript_out, "Write the edits as JSON lines");
    rep->add_option("-o,--out", out, "Write the repaired graph");

    // test -------------------------------------------------------------------
    auto* tst = app.add_subcommand("test", "One-sided sampling tester for rainbow-triangle freeness");
    tst->add_option("input", input, "Graph file")->required();
    TesterConfig tcfg;
    std::optional<std::int64_t> samples;
    tst->add_option("--epsilon", tcfg.epsilon, "Farness parameter")->check(CLI::Range(0.0, 1.0));
    tst->add_option("--exponent", tcfg.exponent, "Sample count grows as eps^-exponent");
    tst->add_option("--confidence", tcfg.confidence, "Target rejection probability on far inputs");
    tst->add_option("--samples", samples, "Override the sample count")->check(CLI::PositiveNumber);

    // decompose --------------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "Gallai tree of a rainbow-triangle-free coloring");
    dec->add_option("input", input, "Graph file")->required();
    dec->add_option("-o,--out", out, "Write the tree (json or dot per --format)");

    // verify -----------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "Re-derive every claim of a hardness bundle");
    ver->add_option("bundle", input, "Bundle directory")->required()->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (c.workers > 0) set_worker_count(c.workers);

    try {
        if (gen_gallai->parsed()) {
            const auto tree = random_gallai_tree(gen_n, RandomTreeParams{max_children}, c.seed);
            const auto g = compose(tree);
            io::write_text(out, io::dump(io::to_json(g)));
            if (!tree_out.empty())
                io::write_text(tree_out, c.format == "dot" ? io::to_dot(tree) : io::dump(io::to_json(tree)));
            return report(c, Json{{"n", g.n()}, {"depth", tree.depth()}, {"rainbow", count_rainbow_triangles(g)}, {"out", out}}, 0);
        }
        if (gen_corrupt->parsed()) {
            const auto g = load_colored(input);
            const auto total = static_cast<double>(g.pair_count());
            const auto pairs = static_cast<std::int64_t>(std::floor(noise * total + 1e-9));
            const auto edits = random_recoloring(g, pairs, c.seed);
            const auto bad = apply_edits(g, edits);
            io::write_text(out, io::dump(io::to_json(bad)));
            if (!transcript_out.empty()) io::write_text(transcript_out, io::to_jsonl(edits));
            Json payload{{"n", g.n()}, {"pairs", pairs}, {"recolored", edits.cost()}, {"out", out}};
            if (g.k() == 3) payload["rainbow"] = count_rainbow_triangles(bad);
            return report(c, std::move(payload), 0);
        }
        if (gen_tri->parsed() || gen_f4->parsed() || gen_d3->parsed()) {
            HardnessOptions opts;
            opts.method = method == "behrend" ? AvoidingMethod::behrend : AvoidingMethod::greedy;
            opts.count_host = !no_count;
            opts.budget = c.budget;
            HardnessInstance inst;
            if (gen_tri->parsed()) {
                ColoredGraph pattern(3, 3, 1);
                if (!pattern_path.empty()) pattern = load_colored(pattern_path);
                inst = triangle_hardness(pattern, avoided, m, factor, opts);
            } else if (gen_f4->parsed()) {
                inst = f4_hardness(m, factor, opts);
            } else {
                inst = d3_hardness(m, factor, opts);
            }
            io::write_bundle(inst, out);
            const bool ok = inst.claims.host_pair_disjoint && inst.claims.blowup_pair_disjoint &&
                            (no_count || inst.claims.counts_hold);
            return report(c, instance_payload(inst, out), ok ? 0 : 1);
        }
        if (count->parsed()) {
            const auto j = io::read_json(input);
            if (!pattern_path.empty()) {
                EnumerationOptions eo;
                eo.budget = c.budget;
                eo.collect = false;
                const auto pj = io::read_json(pattern_path);
                EnumerationResult r;
                std::string mode;
                if (looks_like_digraph(pj)) {
                    if (!looks_like_digraph(j)) throw PreconditionError("induced digraph counting needs a digraph host");
                    r = enumerate_copies(io::digraph_from_json(j), io::digraph_from_json(pj), eo);
                    mode = "induced-digraph";
                } else {
                    const auto host = looks_like_digraph(j) ? color_projection(io::digraph_from_json(j))
                                                            : io::colored_graph_from_json(j);
                    r = enumerate_copies(host, io::colored_graph_from_json(pj), eo);
                    mode = "colored-subgraph";
                }
                return report(c, Json{{"mode", mode}, {"count", r.occurrences}, {"injections", r.injections},
                                      {"automorphisms", r.automorphisms}, {"nodes", r.nodes}}, 0);
            }
            const auto g = looks_like_digraph(j) ? color_projection(io::digraph_from_json(j)) : io::colored_graph_from_json(j);
            if (avoid_color && !rainbow)
                return report(c, Json{{"mode", "avoiding"}, {"color", *avoid_color}, {"count", triangles_avoiding_color(g, *avoid_color)}}, 0);
            return report(c, Json{{"mode", "rainbow"}, {"count", count_rainbow_triangles(g)}}, 0);
        }
        if (rep->parsed()) {
            const auto g = load_colored(input);
            rcfg.seed = c.seed;
            const auto before = count_rainbow_triangles(g);
            const auto result = repair(g, rcfg);
            const auto fixed = apply_edits(g, result.transcript);
            const auto after = count_rainbow_triangles(fixed);
            if (!transcript_out.empty()) io::write_text(transcript_out, io::to_jsonl(result.transcript));
            if (!out.empty()) io::write_text(out, io::dump(io::to_json(fixed)));
            const double bound = rcfg.epsilon * g.n() * static_cast<double>(g.n());
            const bool certified = result.complete && after == 0;
            Json payload{{"n", g.n()},
                         {"epsilon", rcfg.epsilon},
                         {"certified", certified},
                         {"complete", result.complete},
                         {"cost", result.cost()},
                         {"cost_bound", bound},
                         {"within_bound", static_cast<double>(result.cost()) <= bound},
                         {"pre_count", before},
                         {"post_count", after},
                         {"partition_calls", result.partition_calls},
                         {"leaf_cost", result.leaf_cost},
                         {"cross_cost", result.cross_cost}};
            if (!result.complete) payload["diagnosis"] = result.diagnosis;
            return report(c, std::move(payload), certified ? 0 : 1);
        }
        if (tst->parsed()) {
            const auto g = load_colored(input);
            tcfg.seed = c.seed;
            tcfg.samples = samples;
            if (c.budget > 0) tcfg.budget = c.budget;
            const auto r = test_rainbow_free(g, tcfg);
            Json payload{{"accept", r.accept}, {"planned", r.planned}, {"drawn", r.drawn},
                         {"capped", r.capped}, {"exhaustive", r.exhaustive}};
            payload["witness"] = r.witness ? witness_json(*r.witness) : Json(nullptr);
            return report(c, std::move(payload), r.accept ? 0 : 1);
        }
        if (dec->parsed()) {
            const auto g = load_colored(input);
            GallaiTree tree;
            try {
                tree = decompose(g);
            } catch (const RainbowTriangleFound& e) {
                return report(c, Json{{"gallai", false}, {"witness", witness_json(e.witness())}}, 1);
            }
            const std::string text = c.format == "dot" ? io::to_dot(tree) : io::dump(io::to_json(tree));
            if (out.empty() && c.format == "dot") {
                std::cout << text;
                return 0;
            }
            Json payload{{"gallai", true}, {"depth", tree.depth()}, {"leaves", tree.leaf_count()}};
            if (out.empty())
                payload["tree"] = io::to_json(tree);
            else {
                io::write_text(out, text);
                payload["out"] = out;
            }
            return report(c, std::move(payload), 0);
        }
        if (ver->parsed()) {
            const auto v = io::verify_bundle(input, c.budget);
            Json payload = v.details;
            payload["ok"] = v.ok;
            payload["failures"] = v.failures;
            return report(c, std::move(payload), v.ok ? 0 : 1);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
