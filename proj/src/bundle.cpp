#include <cmath>

#include "gallai_lab/io.hpp"
#include "gallai_lab/kernels.hpp"

namespace gallai_lab::io {

namespace {

HardnessKind kind_from_string(const std::string& s) {
    for (auto k : {HardnessKind::triangle, HardnessKind::f4, HardnessKind::d3})
        if (s == to_string(k)) return k;
    throw ParseError("unknown instance kind \"" + s + "\"");
}

Json graph_json(const std::variant<ColoredGraph, Digraph>& g) {
    return std::visit([](const auto& x) { return to_json(x); }, g);
}

EquationFamily equations_for(HardnessKind kind, int f) {
    switch (kind) {
        case HardnessKind::triangle: return EquationFamily::weighted_triangles(f);
        case HardnessKind::f4: return EquationFamily::four_term();
        case HardnessKind::d3: return EquationFamily::three_term_progressions();
    }
    return {};
}

// Tuple with position i moved to the pattern vertex it plays.
std::vector<Vertex> by_role(const CopyFamily& fam, const std::vector<Vertex>& t) {
    std::vector<Vertex> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[static_cast<std::size_t>(fam.role_map[i])] = t[i];
    return out;
}

}  // namespace

void write_bundle(const HardnessInstance& inst, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "host.json", dump(graph_json(inst.host)));
    write_text(dir / "blowup.json", dump(graph_json(inst.blown)));

    Json host_copies = Json::array(), blowup_copies = Json::array();
    for (const auto& c : inst.host_family.copies) host_copies.push_back(c);
    for (const auto& c : inst.blowup_family.copies) blowup_copies.push_back(c);
    write_text(dir / "family.json", dump(Json{{"kind", to_string(inst.kind)},
                                              {"pattern", graph_json(inst.pattern)},
                                              {"role_map", inst.host_family.role_map},
                                              {"host_copies", std::move(host_copies)},
                                              {"blowup_copies", std::move(blowup_copies)}}));

    Json equations = Json::array();
    for (const auto& c : inst.equations.constraints) equations.push_back(c.describe());
    write_text(dir / "claims.json", dump(Json{{"kind", to_string(inst.kind)},
                                              {"m", inst.m},
                                              {"factor", inst.factor},
                                              {"pattern_size", inst.pattern_size},
                                              {"avoided", inst.avoided},
                                              {"set", inst.set},
                                              {"equations", std::move(equations)},
                                              {"claims", to_json(inst.claims)}}));
}

BundleVerdict verify_bundle(const std::filesystem::path& dir, std::uint64_t budget) {
    BundleVerdict verdict;
    auto fail = [&](std::string what) {
        verdict.ok = false;
        verdict.failures.push_back(std::move(what));
    };

    const Json claims_file = read_json(dir / "claims.json");
    const Json family_file = read_json(dir / "family.json");
    const Json host_file = read_json(dir / "host.json");
    const Json blowup_file = read_json(dir / "blowup.json");

    const auto kind = kind_from_string(claims_file.at("kind").get<std::string>());
    if (family_file.at("kind") != claims_file.at("kind")) fail("family.json and claims.json disagree on the kind");
    const auto m = claims_file.at("m").get<std::int64_t>();
    const int factor = claims_file.at("factor").get<int>();
    const int f = claims_file.at("pattern_size").get<int>();
    const Color avoided = claims_file.at("avoided").get<int>();
    const auto set = claims_file.at("set").get<std::vector<std::int64_t>>();
    const Json& claimed = claims_file.at("claims");
    const bool digraph = kind == HardnessKind::d3;

    auto family_part = [&](const char* key) {
        CopyFamily fam(f);
        fam.role_map = family_file.at("role_map").get<std::vector<int>>();
        if (fam.role_map.size() != static_cast<std::size_t>(f)) throw ParseError("role_map has the wrong length");
        for (const auto& c : family_file.at(key)) fam.copies.push_back(c.get<std::vector<Vertex>>());
        return fam;
    };
    const CopyFamily host_family = family_part("host_copies");
    const CopyFamily blowup_family = family_part("blowup_copies");

    // The avoiding set.
    const auto eqs = equations_for(kind, f);
    const auto avoidance = verify_avoiding_set(set, eqs);
    verdict.details["set_size"] = set.size();
    verdict.details["set_avoids"] = avoidance.avoids;
    if (!avoidance.avoids) {
        verdict.details["set_witness"] = avoidance.witness;
        fail("set contains a solution of " + eqs.constraints[static_cast<std::size_t>(avoidance.constraint)].describe());
    }
    if (!set.empty() && (set.front() < 1 || set.back() > m)) fail("set leaves [1..m]");

    // Planted counts.
    const auto expected_host = m * static_cast<std::int64_t>(set.size());
    verdict.details["planted_host"] = host_family.size();
    if (static_cast<std::int64_t>(host_family.size()) != expected_host) fail("host family size differs from m|S|");
    if (claimed.at("planted_host").get<std::int64_t>() != static_cast<std::int64_t>(host_family.size()))
        fail("claimed planted_host differs from the family");

    auto check_disjoint = [&](const CopyFamily& fam, const char* name) {
        const auto report = verify_pair_disjoint(fam);
        verdict.details[std::string(name) + "_pair_disjoint"] = report.pair_disjoint;
        if (!report.pair_disjoint) {
            const auto [i, j] = report.violations.front();
            verdict.details[std::string(name) + "_witness"] =
                Json{{"copies", Json::array({i, j})},
                     {"tuples", Json::array({fam.copies[static_cast<std::size_t>(i)], fam.copies[static_cast<std::size_t>(j)]})},
                     {"violations", report.violations.size()}};
            fail(std::string(name) + " family is not pair-disjoint");
        }
        if (claimed.at(std::string(name) + "_pair_disjoint").get<bool>() != report.pair_disjoint)
            fail(std::string("claimed ") + name + "_pair_disjoint is wrong");
    };

    const int prime = (factor >= 2 * f) ? design_family(factor, f).prime : 0;
    const auto expected_blowup = expected_host * prime * prime;
    verdict.details["planted_blowup"] = blowup_family.size();
    if (static_cast<std::int64_t>(blowup_family.size()) != expected_blowup)
        fail("blowup family size differs from m|S|p^2");
    if (claimed.at("planted_blowup").get<std::int64_t>() != static_cast<std::int64_t>(blowup_family.size()))
        fail("claimed planted_blowup differs from the family");

    auto check_copies = [&](const auto& g, const auto& pattern, const CopyFamily& fam, const char* name) {
        try {
            fam.validate(g.n());
        } catch (const InvalidFamily& e) {
            fail(std::string(name) + " family invalid: " + e.what());
            return;
        }
        for (std::size_t c = 0; c < fam.copies.size(); ++c) {
            const auto t = by_role(fam, fam.copies[c]);
            bool ok;
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Digraph>)
                ok = is_induced_copy(g, pattern, t);
            else
                ok = is_copy(g, pattern, t);
            if (!ok) {
                verdict.details[std::string(name) + "_bad_copy"] = Json{{"index", c}, {"tuple", fam.copies[c]}};
                fail(std::string(name) + " copy " + std::to_string(c) + " is not a copy of the pattern");
                return;
            }
        }
    };

    std::int64_t host_count = 0, bound = 0;
    if (digraph) {
        const auto pattern = digraph_from_json(family_file.at("pattern"));
        const auto host = digraph_from_json(host_file);
        const auto blown = digraph_from_json(blowup_file);
        if (!blown.same_edges(blowup(host, factor))) fail("blowup.json is not the blowup of host.json");
        check_copies(host, pattern, host_family, "host");
        check_copies(blown, pattern, blowup_family, "blowup");
        EnumerationOptions eo;
        eo.budget = budget;
        eo.collect = false;
        host_count = enumerate_copies(host, pattern, eo).occurrences;
        bound = expected_host;
    } else {
        const auto pattern = colored_graph_from_json(family_file.at("pattern"));
        const auto host = colored_graph_from_json(host_file);
        const auto blown = colored_graph_from_json(blowup_file);
        if (!(blown == blowup(host, factor, avoided))) fail("blowup.json is not the blowup of host.json");
        check_copies(host, pattern, host_family, "host");
        check_copies(blown, pattern, blowup_family, "blowup");
        if (kind == HardnessKind::triangle) {
            host_count = triangles_avoiding_color(host, avoided);
            bound = static_cast<std::int64_t>(f) * f * f * f * m * m;
        } else {
            EnumerationOptions eo;
            eo.budget = budget;
            eo.collect = false;
            host_count = enumerate_copies(host, pattern, eo).occurrences;
            bound = expected_host;
        }
    }
    check_disjoint(host_family, "host");
    check_disjoint(blowup_family, "blowup");

    const bool holds = kind == HardnessKind::triangle ? host_count <= bound : host_count == bound;
    verdict.details["host_count"] = host_count;
    verdict.details["host_count_bound"] = bound;
    verdict.details["counts_hold"] = holds;
    if (!holds) fail("host count " + std::to_string(host_count) + " violates the bound " + std::to_string(bound));
    if (claimed.at("host_count").get<std::int64_t>() != host_count) fail("claimed host_count differs from the recount");
    if (claimed.at("host_count_bound").get<std::int64_t>() != bound) fail("claimed host_count_bound is wrong");

    const double eps = static_cast<double>(set.size()) / (4.0 * std::pow(f, 4) * static_cast<double>(m));
    verdict.details["implied_epsilon"] = eps;
    if (std::abs(claimed.at("implied_epsilon").get<double>() - eps) > 1e-12 * std::max(1.0, eps))
        fail("claimed implied_epsilon differs");
    return verdict;
}

}  // namespace gallai_lab::io
