#include <doctest.h>

#include <cstdlib>

#include "gallai_lab/copies.hpp"
#include "gallai_lab/hardness.hpp"
#include "gallai_lab/kernels.hpp"
#include "gallai_lab/rng.hpp"

using namespace gallai_lab;

namespace {

ColoredGraph random_coloring(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    ColoredGraph g(n, k, 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_color(u, v, static_cast<Color>(rng.uniform(1, k)));
    return g;
}

Digraph random_digraph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    Digraph d(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.bernoulli(p)) d.add_edge(u, v);
    return d;
}

const ColoredGraph rainbow_k3(3, 3, std::vector<std::uint8_t>{1, 2, 3});

}  // namespace

TEST_CASE("rainbow triangle in itself is one occurrence") {
    const auto r = enumerate_copies(rainbow_k3, rainbow_k3);
    CHECK(r.occurrences == 1);
    CHECK(r.injections == 1);
    CHECK(r.automorphisms == 1);
    REQUIRE(r.family.size() == 1);
    CHECK(r.family.copies[0] == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("automorphism counts of small patterns") {
    CHECK(automorphisms(ColoredGraph(3, 3, 1)).size() == 6);
    CHECK(automorphisms(rainbow_k3).size() == 1);
    CHECK(automorphisms(f4_pattern()).size() == 4);
    CHECK(automorphisms(d3_pattern()).size() == 1);
}

TEST_CASE("injections equal occurrences times automorphisms") {
    const std::vector<ColoredGraph> patterns{ColoredGraph(3, 3, 1), rainbow_k3, f4_pattern(), ColoredGraph(4, 3, 2)};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto host = random_coloring(14, 3, seed);
        for (const auto& p : patterns) {
            const auto r = enumerate_copies(host, p);
            CHECK(r.injections == r.occurrences * r.automorphisms);
            CHECK(static_cast<std::int64_t>(r.family.size()) == r.occurrences);
            for (const auto& t : r.family.copies) CHECK(is_copy(host, p, t));
            const auto s = serial::enumerate_copies(host, p);
            CHECK(s.injections == r.injections);
            CHECK(s.family.copies == r.family.copies);
        }
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto host = random_digraph(12, 0.35, seed);
        const auto r = enumerate_copies(host, d3_pattern());
        CHECK(r.injections == r.occurrences * r.automorphisms);
        for (const auto& t : r.family.copies) CHECK(is_induced_copy(host, d3_pattern(), t));
        CHECK(serial::enumerate_copies(host, d3_pattern()).family.copies == r.family.copies);
    }
}

TEST_CASE("rainbow count equals rainbow K3 occurrences") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const auto host = random_coloring(20 + static_cast<int>(seed), 3, seed);
        CHECK(count_rainbow_triangles(host) == enumerate_copies(host, rainbow_k3).occurrences);
    }
}

TEST_CASE("induced copies respect absent edges") {
    Digraph host(3);
    host.add_edge(0, 2);
    host.add_edge(1, 2);
    host.add_edge(2, 1);
    CHECK(enumerate_copies(host, d3_pattern()).occurrences == 1);
    host.add_edge(0, 1);
    CHECK(enumerate_copies(host, d3_pattern()).occurrences == 0);
}

TEST_CASE("enumeration refuses beyond its budget") {
    const auto host = random_coloring(30, 3, 1);
    EnumerationOptions opts;
    opts.budget = 100;
    CHECK_THROWS_AS(enumerate_copies(host, ColoredGraph(3, 3, 1), opts), BudgetExceeded);
    opts.budget = 0;
    opts.max_pattern_size = 2;
    CHECK_THROWS_AS(enumerate_copies(host, ColoredGraph(3, 3, 1), opts), PreconditionError);
}

TEST_CASE("budget default honours the environment") {
    ::setenv("GALLAI_LAB_BUDGET", "1234", 1);
    CHECK(default_enumeration_budget() == 1234);
    ::setenv("GALLAI_LAB_BUDGET", "junk", 1);
    CHECK(default_enumeration_budget() == 1'000'000'000ULL);
    ::unsetenv("GALLAI_LAB_BUDGET");
    CHECK(default_enumeration_budget() == 1'000'000'000ULL);
}

TEST_CASE("pair-disjointness") {
    CopyFamily fam(3);
    fam.copies = {{0, 1, 2}, {3, 4, 5}};
    CHECK(verify_pair_disjoint(fam).pair_disjoint);
    fam.copies = {{1, 2, 3}, {2, 3, 4}};
    const auto r = verify_pair_disjoint(fam);
    CHECK_FALSE(r.pair_disjoint);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0] == std::pair<int, int>{0, 1});
    fam.copies = {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}};
    CHECK(verify_pair_disjoint(fam).pair_disjoint);
}

TEST_CASE("copy family validation") {
    CopyFamily fam(3);
    fam.copies = {{0, 1, 1}};
    CHECK_THROWS_AS(fam.validate(5), InvalidFamily);
    fam.copies = {{0, 1}};
    CHECK_THROWS_AS(fam.validate(5), InvalidFamily);
    fam.copies = {{0, 1, 5}};
    CHECK_THROWS_AS(fam.validate(5), InvalidFamily);
}
