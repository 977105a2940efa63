#include <doctest.h>

#include <numeric>

#include "gallai_lab/graph.hpp"
#include "gallai_lab/hardness.hpp"
#include "gallai_lab/rng.hpp"

using namespace gallai_lab;

TEST_CASE("colored graph stores colors symmetrically in the triangle table") {
    ColoredGraph g(4, 3, 1);
    g.set_color(2, 1, 3);
    CHECK(g.color(1, 2) == 3);
    CHECK(g.color(2, 1) == 3);
    CHECK(g.table()[ColoredGraph::pair_index(4, 1, 2)] == 3);
    CHECK(g.pair_count() == 6);
    CHECK_THROWS_AS(g.set_color(0, 1, 4), ColorOutOfRange);
    CHECK_THROWS_AS(ColoredGraph(0, 3), PreconditionError);
    CHECK_THROWS_AS(ColoredGraph(3, 3, std::vector<std::uint8_t>{1, 2, 5}), ColorOutOfRange);
}

TEST_CASE("color degrees and histogram") {
    ColoredGraph g(4, 3, 2);
    g.set_color(0, 1, 1);
    g.set_color(0, 2, 1);
    CHECK(g.color_degree(0, 1) == 2);
    CHECK(g.color_degree(0, 2) == 1);
    const auto h = g.color_histogram();
    CHECK(h[1] == 2);
    CHECK(h[2] == 4);
    CHECK(h[3] == 0);
}

TEST_CASE("induced subgraph relabels in the given order") {
    ColoredGraph g(5, 3, 1);
    g.set_color(4, 2, 3);
    const std::vector<Vertex> vs{4, 2};
    const auto h = g.induced(vs);
    CHECK(h.n() == 2);
    CHECK(h.color(0, 1) == 3);
}

TEST_CASE("digraph rejects loops and parallel edges") {
    Digraph d(3);
    d.add_edge(0, 1);
    d.add_edge(1, 0);
    CHECK_THROWS_AS(d.add_edge(0, 1), PreconditionError);
    CHECK_THROWS_AS(d.add_edge(2, 2), PreconditionError);
    CHECK_THROWS_AS(d.add_edge(0, 3), PreconditionError);
    CHECK(d.pair_multiplicity(0, 1) == 2);
    d.remove_edge(0, 1);
    CHECK(d.edge_count() == 1);
    CHECK(d.edges().front() == std::pair<Vertex, Vertex>{1, 0});
}

TEST_CASE("projection of an empty digraph is all count-0") {
    const auto g = color_projection(Digraph(3));
    for (auto c : g.table()) CHECK(c == color_of_multiplicity(0));
}

TEST_CASE("projection of D3 is the rainbow triangle") {
    const auto g = color_projection(d3_pattern());
    CHECK(g.color(0, 1) == 1);
    CHECK(g.color(0, 2) == 2);
    CHECK(g.color(1, 2) == 3);
}

TEST_CASE("reversing a single edge leaves the projection unchanged") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 6 + trial % 5;
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.bernoulli(0.4)) d.add_edge(u, v);
        const auto before = color_projection(d);
        for (const auto [u, v] : std::vector(d.edges())) {
            if (d.has_edge(v, u)) continue;
            Digraph r = d;
            r.remove_edge(u, v);
            r.add_edge(v, u);
            CHECK(color_projection(r) == before);
        }
    }
}

TEST_CASE("apply_edits and its inverse") {
    ColoredGraph g(5, 3, 1);
    SUBCASE("empty transcript") { CHECK(apply_edits(g, {}) == g); }
    SUBCASE("single recolor then inverse") {
        EditTranscript t{{{1, 3, 1, 2}}};
        const auto h = apply_edits(g, t);
        CHECK(h.color(1, 3) == 2);
        CHECK(t.cost() == 1);
        CHECK(apply_edits(h, t.inverse()) == g);
    }
    SUBCASE("stale old color names the pair") {
        EditTranscript t{{{1, 3, 2, 3}}};
        try {
            apply_edits(g, t);
            FAIL("expected a conflict");
        } catch (const EditConflict& e) {
            CHECK(e.u() == 1);
            CHECK(e.v() == 3);
        }
    }
    SUBCASE("repeated pair is a conflict") {
        EditTranscript t{{{1, 3, 1, 2}, {3, 1, 2, 3}}};
        CHECK_THROWS_AS(apply_edits(g, t), EditConflict);
    }
    SUBCASE("no-op entries cost nothing") {
        EditTranscript t{{{0, 1, 1, 1}, {0, 2, 1, 3}}};
        CHECK(t.cost() == 1);
    }
}

TEST_CASE("random recoloring touches exactly the requested number of distinct pairs") {
    ColoredGraph g(60, 3, 2);
    for (std::int64_t pairs : {0, 1, 17, 885, 1770}) {
        const auto t = random_recoloring(g, pairs, 7);
        CHECK(static_cast<std::int64_t>(t.edits.size()) == pairs);
        CHECK(t.cost() == pairs);
        const auto h = apply_edits(g, t);  // throws on repeated pairs
        std::int64_t changed = 0;
        for (std::size_t i = 0; i < g.pair_count(); ++i) changed += g.table()[i] != h.table()[i];
        CHECK(changed == pairs);
    }
    CHECK(random_recoloring(g, 40, 3) == random_recoloring(g, 40, 3));
    CHECK_THROWS_AS(random_recoloring(g, 1771, 1), PreconditionError);
}

TEST_CASE("cross pair counts") {
    VertexPartition singles;
    for (int v = 0; v < 5; ++v) singles.parts.push_back({v});
    CHECK(cross_pair_count(singles) == 10);
    CHECK(cross_pair_count(VertexPartition{{{0, 1, 2, 3, 4}}}) == 0);
    CHECK_THROWS_AS(cross_pair_count(VertexPartition{{{0, 1}, {1, 2}}}), InvalidPartition);
    CHECK_THROWS_AS(VertexPartition({{{0, 2}}}).validate(3), InvalidPartition);
    // Two parts (m-d, d) give d(m-d), above the bound d(m-d)/2.
    const std::int64_t m = 31, d = 9;
    const std::vector<std::int64_t> sizes{m - d, d};
    CHECK(cross_pair_count(sizes) == d * (m - d));
    CHECK(balanced_cross_bound_holds(sizes, d));
}

TEST_CASE("balanced cross bound on random vectors") {
    Rng rng(5);
    for (int trial = 0; trial < 3000; ++trial) {
        const int p = static_cast<int>(rng.uniform(2, 12));
        const std::int64_t m = rng.uniform(2, 400);
        std::vector<std::int64_t> a(static_cast<std::size_t>(p), 0);
        for (std::int64_t i = 0; i < m; ++i) ++a[static_cast<std::size_t>(rng.uniform(0, p - 1))];
        const std::int64_t top = *std::max_element(a.begin(), a.end());
        if (top == m) continue;
        const std::int64_t d = rng.uniform(1, m - top);
        // Independent evaluation in integers.
        std::int64_t sum = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) sum += a[i] * a[j];
        CHECK(2 * sum > d * (m - d));
        CHECK(balanced_cross_bound_holds(a, d));
    }
    const std::vector<std::int64_t> whole{10, 0};
    CHECK_THROWS_AS(balanced_cross_bound_holds(whole, 1), PreconditionError);
}
