#include <doctest.h>

#include <functional>

#include "gallai_lab/gallai.hpp"
#include "gallai_lab/kernels.hpp"
#include "gallai_lab/rng.hpp"
#include "oracles.hpp"

using namespace gallai_lab;

namespace {

// Every cross graph between two parts is a single color from {a, b}.
bool is_monochromatic(const ColoredGraph& g, const MonochromaticPartition& mp) {
    const auto& parts = mp.partition.parts;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const Color first = oracle::raw_color(g, parts[i][0], parts[j][0]);
            if (first != mp.a && first != mp.b) return false;
            for (Vertex u : parts[i])
                for (Vertex v : parts[j])
                    if (oracle::raw_color(g, u, v) != first) return false;
        }
    return true;
}

ColoredGraph from_code(int n, std::uint64_t code) {
    ColoredGraph g(n, 3, 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            g.set_color(u, v, static_cast<Color>(code % 3 + 1));
            code /= 3;
        }
    return g;
}

}  // namespace

TEST_CASE("partition finder agrees with the all-partitions oracle on every K4 coloring") {
    for (std::uint64_t code = 0; code < 729; ++code) {
        const auto g = from_code(4, code);
        const auto found = monochromatic_partition(g);
        CHECK(found.has_value() == oracle::has_monochromatic_partition(g));
        if (found) {
            CHECK(found->partition.size() >= 2);
            CHECK(found->a < found->b);
            CHECK_NOTHROW(found->partition.validate(4));
            CHECK(is_monochromatic(g, *found));
        }
        if (oracle::rainbow_count(g) == 0) CHECK(found.has_value());
    }
}

TEST_CASE("partition finder on random six-vertex colorings") {
    Rng rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        const auto g = from_code(6, rng.uniform(0, 14'348'906));
        const auto found = monochromatic_partition(g);
        CHECK(found.has_value() == oracle::has_monochromatic_partition(g));
        if (found) CHECK(is_monochromatic(g, *found));
    }
}

TEST_CASE("partition finder preconditions") {
    CHECK_THROWS_AS(monochromatic_partition(ColoredGraph(4, 2, 1)), UnsupportedColorCount);
    CHECK_THROWS_AS(monochromatic_partition(ColoredGraph(1, 3, 1)), PreconditionError);
    const auto two = monochromatic_partition(ColoredGraph(2, 3, 3));
    REQUIRE(two.has_value());
    CHECK(two->partition.size() == 2);
}

TEST_CASE("compose produces Gallai colorings and decompose inverts it") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 1 + static_cast<int>(seed * 7 % 120);
        RandomTreeParams params;
        params.max_children = 2 + static_cast<int>(seed % 5);
        const auto tree = random_gallai_tree(n, params, seed);
        CHECK_NOTHROW(tree.validate());
        CHECK(tree.leaf_count() == n);
        const auto g = compose(tree);
        CHECK(g.n() == n);
        if (n >= 3) CHECK(count_rainbow_triangles(g) == 0);
        CHECK(compose(decompose(g)) == g);
    }
}

TEST_CASE("random trees are deterministic per seed") {
    const auto a = random_gallai_tree(50, {}, 9);
    CHECK(a == random_gallai_tree(50, {}, 9));
    CHECK_FALSE(compose(a) == compose(random_gallai_tree(50, {}, 10)));
    RandomTreeParams only_12;
    only_12.pair_weights = {1.0, 0.0, 0.0};
    const auto g = compose(random_gallai_tree(40, only_12, 1));
    CHECK(g.color_histogram()[3] == 0);
    CHECK_THROWS_AS(random_gallai_tree(0, {}, 1), PreconditionError);
}

TEST_CASE("decompose rejects rainbow colorings with the smallest witness") {
    auto g = compose(random_gallai_tree(12, {}, 4));
    // Force a rainbow triangle on (2,5,7).
    g.set_color(2, 5, 1);
    g.set_color(2, 7, 2);
    g.set_color(5, 7, 3);
    const auto expected = find_rainbow_triangle(g);
    REQUIRE(expected.has_value());
    try {
        decompose(g);
        FAIL("expected RainbowTriangleFound");
    } catch (const RainbowTriangleFound& e) {
        CHECK(e.witness() == *expected);
    }
}

TEST_CASE("tree validation") {
    CHECK_THROWS_AS(GallaiTree::node({1, 2}, {GallaiTree::leaf(0)}, PartPairColors(1, 1)).validate(), InvalidTree);
    PartPairColors cross(2, 3);
    auto bad_color = GallaiTree::node({1, 2}, {GallaiTree::leaf(0), GallaiTree::leaf(1)}, PartPairColors(2, 1));
    bad_color.cross = cross;
    CHECK_THROWS_AS(bad_color.validate(), InvalidTree);
    auto dup = GallaiTree::node({1, 2}, {GallaiTree::leaf(0), GallaiTree::leaf(0)}, PartPairColors(2, 1));
    CHECK_THROWS_AS(dup.validate(), InvalidTree);
    auto gap = GallaiTree::node({1, 2}, {GallaiTree::leaf(0), GallaiTree::leaf(2)}, PartPairColors(2, 1));
    CHECK_THROWS_AS(compose(gap), InvalidTree);
}

TEST_CASE("closeness cost picks the cheaper target, ties to a") {
    ColoredGraph g(4, 3, 1);
    VertexPartition p{{{0, 1}, {2, 3}}};
    // Cross pairs: (0,2)=1,(0,3)=1,(1,2)=2,(1,3)=2.
    g.set_color(1, 2, 2);
    g.set_color(1, 3, 2);
    const auto c = closeness_cost(g, p, 1, 2);
    CHECK(c.cost == 2);
    CHECK(c.cross_pairs == 4);
    CHECK(c.targets.at(0, 1) == 1);
    CHECK(c.within(0.5));
    CHECK_FALSE(c.within(0.49));
    CHECK(cost_against_targets(g, p, c.targets) == 2);
    g.set_color(1, 2, 3);
    const auto d = closeness_cost(g, p, 1, 2);
    CHECK(d.cost == 2);
    CHECK(d.targets.at(0, 1) == 1);
}

TEST_CASE("a monochromatic partition of Gallai parts composes to a Gallai coloring") {
    // Converse direction: glue rainbow-free parts along an (a,b)-monochromatic partition.
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int parts = static_cast<int>(rng.uniform(2, 5));
        const Color a = static_cast<Color>(rng.uniform(1, 2));
        const Color b = static_cast<Color>(rng.uniform(a + 1, 3));
        std::vector<GallaiTree> children;
        int next = 0;
        for (int i = 0; i < parts; ++i) {
            const int size = static_cast<int>(rng.uniform(1, 8));
            auto sub = random_gallai_tree(size, {}, rng.next());
            std::function<void(GallaiTree&)> shift = [&](GallaiTree& t) {
                if (t.is_leaf()) t.vertex += next;
                for (auto& c : t.children) shift(c);
            };
            shift(sub);
            next += size;
            children.push_back(std::move(sub));
        }
        PartPairColors cross(parts, a);
        for (int i = 0; i < parts; ++i)
            for (int j = i + 1; j < parts; ++j) cross.set(i, j, rng.bernoulli(0.5) ? a : b);
        const auto g = compose(GallaiTree::node({a, b}, std::move(children), cross));
        CHECK(oracle::rainbow_count(g) == 0);
    }
}
