#include <doctest.h>

#include <cmath>
#include <limits>

#include "gallai_lab/gallai.hpp"
#include "gallai_lab/kernels.hpp"
#include "gallai_lab/repair.hpp"
#include "gallai_lab/rng.hpp"
#include "oracles.hpp"

using namespace gallai_lab;

namespace {

ColoredGraph corrupted(int n, std::int64_t pairs, std::uint64_t seed) {
    const auto g = compose(random_gallai_tree(n, {}, seed));
    return apply_edits(g, random_recoloring(g, pairs, seed + 1000));
}

// Recount of cost and e(P) straight from the raw table.
std::pair<std::int64_t, std::int64_t> raw_cost(const ColoredGraph& g, const ApproximatePartition& r) {
    std::vector<int> owner(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < r.partition.parts.size(); ++i)
        for (Vertex v : r.partition.parts[i]) owner[v] = static_cast<int>(i);
    std::int64_t cost = 0, cross = 0;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if (owner[u] == owner[v]) continue;
            ++cross;
            cost += oracle::raw_color(g, u, v) != r.targets.at(owner[u], owner[v]);
        }
    return {cost, cross};
}

}  // namespace

TEST_CASE("config validation and asymptotic constants") {
    RepairConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.batches = 1;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    const auto big = RepairConfig::with_asymptotic_constants(0.1);
    const double s = 128.0 * std::log(2000.0 / 0.01) / 0.01;
    CHECK(big.seed_sample == static_cast<std::int64_t>(std::ceil(s)));
    CHECK(big.batches == 12800);
    CHECK(big.batch_size > 1'000'000'000'000LL);
    CHECK(big.density < 1e-12);
}

TEST_CASE("approximate partition on exact Gallai colorings is certified") {
    RepairConfig cfg;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = compose(random_gallai_tree(80, {}, seed));
        cfg.seed = seed;
        const auto r = approximate_partition(g, cfg);
        REQUIRE(r.certified);
        CHECK(certify(g, r, cfg.epsilon));
        const auto [cost, cross] = raw_cost(g, r);
        CHECK(cost == r.cost);
        CHECK(cross == r.cross_pairs);
        CHECK(static_cast<double>(cost) <= cfg.epsilon * static_cast<double>(cross));
    }
}

TEST_CASE("certification rejects tampered results") {
    const auto g = corrupted(90, 8, 2);
    RepairConfig cfg;
    cfg.seed = 5;
    auto r = approximate_partition(g, cfg);
    REQUIRE(r.certified);
    CHECK(certify(g, r, cfg.epsilon));
    auto wrong_cost = r;
    wrong_cost.cost += 1;
    CHECK_FALSE(certify(g, wrong_cost, cfg.epsilon));
    auto bad_target = r;
    bad_target.targets.set(0, 1, 6 - r.a - r.b);
    CHECK_FALSE(certify(g, bad_target, cfg.epsilon));
    auto broken = r;
    broken.partition.parts.back().push_back(broken.partition.parts.front().front());
    CHECK_FALSE(certify(g, broken, cfg.epsilon));
}

TEST_CASE("vertex star and sparse color routes") {
    ColoredGraph star(20, 3, 2);
    for (Vertex v = 1; v < 20; ++v) star.set_color(0, v, 1);
    star.set_color(1, 2, 3);
    const auto r = approximate_partition(star, {});
    REQUIRE(r.certified);
    CHECK(r.route == PartitionRoute::vertex_star);
    CHECK(certify(star, r, 0.1));

    // No vertex is nearly monochromatic, yet color 3 is rare.
    ColoredGraph sparse(40, 3, 1);
    for (Vertex u = 0; u < 40; ++u)
        for (Vertex v = u + 1; v < 40; ++v)
            if ((u + v) % 2) sparse.set_color(u, v, 2);
    sparse.set_color(0, 2, 3);
    const auto s = approximate_partition(sparse, {});
    REQUIRE(s.certified);
    CHECK(s.route == PartitionRoute::sparse_color);
    CHECK(s.cost == 1);
    CHECK(certify(sparse, s, 0.1));
}

TEST_CASE("layered sets are nested and cover the vertices") {
    const auto g = compose(random_gallai_tree(120, {}, 7));
    std::vector<Vertex> seed_set{3, 17, 40, 41, 77, 90};
    const auto mp = monochromatic_partition(g.induced(seed_set));
    REQUIRE(mp.has_value());
    std::vector<std::vector<Vertex>> seed_parts;
    for (const auto& part : mp->partition.parts) {
        std::vector<Vertex> mapped;
        for (Vertex v : part) mapped.push_back(seed_set[v]);
        seed_parts.push_back(mapped);
    }
    RepairConfig cfg;
    const auto layers = grow_layered_sets(g, seed_set, seed_parts, mp->a, mp->b, cfg);
    for (const auto& chain : layers.chains) {
        REQUIRE(chain.size() == static_cast<std::size_t>(cfg.batches));
        for (std::size_t l = 0; l + 1 < chain.size(); ++l)
            CHECK(std::includes(chain[l + 1].begin(), chain[l + 1].end(), chain[l].begin(), chain[l].end()));
    }
    std::vector<int> seen(120, 0);
    for (Vertex v : seed_set) ++seen[v];
    for (const auto& part : layers.parts)
        for (Vertex v : part) ++seen[v];
    for (Vertex v : layers.boundary) ++seen[v];
    for (Vertex v : layers.rest) ++seen[v];
    for (int v = 0; v < 120; ++v) CHECK(seen[v] == 1);
    CHECK(layers.level >= 1);
    CHECK(layers.level <= cfg.batches - 1);
}

TEST_CASE("repair removes every rainbow triangle within the cost bound") {
    RepairConfig cfg;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = corrupted(120, 14, seed);
        cfg.seed = seed;
        const auto r = repair(g, cfg);
        REQUIRE(r.complete);
        const auto fixed = apply_edits(g, r.transcript);
        CHECK(oracle::rainbow_count(fixed) == 0);
        CHECK(static_cast<double>(r.cost()) <= cfg.epsilon * 120 * 120);
        CHECK(r.cost() == r.leaf_cost + r.cross_cost);
        CHECK(r.tree.size == 120);
    }
}

TEST_CASE("repair is deterministic per seed") {
    const auto g = corrupted(100, 10, 3);
    RepairConfig cfg;
    cfg.seed = 42;
    const auto a = repair(g, cfg);
    const auto b = repair(g, cfg);
    CHECK(a.transcript == b.transcript);
    CHECK(a.partition_calls == b.partition_calls);
}

TEST_CASE("repair on a small graph recolors every leaf to color 1") {
    ColoredGraph k3(3, 3, std::vector<std::uint8_t>{1, 2, 3});
    RepairConfig cfg;
    cfg.epsilon = 0.5;  // 3 < 0.5 * 3 fails, so the root splits
    const auto r = repair(k3, cfg);
    CHECK(r.complete);
    CHECK(count_rainbow_triangles(apply_edits(k3, r.transcript)) == 0);
}

TEST_CASE("tester sample count") {
    CHECK(tester_sample_count(0.5, 1.0, 0.99) == static_cast<std::int64_t>(std::ceil(std::log(100.0) / 0.5)));
    CHECK(tester_sample_count(0.1, 36.0, 0.99) == std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(tester_sample_count(0.0, 1.0, 0.9), PreconditionError);
    CHECK_THROWS_AS(tester_sample_count(0.1, 1.0, 1.0), PreconditionError);
}

TEST_CASE("tester is one-sided and caps at its budget") {
    TesterConfig cfg;
    cfg.samples = 2000;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.seed = seed;
        const auto g = compose(random_gallai_tree(60, {}, seed));
        const auto r = test_rainbow_free(g, cfg);
        CHECK(r.accept);
        CHECK(r.drawn == 2000);
    }
    ColoredGraph k3(3, 3, std::vector<std::uint8_t>{1, 2, 3});
    const auto small = test_rainbow_free(k3, cfg);
    CHECK_FALSE(small.accept);
    CHECK(small.exhaustive);
    CHECK(*small.witness == std::array<Vertex, 3>{0, 1, 2});

    TesterConfig big;
    big.budget = 500;
    const auto capped = test_rainbow_free(compose(random_gallai_tree(60, {}, 1)), big);
    CHECK(capped.capped);
    CHECK(capped.drawn == 500);
    CHECK(capped.accept);
}

TEST_CASE("tester rejects a dense rainbow coloring") {
    Rng rng(1);
    ColoredGraph g(50, 3, 1);
    for (int u = 0; u < 50; ++u)
        for (int v = u + 1; v < 50; ++v) g.set_color(u, v, static_cast<Color>(rng.uniform(1, 3)));
    TesterConfig cfg;
    cfg.samples = 200;
    const auto r = test_rainbow_free(g, cfg);
    REQUIRE_FALSE(r.accept);
    const auto w = *r.witness;
    const Color x = g.color(w[0], w[1]), y = g.color(w[0], w[2]), z = g.color(w[1], w[2]);
    CHECK((x != y && y != z && x != z));
}
