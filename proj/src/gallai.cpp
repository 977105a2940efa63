#include "gallai_lab/gallai.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "gallai_lab/kernels.hpp"
#include "gallai_lab/rng.hpp"

namespace gallai_lab {

PartPairColors::PartPairColors(int parts, Color fill)
    : parts_(parts),
      colors_(static_cast<std::size_t>(parts) * static_cast<std::size_t>(std::max(parts - 1, 0)) / 2,
              static_cast<std::uint8_t>(fill)) {}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (x > y) std::swap(x, y);
        parent_[y] = x;  // root is the smallest vertex
    }

private:
    std::vector<int> parent_;
};

// Components of the color-c graph, each sorted, ordered by smallest vertex.
std::vector<std::vector<Vertex>> color_components(const ColoredGraph& g, Color c) {
    const int n = g.n();
    DisjointSets ds(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (g.color(u, v) == c) ds.unite(u, v);
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 0; v < n; ++v) {
        const int r = ds.find(v);
        if (slot[r] == -1) {
            slot[r] = static_cast<int>(parts.size());
            parts.emplace_back();
        }
        parts[slot[r]].push_back(v);
    }
    return parts;
}

// Merges the lowest-indexed non-monochromatic pair of parts until none is left.
void merge_until_monochromatic(const ColoredGraph& g, std::vector<std::vector<Vertex>>& parts) {
    const int n = g.n();
    std::vector<int> owner(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (Vertex v : parts[i]) owner[v] = static_cast<int>(i);

    // mask[i][j]: bit per color seen between parts i and j.
    const std::size_t p = parts.size();
    std::vector<std::vector<std::uint8_t>> mask(p, std::vector<std::uint8_t>(p, 0));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            const int i = owner[u];
            const int j = owner[v];
            if (i == j) continue;
            const auto bit = static_cast<std::uint8_t>(1u << g.color(u, v));
            mask[i][j] |= bit;
            mask[j][i] |= bit;
        }

    std::vector<int> alive(p);
    std::iota(alive.begin(), alive.end(), 0);
    for (;;) {
        int merge_i = -1;
        int merge_j = -1;
        for (std::size_t x = 0; x < alive.size() && merge_i < 0; ++x)
            for (std::size_t y = x + 1; y < alive.size(); ++y)
                if (std::popcount(static_cast<unsigned>(mask[alive[x]][alive[y]])) > 1) {
                    merge_i = static_cast<int>(x);
                    merge_j = static_cast<int>(y);
                    break;
                }
        if (merge_i < 0) break;
        const int keep = alive[merge_i];
        const int gone = alive[merge_j];
        for (int other : alive) {
            if (other == keep || other == gone) continue;
            mask[keep][other] |= mask[gone][other];
            mask[other][keep] = mask[keep][other];
        }
        auto& dst = parts[keep];
        dst.insert(dst.end(), parts[gone].begin(), parts[gone].end());
        std::sort(dst.begin(), dst.end());
        parts[gone].clear();
        alive.erase(alive.begin() + merge_j);
    }
    std::vector<std::vector<Vertex>> out;
    out.reserve(alive.size());
    for (int i : alive) out.push_back(std::move(parts[i]));
    parts = std::move(out);
}

void require_gallai_input(const ColoredGraph& g) {
    if (g.k() != 3)
        throw UnsupportedColorCount("Gallai structure needs k = 3, got k = " + std::to_string(g.k()));
}

// Returns the leaves of `t` while coloring its cross pairs into g.
std::vector<Vertex> paint(const GallaiTree& t, ColoredGraph& g) {
    if (t.is_leaf()) return {t.vertex};
    std::vector<std::vector<Vertex>> child_leaves;
    child_leaves.reserve(t.children.size());
    for (const auto& c : t.children) child_leaves.push_back(paint(c, g));
    const int m = static_cast<int>(child_leaves.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const Color c = t.cross.at(i, j);
            for (Vertex u : child_leaves[i])
                for (Vertex v : child_leaves[j]) g.set_color(u, v, c);
        }
    std::vector<Vertex> all;
    for (auto& l : child_leaves) all.insert(all.end(), l.begin(), l.end());
    return all;
}

void validate_node(const GallaiTree& t) {
    if (t.is_leaf()) {
        if (t.vertex < 0) throw InvalidTree("leaf without a vertex");
        return;
    }
    if (t.children.size() < 2) throw InvalidTree("internal node with fewer than two children");
    const auto [a, b] = t.pair;
    if (a < 1 || a > 3 || b < 1 || b > 3 || a == b)
        throw InvalidTree("color pair (" + std::to_string(a) + "," + std::to_string(b) + ") invalid");
    const int m = static_cast<int>(t.children.size());
    if (t.cross.parts() != m) throw InvalidTree("cross table size differs from child count");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const Color c = t.cross.at(i, j);
            if (c != a && c != b)
                throw InvalidTree("cross color " + std::to_string(c) + " outside node pair");
        }
    for (const auto& c : t.children) validate_node(c);
}

GallaiTree decompose_set(const ColoredGraph& g, const std::vector<Vertex>& vertices) {
    if (vertices.size() == 1) return GallaiTree::leaf(vertices[0]);
    const ColoredGraph sub = g.induced(vertices);
    auto found = monochromatic_partition(sub);
    if (!found) {
        // Unreachable for Gallai colorings; kept as a hard failure rather than a silent leaf.
        auto w = find_rainbow_triangle(sub);
        if (w) throw RainbowTriangleFound({vertices[(*w)[0]], vertices[(*w)[1]], vertices[(*w)[2]]});
        throw Error("no monochromatic partition of a rainbow-free set");
    }
    const auto& parts = found->partition.parts;
    const int m = static_cast<int>(parts.size());
    PartPairColors cross(m, found->a);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) cross.set(i, j, sub.color(parts[i][0], parts[j][0]));
    std::vector<GallaiTree> children;
    children.reserve(parts.size());
    for (const auto& part : parts) {
        std::vector<Vertex> global;
        global.reserve(part.size());
        for (Vertex local : part) global.push_back(vertices[local]);
        children.push_back(decompose_set(g, global));
    }
    return GallaiTree::node({found->a, found->b}, std::move(children), std::move(cross));
}

const std::array<std::array<Color, 2>, 3> kPairs{{{1, 2}, {1, 3}, {2, 3}}};

GallaiTree random_subtree(std::vector<Vertex> vertices, const RandomTreeParams& params, Rng& rng) {
    const int size = static_cast<int>(vertices.size());
    if (size == 1) return GallaiTree::leaf(vertices[0]);
    const int children = static_cast<int>(rng.uniform(2, std::min(params.max_children, size)));

    std::vector<int> cuts(static_cast<std::size_t>(size - 1));
    std::iota(cuts.begin(), cuts.end(), 1);
    rng.shuffle(cuts);
    cuts.resize(static_cast<std::size_t>(children - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(size);

    const double total = params.pair_weights[0] + params.pair_weights[1] + params.pair_weights[2];
    double pick = rng.uniform01() * total;
    int which = 0;
    while (which < 2 && pick >= params.pair_weights[which]) pick -= params.pair_weights[which++];
    while (params.pair_weights[which] == 0.0) --which;
    const auto pair = kPairs[which];

    PartPairColors cross(children, pair[0]);
    for (int i = 0; i < children; ++i)
        for (int j = i + 1; j < children; ++j)
            cross.set(i, j, rng.bernoulli(params.first_color_probability) ? pair[0] : pair[1]);

    std::vector<GallaiTree> subtrees;
    int start = 0;
    for (int cut : cuts) {
        subtrees.push_back(random_subtree(
            std::vector<Vertex>(vertices.begin() + start, vertices.begin() + cut), params, rng));
        start = cut;
    }
    return GallaiTree::node(pair, std::move(subtrees), std::move(cross));
}

}  // namespace

std::optional<MonochromaticPartition> monochromatic_partition(const ColoredGraph& g) {
    require_gallai_input(g);
    if (g.n() < 2) throw PreconditionError("monochromatic partition needs n >= 2");
    for (Color c = 1; c <= 3; ++c) {
        auto parts = color_components(g, c);
        if (parts.size() < 2) continue;
        merge_until_monochromatic(g, parts);
        if (parts.size() < 2) continue;
        MonochromaticPartition out;
        out.a = c == 1 ? 2 : 1;
        out.b = c == 3 ? 2 : 3;
        out.partition.parts = std::move(parts);
        return out;
    }
    return std::nullopt;
}

GallaiTree GallaiTree::leaf(Vertex v) {
    GallaiTree t;
    t.vertex = v;
    return t;
}

GallaiTree GallaiTree::node(std::array<Color, 2> pair, std::vector<GallaiTree> children, PartPairColors cross) {
    GallaiTree t;
    t.pair = pair;
    t.children = std::move(children);
    t.cross = std::move(cross);
    return t;
}

std::vector<Vertex> GallaiTree::leaves() const {
    if (is_leaf()) return {vertex};
    std::vector<Vertex> out;
    for (const auto& c : children) {
        auto sub = c.leaves();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

int GallaiTree::leaf_count() const {
    if (is_leaf()) return 1;
    int total = 0;
    for (const auto& c : children) total += c.leaf_count();
    return total;
}

int GallaiTree::depth() const {
    int d = 0;
    for (const auto& c : children) d = std::max(d, c.depth() + 1);
    return d;
}

void GallaiTree::validate() const {
    validate_node(*this);
    const auto all = leaves();
    std::vector<int> seen(all.size(), 0);
    for (Vertex v : all) {
        if (v < 0 || v >= static_cast<int>(all.size()))
            throw InvalidTree("leaf vertex " + std::to_string(v) + " outside [0.." +
                              std::to_string(all.size()) + ")");
        if (seen[v]++) throw InvalidTree("leaf vertex " + std::to_string(v) + " repeated");
    }
}

ColoredGraph compose(const GallaiTree& tree) {
    tree.validate();
    ColoredGraph g(tree.leaf_count(), 3, 1);
    paint(tree, g);
    return g;
}

GallaiTree decompose(const ColoredGraph& g) {
    require_gallai_input(g);
    if (auto w = find_rainbow_triangle(g)) throw RainbowTriangleFound(*w);
    std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
    std::iota(all.begin(), all.end(), 0);
    return decompose_set(g, all);
}

GallaiTree random_gallai_tree(int n, const RandomTreeParams& params, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("random tree needs n >= 1");
    if (params.max_children < 2) throw PreconditionError("max_children must be >= 2");
    double total = 0;
    for (double w : params.pair_weights) {
        if (!(w >= 0.0)) throw PreconditionError("pair weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw PreconditionError("pair weights must not all be zero");
    if (!(params.first_color_probability >= 0.0 && params.first_color_probability <= 1.0))
        throw PreconditionError("first_color_probability must lie in [0,1]");
    Rng rng(seed);
    std::vector<Vertex> vertices(static_cast<std::size_t>(n));
    std::iota(vertices.begin(), vertices.end(), 0);
    rng.shuffle(vertices);
    return random_subtree(std::move(vertices), params, rng);
}

ClosenessCost closeness_cost(const ColoredGraph& g, const VertexPartition& p, Color a, Color b) {
    if (a == b || a < 1 || b < 1 || a > g.k() || b > g.k())
        throw ColorOutOfRange("color pair (" + std::to_string(a) + "," + std::to_string(b) + ") invalid");
    const auto owner = p.part_index(g.n());
    const int m = static_cast<int>(p.size());
    const std::size_t pairs = static_cast<std::size_t>(m) * static_cast<std::size_t>(std::max(m - 1, 0)) / 2;
    std::vector<std::int64_t> total(pairs, 0), count_a(pairs, 0), count_b(pairs, 0);
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            int i = owner[u];
            int j = owner[v];
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            const auto idx = ColoredGraph::pair_index(m, i, j);
            const Color c = g.color(u, v);
            ++total[idx];
            count_a[idx] += c == a;
            count_b[idx] += c == b;
        }
    ClosenessCost out;
    out.targets = PartPairColors(m, a);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const auto idx = ColoredGraph::pair_index(m, i, j);
            const auto miss_a = total[idx] - count_a[idx];
            const auto miss_b = total[idx] - count_b[idx];
            if (miss_b < miss_a) {
                out.targets.set(i, j, b);
                out.cost += miss_b;
            } else {
                out.cost += miss_a;
            }
            out.cross_pairs += total[idx];
        }
    return out;
}

std::int64_t cost_against_targets(const ColoredGraph& g, const VertexPartition& p, const PartPairColors& targets) {
    const auto owner = p.part_index(g.n());
    if (targets.parts() != static_cast<int>(p.size()))
        throw PreconditionError("target table size differs from part count");
    std::int64_t cost = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            const int i = owner[u];
            const int j = owner[v];
            if (i != j && g.color(u, v) != targets.at(i, j)) ++cost;
        }
    return cost;
}

}  // namespace gallai_lab
