#include "gallai_lab/graph.hpp"

#include "gallai_lab/rng.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace gallai_lab {

RainbowTriangleFound::RainbowTriangleFound(std::array<int, 3> witness)
    : Error("rainbow triangle (" + std::to_string(witness[0]) + "," + std::to_string(witness[1]) +
            "," + std::to_string(witness[2]) + ")"),
      witness_(witness) {}

namespace {

void check_shape(int n, int k) {
    if (n < 1) throw PreconditionError("colored graph needs n >= 1");
    if (k < 2 || k > 255) throw PreconditionError("color count must lie in [2..255]");
}

std::size_t triangle_size(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

}  // namespace

ColoredGraph::ColoredGraph(int n, int k, Color fill) : n_(n), k_(k) {
    check_shape(n, k);
    if (fill < 1 || fill > k) throw ColorOutOfRange("fill color out of range");
    table_.assign(triangle_size(n), static_cast<std::uint8_t>(fill));
}

ColoredGraph::ColoredGraph(int n, int k, std::vector<std::uint8_t> table)
    : n_(n), k_(k), table_(std::move(table)) {
    check_shape(n, k);
    if (table_.size() != triangle_size(n))
        throw PreconditionError("color table has " + std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(triangle_size(n)));
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i] < 1 || table_[i] > k)
            throw ColorOutOfRange("color table entry " + std::to_string(i) + " out of range");
}

void ColoredGraph::set_color(Vertex u, Vertex v, Color c) {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw PreconditionError("invalid pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (c < 1 || c > k_) throw ColorOutOfRange("color " + std::to_string(c) + " out of range");
    table_[pair_index(n_, u, v)] = static_cast<std::uint8_t>(c);
}

int ColoredGraph::color_degree(Vertex x, Color c) const {
    int d = 0;
    for (Vertex y = 0; y < n_; ++y)
        if (y != x && color(x, y) == c) ++d;
    return d;
}

std::vector<std::int64_t> ColoredGraph::color_histogram() const {
    std::vector<std::int64_t> h(static_cast<std::size_t>(k_) + 1, 0);
    for (auto c : table_) ++h[c];
    return h;
}

ColoredGraph ColoredGraph::induced(std::span<const Vertex> vertices) const {
    const int m = static_cast<int>(vertices.size());
    if (m == 0) throw PreconditionError("induced subgraph needs at least one vertex");
    std::vector<std::uint8_t> sub(triangle_size(m));
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) sub[idx++] = table_[pair_index(n_, vertices[i], vertices[j])];
    ColoredGraph out;
    out.n_ = m;
    out.k_ = k_;
    out.table_ = std::move(sub);
    return out;
}

Digraph::Digraph(int n) : n_(n) {
    if (n < 0) throw PreconditionError("digraph needs n >= 0");
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

void Digraph::add_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw PreconditionError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw PreconditionError("loop at " + std::to_string(u));
    auto& slot = adj_[static_cast<std::size_t>(u) * n_ + v];
    if (slot) throw PreconditionError("parallel edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    slot = 1;
    edges_.emplace_back(u, v);
}

void Digraph::remove_edge(Vertex u, Vertex v) {
    if (!has_edge(u, v)) return;
    adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
    std::erase(edges_, std::pair<Vertex, Vertex>{u, v});
}

ColoredGraph color_projection(const Digraph& d) {
    ColoredGraph g(d.n(), 3, 1);
    for (auto [u, v] : d.edges()) {
        const int count = d.pair_multiplicity(u, v);
        g.set_color(u, v, color_of_multiplicity(count));
    }
    return g;
}

std::int64_t EditTranscript::cost() const noexcept {
    return std::count_if(edits.begin(), edits.end(),
                         [](const Edit& e) { return e.old_color != e.new_color; });
}

EditTranscript EditTranscript::inverse() const {
    EditTranscript inv;
    inv.edits.reserve(edits.size());
    for (auto it = edits.rbegin(); it != edits.rend(); ++it)
        inv.edits.push_back({it->u, it->v, it->new_color, it->old_color});
    return inv;
}

ColoredGraph apply_edits(const ColoredGraph& g, const EditTranscript& t) {
    ColoredGraph out = g;
    std::unordered_set<std::size_t> seen;
    seen.reserve(t.edits.size() * 2);
    for (const auto& e : t.edits) {
        if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= g.n() || e.v >= g.n())
            throw PreconditionError("edit pair (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") invalid for n=" + std::to_string(g.n()));
        const auto idx = ColoredGraph::pair_index(g.n(), e.u, e.v);
        if (!seen.insert(idx).second)
            throw EditConflict(e.u, e.v,
                               "pair (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                   ") appears twice in transcript");
        if (out.color(e.u, e.v) != e.old_color)
            throw EditConflict(e.u, e.v,
                               "stale edit on pair (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                   "): recorded old color " + std::to_string(e.old_color) +
                                   ", graph has " + std::to_string(out.color(e.u, e.v)));
        out.set_color(e.u, e.v, e.new_color);
    }
    return out;
}

int VertexPartition::vertex_count() const noexcept {
    int total = 0;
    for (const auto& p : parts) total += static_cast<int>(p.size());
    return total;
}

void VertexPartition::validate(int n) const { (void)part_index(n); }

std::vector<int> VertexPartition::part_index(int n) const {
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty()) throw InvalidPartition("part " + std::to_string(i) + " is empty");
        for (Vertex v : parts[i]) {
            if (v < 0 || v >= n)
                throw InvalidPartition("vertex " + std::to_string(v) + " outside [0.." +
                                       std::to_string(n) + ")");
            if (owner[v] != -1)
                throw InvalidPartition("vertex " + std::to_string(v) + " in parts " +
                                       std::to_string(owner[v]) + " and " + std::to_string(i));
            owner[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1) throw InvalidPartition("vertex " + std::to_string(v) + " not covered");
    return owner;
}

std::int64_t cross_pair_count(std::span<const std::int64_t> sizes) {
    std::int64_t total = 0;
    std::int64_t prefix = 0;
    for (auto s : sizes) {
        total += prefix * s;
        prefix += s;
    }
    return total;
}

std::int64_t cross_pair_count(const VertexPartition& p) {
    p.validate(p.vertex_count());
    std::vector<std::int64_t> sizes;
    sizes.reserve(p.parts.size());
    for (const auto& part : p.parts) sizes.push_back(static_cast<std::int64_t>(part.size()));
    return cross_pair_count(sizes);
}

bool balanced_cross_bound_holds(std::span<const std::int64_t> sizes, std::int64_t d) {
    if (d < 1) throw PreconditionError("d must be >= 1");
    std::int64_t m = 0;
    std::int64_t largest = 0;
    for (auto a : sizes) {
        if (a < 0) throw PreconditionError("sizes must be nonnegative");
        m += a;
        largest = std::max(largest, a);
    }
    if (largest > m - d) throw PreconditionError("some size exceeds m - d");
    // Compare 2*sum > d(m-d) in integers.
    return 2 * cross_pair_count(sizes) > d * (m - d);
}

EditTranscript random_recoloring(const ColoredGraph& g, std::int64_t pairs, std::uint64_t seed) {
    const auto total = static_cast<std::int64_t>(g.pair_count());
    if (pairs < 0 || pairs > total) throw PreconditionError("recoloring count outside [0, C(n,2)]");
    Rng rng(seed);
    // Floyd's sampling of distinct pair indices.
    std::unordered_set<std::int64_t> chosen;
    for (std::int64_t j = total - pairs; j < total; ++j) {
        const auto t = rng.uniform(0, j);
        chosen.insert(chosen.count(t) ? j : t);
    }
    std::vector<std::int64_t> order(chosen.begin(), chosen.end());
    std::sort(order.begin(), order.end());

    EditTranscript t;
    t.edits.reserve(order.size());
    Vertex u = 0;
    std::int64_t row_start = 0;
    for (auto idx : order) {
        while (idx >= row_start + (g.n() - 1 - u)) row_start += g.n() - 1 - u++;
        const Vertex v = u + 1 + static_cast<Vertex>(idx - row_start);
        const Color old = g.color(u, v);
        Color fresh = static_cast<Color>(rng.uniform(1, g.k() - 1));
        if (fresh >= old) ++fresh;
        t.edits.push_back({u, v, old, fresh});
    }
    return t;
}

}  // namespace gallai_lab
