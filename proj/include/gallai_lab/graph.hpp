#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gallai_lab/errors.hpp"

namespace gallai_lab {

using Vertex = int;
using Color = int;

/// Complete graph on n vertices whose pairs carry colors in [1..k].
///
/// Colors live in a dense upper-triangle table, row-major: pair (u,v) with
/// u < v sits at u*n - u*(u+1)/2 + (v-u-1). Vertices are 0-based.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(int n, int k, Color fill = 1);
    /// Adopts a raw triangle table; every entry must lie in [1..k].
    ColoredGraph(int n, int k, std::vector<std::uint8_t> table);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t pair_count() const noexcept { return table_.size(); }

    static std::size_t pair_index(int n, Vertex u, Vertex v) noexcept {
        if (u > v) std::swap(u, v);
        return static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
               static_cast<std::size_t>(v - u - 1);
    }

    Color color(Vertex u, Vertex v) const noexcept { return table_[pair_index(n_, u, v)]; }
    void set_color(Vertex u, Vertex v, Color c);

    std::span<const std::uint8_t> table() const noexcept { return table_; }

    /// Number of pairs {x,y} with color c at x.
    int color_degree(Vertex x, Color c) const;
    /// Number of pairs in each color; index 0 unused.
    std::vector<std::int64_t> color_histogram() const;

    /// Induced subgraph on `vertices`; vertex i of the result is vertices[i].
    ColoredGraph induced(std::span<const Vertex> vertices) const;

    bool operator==(const ColoredGraph&) const = default;

private:
    int n_ = 0;
    int k_ = 2;
    std::vector<std::uint8_t> table_;
};

/// Loopless digraph: anti-parallel pairs allowed, parallel edges not.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);

    int n() const noexcept { return n_; }
    bool has_edge(Vertex u, Vertex v) const noexcept {
        return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
    }
    /// Throws PreconditionError on loops, out-of-range ends, or duplicates.
    void add_edge(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);

    /// Edges in insertion order (removals compact the list).
    const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// 0, 1 or 2: number of directed edges between u and v.
    int pair_multiplicity(Vertex u, Vertex v) const noexcept {
        return static_cast<int>(has_edge(u, v)) + static_cast<int>(has_edge(v, u));
    }

    /// Same vertex and edge sets (edge order is ignored).
    bool same_edges(const Digraph& other) const noexcept {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    int n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

/// C(D): pair color = 1 + number of D-edges between the pair (counts 0/1/2 -> colors 1/2/3).
ColoredGraph color_projection(const Digraph& d);

inline constexpr Color color_of_multiplicity(int count) noexcept { return count + 1; }
inline constexpr int multiplicity_of_color(Color c) noexcept { return c - 1; }

struct Edit {
    Vertex u = 0;
    Vertex v = 0;
    Color old_color = 1;
    Color new_color = 1;

    bool operator==(const Edit&) const = default;
};

/// Ordered recolorings. Each unordered pair appears at most once.
struct EditTranscript {
    std::vector<Edit> edits;

    /// Entries whose old and new colors differ.
    std::int64_t cost() const noexcept;
    /// Reversed order with old/new swapped.
    EditTranscript inverse() const;

    bool operator==(const EditTranscript&) const = default;
};

/// Applies `t` in order. Throws EditConflict when an old color is stale or a pair
/// repeats, PreconditionError for out-of-range pairs or colors.
ColoredGraph apply_edits(const ColoredGraph& g, const EditTranscript& t);

/// Recolors exactly `pairs` distinct pairs, each to a uniformly chosen different color.
/// Edits are listed in pair-index order; deterministic per seed.
EditTranscript random_recoloring(const ColoredGraph& g, std::int64_t pairs, std::uint64_t seed);

/// Ordered list of disjoint nonempty vertex sets covering [0..n).
struct VertexPartition {
    std::vector<std::vector<Vertex>> parts;

    std::size_t size() const noexcept { return parts.size(); }
    /// Throws InvalidPartition unless the parts partition [0..n).
    void validate(int n) const;
    /// part_of[v] = index of the part containing v; validates first.
    std::vector<int> part_index(int n) const;
    int vertex_count() const noexcept;
};

/// e(P) = sum over i<j of |V_i||V_j|. Validates P against its own vertex count.
std::int64_t cross_pair_count(const VertexPartition& p);
/// sum over i<j of sizes[i]*sizes[j].
std::int64_t cross_pair_count(std::span<const std::int64_t> sizes);

/// Checks sum_{i<j} a_i a_j > d(m-d)/2 for a_i >= 0, sum a_i = m, max a_i <= m-d, d >= 1.
/// Throws PreconditionError when the hypotheses fail.
bool balanced_cross_bound_holds(std::span<const std::int64_t> sizes, std::int64_t d);

}  // namespace gallai_lab
