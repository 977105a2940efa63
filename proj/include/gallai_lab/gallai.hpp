#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gallai_lab/graph.hpp"

namespace gallai_lab {

/// Colors for every unordered pair of parts, stored upper-triangle row-major.
class PartPairColors {
public:
    PartPairColors() = default;
    PartPairColors(int parts, Color fill);

    int parts() const noexcept { return parts_; }
    Color at(int i, int j) const noexcept { return colors_[index(i, j)]; }
    void set(int i, int j, Color c) noexcept { colors_[index(i, j)] = static_cast<std::uint8_t>(c); }
    const std::vector<std::uint8_t>& raw() const noexcept { return colors_; }

    bool operator==(const PartPairColors&) const = default;

private:
    std::size_t index(int i, int j) const noexcept {
        if (i > j) std::swap(i, j);
        return ColoredGraph::pair_index(parts_, i, j);
    }
    int parts_ = 0;
    std::vector<std::uint8_t> colors_;
};

/// An (a,b)-monochromatic partition: every cross bipartite graph is entirely color a
/// or entirely color b.
struct MonochromaticPartition {
    Color a = 1;
    Color b = 2;
    VertexPartition partition;
    /// The color that never appears between parts.
    Color excluded() const noexcept { return 6 - a - b; }
};

/// Finds an (a,b)-monochromatic partition with at least two parts.
///
/// For each excluded color c = 1, 2, 3 in turn, parts start as the connected
/// components of the color-c graph and the lowest-indexed pair of parts whose cross
/// graph is not monochromatic is merged until none remain. Every valid partition
/// avoiding c coarsens the components and is preserved by each forced merge, so the
/// result is the finest partition for c and exists whenever any partition does.
/// Requires k == 3 and n >= 2.
std::optional<MonochromaticPartition> monochromatic_partition(const ColoredGraph& g);

/// Recursive Gallai structure. A node is a leaf (one vertex) or has a color pair,
/// two or more children and a cross color for every pair of children.
struct GallaiTree {
    Vertex vertex = -1;
    std::array<Color, 2> pair{1, 2};
    std::vector<GallaiTree> children;
    PartPairColors cross;

    static GallaiTree leaf(Vertex v);
    static GallaiTree node(std::array<Color, 2> pair, std::vector<GallaiTree> children, PartPairColors cross);

    bool is_leaf() const noexcept { return children.empty(); }
    /// Leaves in depth-first order.
    std::vector<Vertex> leaves() const;
    int leaf_count() const;
    int depth() const;
    /// Throws InvalidTree on shape or color violations, or when leaves are not a
    /// permutation of [0..leaf_count).
    void validate() const;

    bool operator==(const GallaiTree&) const = default;
};

/// Cross pairs between child i and child j of every node get color cross(i,j).
ColoredGraph compose(const GallaiTree& tree);

/// Recursive monochromatic partitions down to single vertices.
/// Throws RainbowTriangleFound (with witness) when g is not a Gallai coloring.
GallaiTree decompose(const ColoredGraph& g);

struct RandomTreeParams {
    /// Children per internal node are drawn uniformly from [2, max_children].
    int max_children = 4;
    /// Relative weights of the pairs (1,2), (1,3), (2,3).
    std::array<double, 3> pair_weights{1.0, 1.0, 1.0};
    /// Probability that a cross color is the first color of the node's pair.
    double first_color_probability = 0.5;
};

/// Random valid tree on n leaves; deterministic per seed.
GallaiTree random_gallai_tree(int n, const RandomTreeParams& params, std::uint64_t seed);

struct ClosenessCost {
    std::int64_t cost = 0;
    std::int64_t cross_pairs = 0;  // e(P)
    PartPairColors targets;
    bool within(double epsilon) const noexcept {
        return static_cast<double>(cost) <= epsilon * static_cast<double>(cross_pairs);
    }
};

/// Minimal recolorings making P (a,b)-monochromatic; per part pair the target is the
/// cheaper of a and b, ties going to a.
ClosenessCost closeness_cost(const ColoredGraph& g, const VertexPartition& p, Color a, Color b);

/// Number of cross pairs whose color differs from the target of their part pair.
std::int64_t cost_against_targets(const ColoredGraph& g, const VertexPartition& p, const PartPairColors& targets);

}  // namespace gallai_lab
