#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gallai_lab/copies.hpp"
#include "gallai_lab/graph.hpp"

namespace gallai_lab {

// ---------------------------------------------------------------------------
// Equation-avoiding sets

/// One linear equation over elements of a set S:
///   weighted: p*s1 + q*s2 = (p+q)*s3, over distinct s1, s2, s3
///   four_term: s1 + s2 + s3 = 3*s4, any solution other than s1 = s2 = s3 = s4
///     (repeats matter here: 1 + 1 + 4 = 3*2 already plants an extra F4)
struct LinearConstraint {
    enum class Shape { weighted, four_term };
    Shape shape = Shape::weighted;
    int p = 1;
    int q = 1;

    static LinearConstraint weighted(int p, int q);
    static LinearConstraint four_term();
    /// Largest coefficient sum on either side of the equation.
    int coefficient_sum() const noexcept { return shape == Shape::weighted ? p + q : 3; }
    int arity() const noexcept { return shape == Shape::weighted ? 3 : 4; }
    std::string describe() const;

    bool operator==(const LinearConstraint&) const = default;
};

struct EquationFamily {
    std::vector<LinearConstraint> constraints;

    /// s1 + s2 = 2 s3 (3-term progressions).
    static EquationFamily three_term_progressions();
    /// All p s1 + q s2 = (p+q) s3 with 1 <= p,q <= f-1.
    static EquationFamily weighted_triangles(int f);
    /// s1 + s2 + s3 = 3 s4.
    static EquationFamily four_term();

    int max_coefficient_sum() const;
    bool operator==(const EquationFamily&) const = default;
};

struct AvoidanceReport {
    bool avoids = true;
    int constraint = -1;               // index of the violated constraint
    std::vector<std::int64_t> witness; // (s1, s2, s3[, s4]) in constraint order
};

/// Exhaustive check over every non-trivial solution in S. Elements must be distinct positive integers.
AvoidanceReport verify_avoiding_set(std::span<const std::int64_t> set, const EquationFamily& family);

namespace serial {
AvoidanceReport verify_avoiding_set(std::span<const std::int64_t> set, const EquationFamily& family);
}

enum class AvoidingMethod { greedy, behrend };

/// Subset of [1..m] avoiding every constraint of the family; always verified.
///
/// greedy scans 1..m and keeps each element that creates no solution.
/// behrend keeps the digit vectors of one squared-norm shell in a base large enough
/// that the family's combinations never carry, picking the densest shell over the
/// digit counts tried; strict convexity of the sphere rules out solutions.
std::vector<std::int64_t> avoiding_set(std::int64_t m, const EquationFamily& family, AvoidingMethod method);

// ---------------------------------------------------------------------------
// Design family

/// p^2 tuples over [1..p] (p the smallest prime in (r/2, r]) with
/// x_{a,b}(i) = 1 + (a + (i-1) b mod p); two tuples agree in at most one coordinate.
struct DesignFamily {
    int range = 0;
    int arity = 0;
    int prime = 0;
    std::vector<std::vector<int>> tuples;
};

/// Requires d >= 2 and r >= 2d. Verified exhaustively before return when p <= 200.
DesignFamily design_family(int r, int d);
/// Exhaustive pairwise agreement check.
bool agrees_at_most_once(const DesignFamily& family);

// ---------------------------------------------------------------------------
// Blowups and lifting

/// Each host vertex h becomes the class {h*factor, ..., h*factor + factor - 1};
/// cross-class pairs inherit the host color, inside pairs get `inside`.
ColoredGraph blowup(const ColoredGraph& host, int factor, Color inside);
/// Digraph blowup: cross-class pairs inherit host edges, classes are transitive
/// tournaments oriented by id.
Digraph blowup(const Digraph& host, int factor);

/// Digraph G' with color_projection(G') == g in which every tuple of the pair-disjoint
/// family is an induced copy of d. Count-1 pairs outside the family point low id to high id.
Digraph lift_to_digraph(const ColoredGraph& g, const Digraph& d, const CopyFamily& family);

// ---------------------------------------------------------------------------
// Hardness constructions

enum class HardnessKind { triangle, f4, d3 };

const char* to_string(HardnessKind kind);

/// The 4-vertex coloring in which each color spans a perfect matching:
/// 1 on {0,1},{2,3}; 2 on {0,3},{1,2}; 3 on {0,2},{1,3}.
ColoredGraph f4_pattern();
/// Edges (0,2), (1,2), (2,1).
Digraph d3_pattern();

struct HardnessClaims {
    std::int64_t planted_host = 0;     // m |S|
    std::int64_t planted_blowup = 0;   // m |S| p^2, 0 when no blowup family is planted
    bool host_pair_disjoint = false;
    bool blowup_pair_disjoint = false;
    bool blowup_family_planted = false;
    int design_prime = 0;
    /// triangle: triangles avoiding the avoided color; f4: copies of F4; d3: induced D3 copies.
    std::int64_t host_count = 0;
    /// triangle: f^4 m^2; f4 and d3: m |S| (an exact-equality claim).
    std::int64_t host_count_bound = 0;
    /// host_count meets host_count_bound (<= for triangle, == for f4 and d3).
    bool counts_hold = false;
    double implied_epsilon = 0.0;
};

struct HardnessInstance {
    HardnessKind kind = HardnessKind::triangle;
    std::int64_t m = 0;
    std::vector<std::int64_t> set;  // S
    EquationFamily equations;
    int pattern_size = 0;           // f
    int factor = 1;
    Color avoided = 3;              // inside/background color for colored kinds
    std::variant<ColoredGraph, Digraph> pattern;
    std::variant<ColoredGraph, Digraph> host;
    std::variant<ColoredGraph, Digraph> blown;
    CopyFamily host_family;
    CopyFamily blowup_family;
    HardnessClaims claims;

    bool is_digraph() const noexcept { return std::holds_alternative<Digraph>(host); }
    int host_size() const;
    int blown_size() const;
};

struct HardnessOptions {
    AvoidingMethod method = AvoidingMethod::greedy;
    /// Run the exhaustive host count (the expensive claim).
    bool count_host = true;
    std::uint64_t budget = 0;
    /// Replaces the avoiding set without verification, to exhibit what breaks when S
    /// contains a solution. Elements must lie in [1..m].
    std::optional<std::vector<std::int64_t>> set_override;
};

/// Host on f intervals of sizes m, 2m, ..., fm; copy F_{x,s} at x + (i-1)s in interval i;
/// everything else colored `avoided`. `pattern` must contain a triangle avoiding `avoided`.
HardnessInstance triangle_hardness(const ColoredGraph& pattern, Color avoided, std::int64_t m, int factor,
                                   const HardnessOptions& opts = {});
HardnessInstance f4_hardness(std::int64_t m, int factor, const HardnessOptions& opts = {});
HardnessInstance d3_hardness(std::int64_t m, int factor, const HardnessOptions& opts = {});

/// Host vertex id of the element `value` (1-based) of interval `index` (1-based)
/// when interval i holds i*m elements.
Vertex interval_vertex(std::int64_t m, int index, std::int64_t value);

}  // namespace gallai_lab
