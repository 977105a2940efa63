#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gallai_lab/graph.hpp"

namespace gallai_lab {

/// Vertex tuples in a host graph. Position i of a tuple plays pattern vertex role_map[i].
struct CopyFamily {
    int pattern_size = 0;
    std::vector<int> role_map;
    std::vector<std::vector<Vertex>> copies;

    CopyFamily() = default;
    explicit CopyFamily(int pattern_size);

    std::size_t size() const noexcept { return copies.size(); }
    /// Throws InvalidFamily if a tuple has the wrong length, repeats a vertex, or leaves [0..host_n).
    void validate(int host_n) const;
};

struct EnumerationOptions {
    /// Maximum number of candidate extensions examined before refusing.
    std::uint64_t budget = 0;  // 0 = default_enumeration_budget()
    int max_pattern_size = 5;
    /// When false only the counts are produced.
    bool collect = true;
};

struct EnumerationResult {
    CopyFamily family;            // one canonical tuple per occurrence
    std::int64_t injections = 0;  // label-preserving injections
    std::int64_t occurrences = 0; // injections / |Aut(pattern)|
    std::int64_t automorphisms = 0;
    std::uint64_t nodes = 0;      // candidate extensions examined
};

/// 10^9, or the value of GALLAI_LAB_BUDGET when set to a positive integer.
std::uint64_t default_enumeration_budget();

/// Color-preserving injections of `pattern` into `host`. Throws BudgetExceeded rather
/// than returning a truncated answer.
EnumerationResult enumerate_copies(const ColoredGraph& host, const ColoredGraph& pattern,
                                   const EnumerationOptions& opts = {});
/// Induced copies: presence and absence of every ordered edge is preserved.
EnumerationResult enumerate_copies(const Digraph& host, const Digraph& pattern,
                                   const EnumerationOptions& opts = {});

namespace serial {
EnumerationResult enumerate_copies(const ColoredGraph& host, const ColoredGraph& pattern,
                                   const EnumerationOptions& opts = {});
EnumerationResult enumerate_copies(const Digraph& host, const Digraph& pattern,
                                   const EnumerationOptions& opts = {});
}  // namespace serial

/// Permutations sigma of the pattern's vertices with pattern(sigma(i), sigma(j)) == pattern(i, j).
std::vector<std::vector<int>> automorphisms(const ColoredGraph& pattern);
std::vector<std::vector<int>> automorphisms(const Digraph& pattern);

/// True when tuple[i] -> pattern vertex i is a colored copy.
bool is_copy(const ColoredGraph& host, const ColoredGraph& pattern, std::span<const Vertex> tuple);
/// True when tuple[i] -> pattern vertex i is an induced copy.
bool is_induced_copy(const Digraph& host, const Digraph& pattern, std::span<const Vertex> tuple);

struct PairDisjointReport {
    bool pair_disjoint = true;
    /// Index pairs (i < j) of copies sharing two or more vertices.
    std::vector<std::pair<int, int>> violations;
};

PairDisjointReport verify_pair_disjoint(const CopyFamily& family);

}  // namespace gallai_lab
