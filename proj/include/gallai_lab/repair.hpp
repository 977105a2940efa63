#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gallai_lab/gallai.hpp"
#include "gallai_lab/graph.hpp"

namespace gallai_lab {

/// Sampling parameters for the approximate partition search.
///
/// The defaults are desk-scale. `with_asymptotic_constants` derives s, k, delta and t from
/// epsilon with s = 128 ln(2000/eps^2)/eps^2, delta = eps^2/(64 s^2), k = 128/eps^2,
/// t = 2(k + s ln s)/delta; these are astronomically large for any practical epsilon
/// and sampling is capped by the vertex count.
struct RepairConfig {
    double epsilon = 0.1;
    std::int64_t seed_sample = 12;  // s
    std::int64_t batch_size = 40;   // t
    std::int64_t batches = 8;       // k
    double density = 0.02;          // delta, as a fraction of n
    int retries = 64;
    std::uint64_t seed = 0;
    bool asymptotic_constants = false;

    static RepairConfig with_asymptotic_constants(double epsilon, std::uint64_t seed = 0);
    /// Config with the asymptotic formulas applied when `asymptotic_constants` is set.
    RepairConfig resolved() const;
    /// Throws PreconditionError on non-positive sizes or epsilon outside (0,1).
    void validate() const;
};

enum class PartitionRoute { vertex_star, sparse_color, sampled };

const char* to_string(PartitionRoute route);

/// Nested sets grown from one sample: chains[i][l] is the set grown for part i after
/// l+1 rounds, before disjointification.
struct LayeredSets {
    std::vector<std::vector<std::vector<Vertex>>> chains;
    int level = 1;            // selected level (1-based)
    bool stabilized = false;  // growth-stop condition met at `level`
    std::vector<std::vector<Vertex>> parts;  // disjointified sets at `level`, may be empty
    std::vector<Vertex> boundary;            // V' = V^(level+1) minus V^(level)
    std::vector<Vertex> rest;                // X
};

/// Grows the layered sets for a fixed seed set and its partition `seed_parts`,
/// with excluded color c = 6 - a - b.
LayeredSets grow_layered_sets(const ColoredGraph& g, const std::vector<Vertex>& seed_set,
                              const std::vector<std::vector<Vertex>>& seed_parts, Color a, Color b,
                              const RepairConfig& cfg);

struct ApproximatePartition {
    bool certified = false;
    PartitionRoute route = PartitionRoute::sampled;
    Color a = 1;
    Color b = 2;
    VertexPartition partition;
    PartPairColors targets;
    std::int64_t cost = 0;
    std::int64_t cross_pairs = 0;
    int attempts = 0;
    /// On failure: the lowest cost / e(P) seen over all attempts (infinity if none).
    double best_ratio = 0.0;

    double ratio() const noexcept {
        return cross_pairs > 0 ? static_cast<double>(cost) / static_cast<double>(cross_pairs) : 0.0;
    }
};

/// Searches for a partition that is epsilon-close to (a,b)-monochromatic. Every
/// success is certified by an exact recount: cost <= epsilon * e(P), and for the
/// sampled route additionally e(P) >= epsilon n^2 / 16. Requires k == 3, n >= 2.
ApproximatePartition approximate_partition(const ColoredGraph& g, const RepairConfig& cfg);

/// Recount used for certification, independent of how the candidate was built.
bool certify(const ColoredGraph& g, const ApproximatePartition& result, double epsilon);

struct RepairTreeNode {
    int size = 0;
    bool leaf = true;
    PartitionRoute route = PartitionRoute::sampled;
    Color a = 1;
    Color b = 2;
    std::int64_t cost = 0;
    std::int64_t cross_pairs = 0;
    std::vector<Vertex> vertices;  // original ids
    PartPairColors targets;        // between children, for split nodes
    std::vector<RepairTreeNode> children;
};

struct RepairResult {
    EditTranscript transcript;
    bool complete = false;
    std::int64_t partition_calls = 0;
    std::int64_t leaf_cost = 0;
    std::int64_t cross_cost = 0;
    RepairTreeNode tree;
    /// Empty when complete; otherwise why the run stopped.
    std::string diagnosis;

    std::int64_t cost() const { return transcript.cost(); }
};

/// Splits every leaf of size >= epsilon n with a certified approximate partition,
/// recording the recolorings that make each split monochromatic, then recolors the
/// inside of every remaining leaf to color 1. A failed split stops the run and
/// returns the partial transcript.
RepairResult repair(const ColoredGraph& g, const RepairConfig& cfg);

struct TesterConfig {
    double epsilon = 0.1;
    double exponent = 36.0;
    double confidence = 0.99;
    /// Overrides the computed sample count.
    std::optional<std::int64_t> samples;
    std::uint64_t budget = 10'000'000;
    std::uint64_t seed = 0;
};

struct TesterResult {
    bool accept = true;
    std::optional<std::array<Vertex, 3>> witness;
    std::int64_t planned = 0;  // samples requested before capping
    std::int64_t drawn = 0;    // triples examined
    bool capped = false;       // budget hit: confidence not guaranteed
    bool exhaustive = false;   // every triple examined
};

/// ceil(ln(1/(1-confidence)) / epsilon^exponent), saturated at INT64_MAX.
std::int64_t tester_sample_count(double epsilon, double exponent, double confidence);

/// One-sided tester for rainbow-triangle freeness: rejects only on a sampled rainbow
/// triple. Falls back to an exhaustive scan when there are no more triples than samples.
TesterResult test_rainbow_free(const ColoredGraph& g, const TesterConfig& cfg);

}  // namespace gallai_lab
