#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "gallai_lab/graph.hpp"

// Triangle-scan kernels. Each kernel has a serial reference (kept for testing and
// benchmarking) and an OpenMP version that splits the scan over the first vertex.
// The unqualified entry points dispatch to the OpenMP versions.

namespace gallai_lab {

namespace serial {
std::int64_t count_rainbow_triangles(const ColoredGraph& g);
std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c);
}  // namespace serial

namespace parallel {
std::int64_t count_rainbow_triangles(const ColoredGraph& g);
std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c);
}  // namespace parallel

/// Number of triples with three distinct pair colors. Requires k == 3.
std::int64_t count_rainbow_triangles(const ColoredGraph& g);

/// Number of triples none of whose pairs has color c. Requires c in [1..k].
std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c);

/// Lexicographically smallest rainbow triple (u<v<w), if any. Requires k == 3.
std::optional<std::array<Vertex, 3>> find_rainbow_triangle(const ColoredGraph& g);

/// Number of worker threads the parallel kernels will use.
int worker_count();
/// Sets the worker count for subsequent parallel kernels; values < 1 are ignored.
void set_worker_count(int workers);

}  // namespace gallai_lab
