#include "gallai_lab/kernels.hpp"

#include <omp.h>

#include <string>

namespace gallai_lab {

namespace {

void require_three_colors(const ColoredGraph& g) {
    if (g.k() != 3)
        throw UnsupportedColorCount("rainbow triangles need k = 3, got k = " + std::to_string(g.k()));
}

void require_color(const ColoredGraph& g, Color c) {
    if (c < 1 || c > g.k())
        throw ColorOutOfRange("color " + std::to_string(c) + " outside [1.." + std::to_string(g.k()) + "]");
}

inline bool distinct3(int a, int b, int c) { return a != b && b != c && a != c; }

// Row u of the upper triangle: entry for (u, w), w > u, is row(u)[w - u - 1].
inline const std::uint8_t* row(const ColoredGraph& g, Vertex u) {
    return g.table().data() + ColoredGraph::pair_index(g.n(), u, u + 1);
}

// Triangles with smallest vertex u, scanned row against row.
std::int64_t rainbow_from(const ColoredGraph& g, Vertex u) {
    const int n = g.n();
    const auto* ru = row(g, u);
    std::int64_t count = 0;
    for (Vertex v = u + 1; v < n - 1; ++v) {
        const int cuv = ru[v - u - 1];
        const auto* ru_w = ru + (v - u);  // (u, v+1)
        const auto* rv = row(g, v);       // (v, v+1)
        const int len = n - v - 1;
        for (int j = 0; j < len; ++j) count += distinct3(cuv, ru_w[j], rv[j]);
    }
    return count;
}

std::int64_t avoiding_from(const ColoredGraph& g, Vertex u, Color c) {
    const int n = g.n();
    const auto* ru = row(g, u);
    std::int64_t count = 0;
    for (Vertex v = u + 1; v < n - 1; ++v) {
        if (ru[v - u - 1] == c) continue;
        const auto* ru_w = ru + (v - u);
        const auto* rv = row(g, v);
        const int len = n - v - 1;
        for (int j = 0; j < len; ++j) count += (ru_w[j] != c) & (rv[j] != c);
    }
    return count;
}

}  // namespace

namespace serial {

std::int64_t count_rainbow_triangles(const ColoredGraph& g) {
    require_three_colors(g);
    std::int64_t count = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            for (Vertex w = v + 1; w < g.n(); ++w)
                count += distinct3(g.color(u, v), g.color(u, w), g.color(v, w));
    return count;
}

std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c) {
    require_color(g, c);
    std::int64_t count = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            for (Vertex w = v + 1; w < g.n(); ++w)
                count += g.color(u, v) != c && g.color(u, w) != c && g.color(v, w) != c;
    return count;
}

}  // namespace serial

namespace parallel {

std::int64_t count_rainbow_triangles(const ColoredGraph& g) {
    require_three_colors(g);
    const int n = g.n();
    std::int64_t count = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : count)
    for (int u = 0; u < n - 2; ++u) count += rainbow_from(g, u);
    return count;
}

std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c) {
    require_color(g, c);
    const int n = g.n();
    std::int64_t count = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : count)
    for (int u = 0; u < n - 2; ++u) count += avoiding_from(g, u, c);
    return count;
}

}  // namespace parallel

std::int64_t count_rainbow_triangles(const ColoredGraph& g) { return parallel::count_rainbow_triangles(g); }

std::int64_t triangles_avoiding_color(const ColoredGraph& g, Color c) {
    return parallel::triangles_avoiding_color(g, c);
}

std::optional<std::array<Vertex, 3>> find_rainbow_triangle(const ColoredGraph& g) {
    require_three_colors(g);
    const int n = g.n();
    for (Vertex u = 0; u < n - 2; ++u) {
        const auto* ru = row(g, u);
        for (Vertex v = u + 1; v < n - 1; ++v) {
            const int cuv = ru[v - u - 1];
            const auto* rv = row(g, v);
            for (Vertex w = v + 1; w < n; ++w)
                if (distinct3(cuv, ru[w - u - 1], rv[w - v - 1])) return std::array<Vertex, 3>{u, v, w};
        }
    }
    return std::nullopt;
}

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int workers) {
    if (workers >= 1) omp_set_num_threads(workers);
}

}  // namespace gallai_lab
