#pragma once

// Brute-force oracles. They read raw color tables and use no library algorithm.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "gallai_lab/graph.hpp"

namespace oracle {

using gallai_lab::ColoredGraph;

// Color lookup with its own index arithmetic over the raw table.
inline int raw_color(const ColoredGraph& g, int u, int v) {
    if (u > v) std::swap(u, v);
    const std::int64_t n = g.n();
    const std::int64_t idx = u * n - std::int64_t{u} * (u + 1) / 2 + (v - u - 1);
    return g.table()[static_cast<std::size_t>(idx)];
}

inline std::int64_t rainbow_count(const ColoredGraph& g) {
    std::int64_t total = 0;
    for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
            for (int c = b + 1; c < g.n(); ++c) {
                const int x = raw_color(g, a, b), y = raw_color(g, a, c), z = raw_color(g, b, c);
                total += (x != y && y != z && x != z);
            }
    return total;
}

inline std::int64_t avoiding_count(const ColoredGraph& g, int color) {
    std::int64_t total = 0;
    for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
            for (int c = b + 1; c < g.n(); ++c)
                total += raw_color(g, a, b) != color && raw_color(g, a, c) != color && raw_color(g, b, c) != color;
    return total;
}

// True when some set partition with >= 2 parts is (a,b)-monochromatic for some a<b.
inline bool has_monochromatic_partition(const ColoredGraph& g) {
    const int n = g.n();
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    // Restricted growth strings enumerate every set partition exactly once.
    std::function<bool(int, int)> rec = [&](int i, int used) -> bool {
        if (i == n) {
            if (used < 2) return false;
            for (int a = 1; a <= 3; ++a)
                for (int b = a + 1; b <= 3; ++b) {
                    bool ok = true;
                    for (int p = 0; p < used && ok; ++p)
                        for (int q = p + 1; q < used && ok; ++q) {
                            int seen = 0;
                            for (int u = 0; u < n && ok; ++u)
                                for (int v = 0; v < n && ok; ++v) {
                                    if (label[u] != p || label[v] != q) continue;
                                    const int c = raw_color(g, u, v);
                                    if (c != a && c != b) ok = false;
                                    else if (seen == 0) seen = c;
                                    else if (seen != c) ok = false;
                                }
                        }
                    if (ok) return true;
                }
            return false;
        }
        for (int l = 0; l <= used; ++l) {
            label[i] = l;
            if (rec(i + 1, std::max(used, l + 1))) return true;
        }
        return false;
    };
    return rec(0, 0);
}

// Largest subset of [1..m] with no solution to s1 + s2 = 2 s3 over distinct elements.
inline int max_progression_free(int m) {
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (int a = 1; a <= m && ok; ++a)
            for (int c = a + 2; c <= m && ok; c += 2)
                if ((mask >> (a - 1) & 1) && (mask >> (c - 1) & 1) && (mask >> ((a + c) / 2 - 1) & 1)) ok = false;
        if (ok) best = size;
    }
    return best;
}

// Direct pairwise intersection check.
inline bool pair_disjoint(const std::vector<std::vector<int>>& copies) {
    for (std::size_t i = 0; i < copies.size(); ++i)
        for (std::size_t j = i + 1; j < copies.size(); ++j) {
            int shared = 0;
            for (int x : copies[i])
                shared += static_cast<int>(std::count(copies[j].begin(), copies[j].end(), x));
            if (shared >= 2) return false;
        }
    return true;
}

}  // namespace oracle
