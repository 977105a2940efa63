#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "gallai_lab/hardness.hpp"

namespace gallai_lab {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void check_blowup_size(int n, int factor) {
    if (factor < 1) throw PreconditionError("blowup factor must be >= 1");
    const std::int64_t total = static_cast<std::int64_t>(n) * factor;
    // Dense pair tables hold n^2/2 bytes; beyond 2^16 vertices they stop fitting in memory.
    if (total > 65'536) throw PreconditionError("blowup size overflows: " + std::to_string(total) + " vertices");
}

}  // namespace

DesignFamily design_family(int r, int d) {
    if (d < 2) throw PreconditionError("design family needs d >= 2");
    if (r < 2 * d) throw PreconditionError("design family needs r >= 2d");
    if (r > 46'000) throw PreconditionError("design range too large");
    int p = r / 2 + 1;
    while (!is_prime(p)) ++p;  // Bertrand: p <= r

    DesignFamily fam{r, d, p, {}};
    fam.tuples.reserve(static_cast<std::size_t>(p) * p);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            std::vector<int> t(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) t[i] = 1 + static_cast<int>((a + static_cast<std::int64_t>(i) * b) % p);
            fam.tuples.push_back(std::move(t));
        }
    if (p <= 200 && !agrees_at_most_once(fam))
        throw ConstructionIntegrityError("design family has two tuples agreeing twice");
    return fam;
}

// Two tuples agree in two coordinates iff some coordinate pair (i,j) sees the same
// value pair twice, so scanning coordinate pairs covers every tuple pair.
bool agrees_at_most_once(const DesignFamily& family) {
    const int d = family.arity;
    const int p = family.prime;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(p + 1) * (p + 1));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::fill(seen.begin(), seen.end(), 0);
            for (const auto& t : family.tuples) {
                auto& slot = seen[static_cast<std::size_t>(t[i]) * (p + 1) + t[j]];
                if (slot) return false;
                slot = 1;
            }
        }
    return true;
}

ColoredGraph blowup(const ColoredGraph& host, int factor, Color inside) {
    check_blowup_size(host.n(), factor);
    if (inside < 1 || inside > host.k()) throw ColorOutOfRange("inside color out of range");
    const int n = host.n() * factor;
    ColoredGraph g(n, host.k(), inside);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            const int hu = u / factor, hv = v / factor;
            if (hu != hv) g.set_color(u, v, host.color(hu, hv));
        }
    return g;
}

Digraph blowup(const Digraph& host, int factor) {
    check_blowup_size(host.n(), factor);
    Digraph g(host.n() * factor);
    for (const auto& [hu, hv] : host.edges())
        for (int i = 0; i < factor; ++i)
            for (int j = 0; j < factor; ++j) g.add_edge(hu * factor + i, hv * factor + j);
    for (int h = 0; h < host.n(); ++h)
        for (int i = 0; i < factor; ++i)
            for (int j = i + 1; j < factor; ++j) g.add_edge(h * factor + i, h * factor + j);
    return g;
}

Digraph lift_to_digraph(const ColoredGraph& g, const Digraph& d, const CopyFamily& family) {
    if (g.k() != 3) throw UnsupportedColorCount("lifting needs a 3-colored graph");
    if (family.pattern_size != d.n()) throw InvalidFamily("family pattern size differs from the pattern");
    family.validate(g.n());
    if (!verify_pair_disjoint(family).pair_disjoint) throw InvalidFamily("lifting needs a pair-disjoint family");
    const auto projected = color_projection(d);

    // Orientation of count-1 pairs that lie inside a planted copy: +1 means u -> v for u < v.
    std::vector<std::int8_t> orient(g.pair_count(), 0);
    for (std::size_t c = 0; c < family.copies.size(); ++c) {
        const auto& t = family.copies[c];
        for (int i = 0; i < d.n(); ++i)
            for (int j = i + 1; j < d.n(); ++j) {
                const int ri = family.role_map[i], rj = family.role_map[j];
                if (g.color(t[i], t[j]) != projected.color(ri, rj))
                    throw InvalidFamily("copy " + std::to_string(c) + " does not match the projected pattern");
                if (d.pair_multiplicity(ri, rj) != 1) continue;
                const bool forward = d.has_edge(ri, rj);  // t[i] -> t[j]
                orient[ColoredGraph::pair_index(g.n(), t[i], t[j])] = (forward == (t[i] < t[j])) ? 1 : -1;
            }
    }

    Digraph out(g.n());
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            const int count = multiplicity_of_color(g.color(u, v));
            if (count == 2) {
                out.add_edge(u, v);
                out.add_edge(v, u);
            } else if (count == 1) {
                if (orient[ColoredGraph::pair_index(g.n(), u, v)] < 0)
                    out.add_edge(v, u);
                else
                    out.add_edge(u, v);
            }
        }
    return out;
}

}  // namespace gallai_lab
