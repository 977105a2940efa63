#include <algorithm>
#include <string>
#include <vector>

#include "gallai_lab/hardness.hpp"
#include "gallai_lab/kernels.hpp"

namespace gallai_lab {

const char* to_string(HardnessKind kind) {
    switch (kind) {
        case HardnessKind::triangle: return "triangle-hardness";
        case HardnessKind::f4: return "f4-hardness";
        case HardnessKind::d3: return "d3-hardness";
    }
    return "?";
}

ColoredGraph f4_pattern() {
    ColoredGraph f(4, 3, 1);
    f.set_color(0, 1, 1);
    f.set_color(2, 3, 1);
    f.set_color(0, 3, 2);
    f.set_color(1, 2, 2);
    f.set_color(0, 2, 3);
    f.set_color(1, 3, 3);
    return f;
}

Digraph d3_pattern() {
    Digraph d(3);
    d.add_edge(0, 2);
    d.add_edge(1, 2);
    d.add_edge(2, 1);
    return d;
}

Vertex interval_vertex(std::int64_t m, int index, std::int64_t value) {
    return static_cast<Vertex>(m * index * (index - 1) / 2 + value - 1);
}

int HardnessInstance::host_size() const {
    return std::visit([](const auto& g) { return g.n(); }, host);
}

int HardnessInstance::blown_size() const {
    return std::visit([](const auto& g) { return g.n(); }, blown);
}

namespace {

std::vector<std::int64_t> choose_set(std::int64_t m, const EquationFamily& fam, const HardnessOptions& opts) {
    if (!opts.set_override) return avoiding_set(m, fam, opts.method);
    auto s = *opts.set_override;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty() || s.front() < 1 || s.back() > m) throw PreconditionError("set override must lie in [1..m]");
    return s;
}

// Host vertex count f(f+1)m/2, checked against the dense-table limit.
int host_vertex_count(std::int64_t m, int f) {
    if (m < 1) throw PreconditionError("m must be >= 1");
    const std::int64_t n = static_cast<std::int64_t>(f) * (f + 1) / 2 * m;
    if (n > 65'536) throw PreconditionError("host too large: " + std::to_string(n) + " vertices");
    return static_cast<int>(n);
}

// Copy F_{x,s}: position i sits at x + i*s in interval i+1.
CopyFamily planted_family(std::int64_t m, int f, const std::vector<std::int64_t>& set) {
    CopyFamily fam(f);
    fam.copies.reserve(static_cast<std::size_t>(m) * set.size());
    for (std::int64_t x = 1; x <= m; ++x)
        for (auto s : set) {
            std::vector<Vertex> t(static_cast<std::size_t>(f));
            for (int i = 0; i < f; ++i) t[i] = interval_vertex(m, i + 1, x + i * s);
            fam.copies.push_back(std::move(t));
        }
    return fam;
}

// Owner bookkeeping that refuses a second copy on an already planted pair.
class PairOwners {
public:
    explicit PairOwners(int n) : n_(n), owner_(static_cast<std::size_t>(n) * (n - 1) / 2, -1) {}

    void claim(Vertex u, Vertex v, std::int64_t copy) {
        auto& o = owner_[ColoredGraph::pair_index(n_, u, v)];
        if (o >= 0)
            throw ConstructionIntegrityError("pair {" + std::to_string(u) + "," + std::to_string(v) +
                                             "} planted by copies " + std::to_string(o) + " and " +
                                             std::to_string(copy));
        o = copy;
    }
    bool planted(Vertex u, Vertex v) const { return owner_[ColoredGraph::pair_index(n_, u, v)] >= 0; }

private:
    int n_;
    std::vector<std::int64_t> owner_;
};

ColoredGraph plant_colored(int n, const ColoredGraph& pattern, Color background, const CopyFamily& fam) {
    ColoredGraph h(n, pattern.k(), background);
    PairOwners owners(n);
    for (std::size_t c = 0; c < fam.copies.size(); ++c) {
        const auto& t = fam.copies[c];
        for (int i = 0; i < pattern.n(); ++i)
            for (int j = i + 1; j < pattern.n(); ++j) {
                owners.claim(t[i], t[j], static_cast<std::int64_t>(c));
                h.set_color(t[i], t[j], pattern.color(i, j));
            }
    }
    return h;
}

// One blown-up copy per (host copy, design tuple); empty unless factor >= 2f.
CopyFamily blown_family(const CopyFamily& host_family, int factor, int& prime) {
    CopyFamily fam(host_family.pattern_size);
    prime = 0;
    const int f = host_family.pattern_size;
    if (factor < 2 * f) return fam;
    const auto design = design_family(factor, f);
    prime = design.prime;
    fam.copies.reserve(host_family.size() * design.tuples.size());
    for (const auto& t : host_family.copies)
        for (const auto& y : design.tuples) {
            std::vector<Vertex> b(static_cast<std::size_t>(f));
            for (int i = 0; i < f; ++i) b[i] = t[i] * factor + y[i] - 1;
            fam.copies.push_back(std::move(b));
        }
    return fam;
}

template <class Graph, class Pattern, class Check>
void check_copies(const Graph& g, const Pattern& pattern, const CopyFamily& fam, Check is_valid, const char* where) {
    for (std::size_t c = 0; c < fam.copies.size(); ++c)
        if (!is_valid(g, pattern, fam.copies[c]))
            throw ConstructionIntegrityError(std::string("planted tuple ") + std::to_string(c) + " in the " + where +
                                             " is not a copy of the pattern");
}

void finish_claims(HardnessInstance& inst, int prime) {
    auto& c = inst.claims;
    c.planted_host = static_cast<std::int64_t>(inst.host_family.size());
    c.design_prime = prime;
    c.blowup_family_planted = prime > 0;
    c.planted_blowup = static_cast<std::int64_t>(inst.blowup_family.size());
    c.host_pair_disjoint = verify_pair_disjoint(inst.host_family).pair_disjoint;
    c.blowup_pair_disjoint = verify_pair_disjoint(inst.blowup_family).pair_disjoint;
    const double f = inst.pattern_size;
    c.implied_epsilon = static_cast<double>(inst.set.size()) / (4.0 * f * f * f * f * static_cast<double>(inst.m));
}

EnumerationOptions count_options(const HardnessOptions& opts) {
    EnumerationOptions e;
    e.budget = opts.budget;
    e.collect = false;
    return e;
}

}  // namespace

HardnessInstance triangle_hardness(const ColoredGraph& pattern, Color avoided, std::int64_t m, int factor,
                                   const HardnessOptions& opts) {
    const int f = pattern.n();
    if (f < 3) throw PreconditionError("pattern needs at least 3 vertices");
    if (avoided < 1 || avoided > pattern.k()) throw ColorOutOfRange("avoided color out of range");
    if (triangles_avoiding_color(pattern, avoided) == 0)
        throw PreconditionError("pattern has no triangle avoiding color " + std::to_string(avoided));
    const int n = host_vertex_count(m, f);

    HardnessInstance inst;
    inst.kind = HardnessKind::triangle;
    inst.m = m;
    inst.equations = EquationFamily::weighted_triangles(f);
    inst.set = choose_set(m, inst.equations, opts);
    inst.pattern_size = f;
    inst.factor = factor;
    inst.avoided = avoided;
    inst.pattern = pattern;
    inst.host_family = planted_family(m, f, inst.set);
    auto host = plant_colored(n, pattern, avoided, inst.host_family);
    auto blown = blowup(host, factor, avoided);
    int prime = 0;
    inst.blowup_family = blown_family(inst.host_family, factor, prime);
    check_copies(host, pattern, inst.host_family, [](auto& g, auto& p, auto& t) { return is_copy(g, p, t); }, "host");
    check_copies(blown, pattern, inst.blowup_family, [](auto& g, auto& p, auto& t) { return is_copy(g, p, t); },
                 "blowup");
    finish_claims(inst, prime);
    inst.claims.host_count_bound = static_cast<std::int64_t>(f) * f * f * f * m * m;
    if (opts.count_host) {
        inst.claims.host_count = triangles_avoiding_color(host, avoided);
        inst.claims.counts_hold = inst.claims.host_count <= inst.claims.host_count_bound;
    }
    inst.host = std::move(host);
    inst.blown = std::move(blown);
    return inst;
}

HardnessInstance f4_hardness(std::int64_t m, int factor, const HardnessOptions& opts) {
    constexpr int f = 4;
    const int n = host_vertex_count(m, f);
    const auto pattern = f4_pattern();

    HardnessInstance inst;
    inst.kind = HardnessKind::f4;
    inst.m = m;
    inst.equations = EquationFamily::four_term();
    inst.set = choose_set(m, inst.equations, opts);
    inst.pattern_size = f;
    inst.factor = factor;
    inst.avoided = 3;
    inst.pattern = pattern;
    inst.host_family = planted_family(m, f, inst.set);
    auto host = plant_colored(n, pattern, 3, inst.host_family);

    // Every V1-V3 and V2-V4 pair carries color 3, planted or not.
    auto interval = [&](int i) {
        const Vertex lo = interval_vertex(m, i, 1);
        return std::pair<Vertex, Vertex>{lo, lo + static_cast<Vertex>(i * m)};
    };
    for (auto [i, j] : {std::pair{1, 3}, std::pair{2, 4}}) {
        const auto [a0, a1] = interval(i);
        const auto [b0, b1] = interval(j);
        for (Vertex u = a0; u < a1; ++u)
            for (Vertex v = b0; v < b1; ++v)
                if (host.color(u, v) != 3)
                    throw ConstructionIntegrityError("V" + std::to_string(i) + "-V" + std::to_string(j) + " pair {" +
                                                     std::to_string(u) + "," + std::to_string(v) +
                                                     "} is not color 3");
    }

    auto blown = blowup(host, factor, 3);
    int prime = 0;
    inst.blowup_family = blown_family(inst.host_family, factor, prime);
    check_copies(host, pattern, inst.host_family, [](auto& g, auto& p, auto& t) { return is_copy(g, p, t); }, "host");
    check_copies(blown, pattern, inst.blowup_family, [](auto& g, auto& p, auto& t) { return is_copy(g, p, t); },
                 "blowup");
    finish_claims(inst, prime);
    inst.claims.host_count_bound = inst.claims.planted_host;
    if (opts.count_host) {
        inst.claims.host_count = enumerate_copies(host, pattern, count_options(opts)).occurrences;
        inst.claims.counts_hold = inst.claims.host_count == inst.claims.host_count_bound;
    }
    inst.host = std::move(host);
    inst.blown = std::move(blown);
    return inst;
}

HardnessInstance d3_hardness(std::int64_t m, int factor, const HardnessOptions& opts) {
    constexpr int f = 3;
    const int n = host_vertex_count(m, f);
    const auto pattern = d3_pattern();

    HardnessInstance inst;
    inst.kind = HardnessKind::d3;
    inst.m = m;
    inst.equations = EquationFamily::three_term_progressions();
    inst.set = choose_set(m, inst.equations, opts);
    inst.pattern_size = f;
    inst.factor = factor;
    inst.avoided = 1;
    inst.pattern = pattern;
    inst.host_family = planted_family(m, f, inst.set);

    Digraph host(n);
    PairOwners owners(n);
    for (std::size_t c = 0; c < inst.host_family.copies.size(); ++c) {
        const auto& t = inst.host_family.copies[c];
        for (int i = 0; i < f; ++i)
            for (int j = i + 1; j < f; ++j) owners.claim(t[i], t[j], static_cast<std::int64_t>(c));
        for (const auto& [a, b] : pattern.edges()) host.add_edge(t[a], t[b]);
    }
    const Vertex v3_start = interval_vertex(m, 3, 1);
    const Vertex v1_end = static_cast<Vertex>(m);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (owners.planted(u, v)) continue;
            if (u < v1_end && v >= v3_start)
                host.add_edge(v, u);
            else
                host.add_edge(u, v);
        }

    auto blown = blowup(host, factor);
    int prime = 0;
    inst.blowup_family = blown_family(inst.host_family, factor, prime);
    auto induced = [](auto& g, auto& p, auto& t) { return is_induced_copy(g, p, t); };
    check_copies(host, pattern, inst.host_family, induced, "host");
    check_copies(blown, pattern, inst.blowup_family, induced, "blowup");
    finish_claims(inst, prime);
    inst.claims.host_count_bound = inst.claims.planted_host;
    if (opts.count_host) {
        inst.claims.host_count = enumerate_copies(host, pattern, count_options(opts)).occurrences;
        inst.claims.counts_hold = inst.claims.host_count == inst.claims.host_count_bound;
    }
    inst.host = std::move(host);
    inst.blown = std::move(blown);
    return inst;
}

}  // namespace gallai_lab
