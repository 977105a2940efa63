#include "gallai_lab/repair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gallai_lab/kernels.hpp"
#include "gallai_lab/rng.hpp"

namespace gallai_lab {

namespace {

std::int64_t saturating_ceil(double x) {
    if (!(x < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

RepairConfig RepairConfig::with_asymptotic_constants(double epsilon, std::uint64_t seed) {
    RepairConfig cfg;
    cfg.epsilon = epsilon;
    cfg.seed = seed;
    cfg.asymptotic_constants = true;
    return cfg.resolved();
}

RepairConfig RepairConfig::resolved() const {
    if (!asymptotic_constants) return *this;
    RepairConfig cfg = *this;
    const double e2 = epsilon * epsilon;
    const double s = 128.0 * std::log(2000.0 / e2) / e2;
    const double delta = e2 / (64.0 * s * s);
    const double k = 128.0 / e2;
    const double t = 2.0 * (k + s * std::log(s)) / delta;
    cfg.seed_sample = saturating_ceil(s);
    cfg.density = delta;
    cfg.batches = saturating_ceil(k);
    cfg.batch_size = saturating_ceil(t);
    return cfg;
}

void RepairConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0,1)");
    if (seed_sample < 1 || batch_size < 1) throw PreconditionError("sample sizes must be positive");
    if (batches < 2) throw PreconditionError("at least two batches are needed to select a level");
    if (!(density > 0.0)) throw PreconditionError("density threshold must be positive");
    if (retries < 1) throw PreconditionError("retries must be positive");
}

const char* to_string(PartitionRoute route) {
    switch (route) {
        case PartitionRoute::vertex_star: return "vertex_star";
        case PartitionRoute::sparse_color: return "sparse_color";
        case PartitionRoute::sampled: return "sampled";
    }
    return "unknown";
}

namespace {

std::vector<Vertex> members(const std::vector<std::uint8_t>& flags) {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < flags.size(); ++v)
        if (flags[v]) out.push_back(static_cast<Vertex>(v));
    return out;
}

std::size_t union_size(const std::vector<std::vector<std::uint8_t>>& sets, int n) {
    std::size_t total = 0;
    for (int v = 0; v < n; ++v)
        for (const auto& s : sets)
            if (s[v]) {
                ++total;
                break;
            }
    return total;
}

std::int64_t capped_product(std::int64_t a, std::int64_t b) {
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) return std::numeric_limits<std::int64_t>::max();
    return a * b;
}

// Removes T vertices from R until G[R] is rainbow-free, always dropping the T vertex
// that lies on the most rainbow triangles (lowest id on ties). Returns R sorted.
std::vector<Vertex> prune_rainbow(const ColoredGraph& g, const std::vector<Vertex>& seed_set,
                                  std::vector<Vertex> batch) {
    std::vector<Vertex> r = seed_set;
    r.insert(r.end(), batch.begin(), batch.end());
    std::sort(r.begin(), r.end());
    const int m = static_cast<int>(r.size());
    std::vector<std::uint8_t> removable(static_cast<std::size_t>(m), 0);
    {
        std::vector<std::uint8_t> in_t(static_cast<std::size_t>(g.n()), 0);
        for (Vertex v : batch) in_t[v] = 1;
        for (int i = 0; i < m; ++i) removable[i] = in_t[r[i]];
    }
    auto rainbow = [&](int i, int j, int l) {
        const Color x = g.color(r[i], r[j]), y = g.color(r[i], r[l]), z = g.color(r[j], r[l]);
        return x != y && y != z && x != z;
    };
    std::vector<std::int64_t> hits(static_cast<std::size_t>(m), 0);
    std::int64_t total = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int l = j + 1; l < m; ++l)
                if (rainbow(i, j, l)) {
                    ++hits[i];
                    ++hits[j];
                    ++hits[l];
                    ++total;
                }
    std::vector<std::uint8_t> alive(static_cast<std::size_t>(m), 1);
    while (total > 0) {
        int worst = -1;
        for (int i = 0; i < m; ++i)
            if (alive[i] && removable[i] && hits[i] > 0 && (worst < 0 || hits[i] > hits[worst])) worst = i;
        if (worst < 0) break;  // remaining triangles live inside S
        alive[worst] = 0;
        for (int j = 0; j < m; ++j) {
            if (!alive[j]) continue;
            for (int l = j + 1; l < m; ++l)
                if (alive[l] && rainbow(worst, j, l)) {
                    --hits[j];
                    --hits[l];
                    --total;
                }
        }
        hits[worst] = 0;
    }
    if (total > 0) return {};
    std::vector<Vertex> out;
    for (int i = 0; i < m; ++i)
        if (alive[i]) out.push_back(r[i]);
    return out;
}

ApproximatePartition star_route(const ColoredGraph& g, double eps) {
    const int n = g.n();
    for (Vertex x = 0; x < n; ++x)
        for (Color i = 1; i <= 3; ++i) {
            const int d = g.color_degree(x, i);
            if (static_cast<double>(d) >= (1.0 - eps) * (n - 1)) {
                ApproximatePartition r;
                r.certified = true;
                r.route = PartitionRoute::vertex_star;
                r.a = i;
                r.b = i % 3 + 1;
                std::vector<Vertex> rest;
                for (Vertex v = 0; v < n; ++v)
                    if (v != x) rest.push_back(v);
                r.partition.parts = {{x}, rest};
                r.targets = PartPairColors(2, i);
                r.cost = n - 1 - d;
                r.cross_pairs = n - 1;
                return r;
            }
        }
    return {};
}

ApproximatePartition sparse_route(const ColoredGraph& g, double eps) {
    const int n = g.n();
    const auto hist = g.color_histogram();
    const double pairs = static_cast<double>(g.pair_count());
    for (Color i = 1; i <= 3; ++i) {
        if (static_cast<double>(hist[i]) < eps * pairs) {
            ApproximatePartition r;
            r.certified = true;
            r.route = PartitionRoute::sparse_color;
            r.a = i == 1 ? 2 : 1;
            r.b = i == 3 ? 2 : 3;
            for (Vertex v = 0; v < n; ++v) r.partition.parts.push_back({v});
            r.targets = PartPairColors(n, r.a);
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (g.color(u, v) != i) r.targets.set(u, v, g.color(u, v));
            r.cost = hist[i];
            r.cross_pairs = static_cast<std::int64_t>(g.pair_count());
            return r;
        }
    }
    return {};
}

// Builds the candidate partition and its edit targets from grown layered sets.
ApproximatePartition assemble(const ColoredGraph& g, const std::vector<std::vector<Vertex>>& seed_parts,
                              const LayeredSets& layers, Color a, Color b) {
    const Color c = 6 - a - b;
    ApproximatePartition r;
    r.route = PartitionRoute::sampled;
    r.a = a;
    r.b = b;

    // Each seed vertex joins the part grown from its own seed part. With s comparable
    // to epsilon n, a catch-all part holding S would dominate the cost, so the hub
    // keeps only the boundary V'.
    const int p = static_cast<int>(layers.parts.size());
    for (int i = 0; i < p; ++i) {
        std::vector<Vertex> part = layers.parts[i];
        part.insert(part.end(), seed_parts[i].begin(), seed_parts[i].end());
        std::sort(part.begin(), part.end());
        r.partition.parts.push_back(std::move(part));
    }
    const bool has_hub = !layers.boundary.empty();
    if (has_hub) r.partition.parts.push_back(layers.boundary);
    const int first_single = static_cast<int>(r.partition.parts.size());
    for (Vertex x : layers.rest) r.partition.parts.push_back({x});
    const int m = static_cast<int>(r.partition.parts.size());

    // The cheaper of a and b over all pairs between two parts, ties to a.
    auto majority = [&](int i, int j) {
        std::int64_t count_a = 0, count_b = 0;
        for (Vertex u : r.partition.parts[i])
            for (Vertex v : r.partition.parts[j]) {
                const Color col = g.color(u, v);
                count_a += col == a;
                count_b += col == b;
            }
        return count_a >= count_b ? a : b;
    };

    r.targets = PartPairColors(m, a);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) r.targets.set(i, j, g.color(seed_parts[i].front(), seed_parts[j].front()));
    if (has_hub)
        for (int i = 0; i < p; ++i) r.targets.set(i, p, majority(i, p));
    for (int xi = first_single; xi < m; ++xi) {
        for (int i = 0; i < first_single; ++i) r.targets.set(xi, i, majority(xi, i));
        const Vertex x = r.partition.parts[xi].front();
        for (int yi = xi + 1; yi < m; ++yi) {
            const Color col = g.color(x, r.partition.parts[yi].front());
            r.targets.set(xi, yi, col == c ? a : col);
        }
    }
    r.cost = cost_against_targets(g, r.partition, r.targets);
    std::vector<std::int64_t> sizes;
    for (const auto& part : r.partition.parts) sizes.push_back(static_cast<std::int64_t>(part.size()));
    r.cross_pairs = cross_pair_count(sizes);
    return r;
}

}  // namespace

LayeredSets grow_layered_sets(const ColoredGraph& g, const std::vector<Vertex>& seed_set,
                              const std::vector<std::vector<Vertex>>& seed_parts, Color a, Color b,
                              const RepairConfig& cfg) {
    const int n = g.n();
    const Color c = 6 - a - b;
    const int p = static_cast<int>(seed_parts.size());
    const int levels = static_cast<int>(std::min<std::int64_t>(std::max<std::int64_t>(cfg.batches, 2), n + 2));
    const double threshold = cfg.density * n;

    std::vector<std::uint8_t> in_seed(static_cast<std::size_t>(n), 0);
    for (Vertex v : seed_set) in_seed[v] = 1;

    // current[i][x]: x in V_i at the current level.
    std::vector<std::vector<std::uint8_t>> current(static_cast<std::size_t>(p),
                                                   std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < p; ++i)
        for (Vertex x = 0; x < n; ++x) {
            if (in_seed[x]) continue;
            for (Vertex u : seed_parts[i])
                if (g.color(x, u) == c) {
                    current[i][x] = 1;
                    break;
                }
        }

    LayeredSets out;
    out.chains.assign(static_cast<std::size_t>(p), {});
    std::vector<std::size_t> union_sizes;
    std::vector<std::vector<std::vector<std::uint8_t>>> history;
    auto record = [&] {
        for (int i = 0; i < p; ++i) out.chains[i].push_back(members(current[i]));
        union_sizes.push_back(union_size(current, n));
        history.push_back(current);
    };
    record();

    std::vector<int> count_a(static_cast<std::size_t>(n)), count_b(static_cast<std::size_t>(n)),
        count_c(static_cast<std::size_t>(n));
    for (int level = 2; level <= levels; ++level) {
        auto next = current;
        for (int i = 0; i < p; ++i) {
            std::fill(count_a.begin(), count_a.end(), 0);
            std::fill(count_b.begin(), count_b.end(), 0);
            std::fill(count_c.begin(), count_c.end(), 0);
            for (Vertex v = 0; v < n; ++v) {
                if (!current[i][v]) continue;
                for (Vertex x = 0; x < n; ++x) {
                    if (x == v || in_seed[x]) continue;
                    const Color col = g.color(x, v);
                    count_a[x] += col == a;
                    count_b[x] += col == b;
                    count_c[x] += col == c;
                }
            }
            for (Vertex x = 0; x < n; ++x) {
                if (in_seed[x] || next[i][x]) continue;
                if (count_c[x] >= threshold || (count_a[x] >= threshold && count_b[x] >= threshold))
                    next[i][x] = 1;
            }
        }
        current = std::move(next);
        record();
        if (union_sizes.back() == union_sizes[union_sizes.size() - 2]) {
            // Fixed point: later levels repeat this one.
            for (int rest = level + 1; rest <= levels; ++rest) record();
            break;
        }
    }

    const double slack = cfg.epsilon * cfg.epsilon / 128.0 * n;
    out.level = levels - 1;
    for (int l = 1; l <= levels - 1; ++l)
        if (static_cast<double>(union_sizes[l]) <= static_cast<double>(union_sizes[l - 1]) + slack) {
            out.level = l;
            out.stabilized = true;
            break;
        }

    const auto& chosen = history[out.level - 1];
    const auto& after = history[out.level];
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (Vertex x = 0; x < n; ++x)
        for (int i = 0; i < p; ++i)
            if (chosen[i][x]) {
                owner[x] = i;
                break;
            }
    out.parts.assign(static_cast<std::size_t>(p), {});
    for (Vertex x = 0; x < n; ++x) {
        if (owner[x] >= 0) {
            out.parts[owner[x]].push_back(x);
            continue;
        }
        if (in_seed[x]) continue;
        bool grown = false;
        for (int i = 0; i < p && !grown; ++i) grown = after[i][x] != 0;
        (grown ? out.boundary : out.rest).push_back(x);
    }
    return out;
}

bool certify(const ColoredGraph& g, const ApproximatePartition& result, double epsilon) {
    try {
        result.partition.validate(g.n());
    } catch (const InvalidPartition&) {
        return false;
    }
    const int m = static_cast<int>(result.partition.size());
    if (m < 2 || result.targets.parts() != m || result.a == result.b) return false;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const Color t = result.targets.at(i, j);
            if (t != result.a && t != result.b) return false;
        }
    const auto recount = cost_against_targets(g, result.partition, result.targets);
    const auto e = cross_pair_count(result.partition);
    return recount == result.cost && e == result.cross_pairs && e > 0 &&
           static_cast<double>(recount) <= epsilon * static_cast<double>(e);
}

ApproximatePartition approximate_partition(const ColoredGraph& g, const RepairConfig& config) {
    const RepairConfig cfg = config.resolved();
    cfg.validate();
    if (g.k() != 3) throw UnsupportedColorCount("approximate partition needs k = 3");
    const int n = g.n();
    if (n < 2) throw PreconditionError("approximate partition needs n >= 2");
    const double eps = cfg.epsilon;

    if (auto r = star_route(g, eps); r.certified) return r;
    if (auto r = sparse_route(g, eps); r.certified) return r;

    const std::int64_t s = std::min<std::int64_t>(cfg.seed_sample, n - 1);
    const std::int64_t t_total = std::min<std::int64_t>(capped_product(cfg.batches, cfg.batch_size), n - s);
    const double min_cross = eps / 16.0 * static_cast<double>(n) * static_cast<double>(n);

    Rng rng(cfg.seed);
    ApproximatePartition best;
    best.best_ratio = std::numeric_limits<double>::infinity();
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int attempt = 1; attempt <= cfg.retries; ++attempt) {
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::vector<Vertex> seed_set(order.begin(), order.begin() + s);
        std::vector<Vertex> batch(order.begin() + s, order.begin() + s + t_total);
        std::sort(seed_set.begin(), seed_set.end());

        if (find_rainbow_triangle(g.induced(seed_set))) continue;
        const auto sample = prune_rainbow(g, seed_set, batch);
        if (sample.empty()) continue;
        const auto found = monochromatic_partition(g.induced(sample));
        if (!found) continue;

        std::vector<std::uint8_t> in_seed(static_cast<std::size_t>(n), 0);
        for (Vertex v : seed_set) in_seed[v] = 1;
        std::vector<std::vector<Vertex>> seed_parts;
        for (const auto& part : found->partition.parts) {
            std::vector<Vertex> restricted;
            for (Vertex local : part)
                if (in_seed[sample[local]]) restricted.push_back(sample[local]);
            if (!restricted.empty()) seed_parts.push_back(std::move(restricted));
        }
        if (seed_parts.size() < 2) continue;

        const auto layers = grow_layered_sets(g, seed_set, seed_parts, found->a, found->b, cfg);
        auto candidate = assemble(g, seed_parts, layers, found->a, found->b);
        candidate.attempts = attempt;
        if (candidate.partition.size() < 2 || candidate.cross_pairs == 0) continue;
        const bool close = static_cast<double>(candidate.cost) <= eps * static_cast<double>(candidate.cross_pairs);
        if (close && static_cast<double>(candidate.cross_pairs) >= min_cross) {
            candidate.certified = true;
            candidate.best_ratio = candidate.ratio();
            return candidate;
        }
        if (candidate.ratio() < best.best_ratio) {
            const double ratio = candidate.ratio();
            best = std::move(candidate);
            best.best_ratio = ratio;
        }
    }
    best.certified = false;
    best.attempts = cfg.retries;
    return best;
}

namespace {

class RepairRun {
public:
    RepairRun(const ColoredGraph& g, const RepairConfig& cfg) : g_(g), cfg_(cfg) {}

    RepairResult run() {
        std::vector<Vertex> all(static_cast<std::size_t>(g_.n()));
        std::iota(all.begin(), all.end(), 0);
        result_.complete = true;
        result_.tree = visit(all);
        return std::move(result_);
    }

private:
    RepairTreeNode visit(const std::vector<Vertex>& set) {
        RepairTreeNode node;
        node.size = static_cast<int>(set.size());
        node.vertices = set;
        if (!result_.complete) return node;

        const double min_split = cfg_.epsilon * g_.n();
        if (set.size() < 2 || static_cast<double>(set.size()) < min_split) {
            for (std::size_t i = 0; i < set.size(); ++i)
                for (std::size_t j = i + 1; j < set.size(); ++j) {
                    const Color old = g_.color(set[i], set[j]);
                    if (old != 1) {
                        result_.transcript.edits.push_back({set[i], set[j], old, 1});
                        ++node.cost;
                    }
                }
            result_.leaf_cost += node.cost;
            return node;
        }

        RepairConfig local = cfg_;
        local.seed = Rng::derive(cfg_.seed, static_cast<std::uint64_t>(result_.partition_calls));
        ++result_.partition_calls;
        const ColoredGraph sub = g_.induced(set);
        const auto found = approximate_partition(sub, local);
        if (!found.certified || !certify(sub, found, cfg_.epsilon)) {
            result_.complete = false;
            result_.diagnosis = "no certified partition for a set of " + std::to_string(set.size()) +
                                " vertices after " + std::to_string(found.attempts) +
                                " attempts (best cost/e(P) = " + std::to_string(found.best_ratio) +
                                "); the input is likely far from rainbow-triangle-free";
            return node;
        }

        node.leaf = false;
        node.route = found.route;
        node.a = found.a;
        node.b = found.b;
        node.cross_pairs = found.cross_pairs;
        node.targets = found.targets;
        const auto owner = found.partition.part_index(sub.n());
        for (int u = 0; u < sub.n(); ++u)
            for (int v = u + 1; v < sub.n(); ++v) {
                if (owner[u] == owner[v]) continue;
                const Color target = found.targets.at(owner[u], owner[v]);
                const Color old = sub.color(u, v);
                if (old != target) {
                    result_.transcript.edits.push_back({set[u], set[v], old, target});
                    ++node.cost;
                }
            }
        result_.cross_cost += node.cost;
        for (const auto& part : found.partition.parts) {
            std::vector<Vertex> child;
            child.reserve(part.size());
            for (Vertex local_v : part) child.push_back(set[local_v]);
            node.children.push_back(visit(child));
            if (!result_.complete) break;
        }
        return node;
    }

    const ColoredGraph& g_;
    RepairConfig cfg_;
    RepairResult result_;
};

}  // namespace

RepairResult repair(const ColoredGraph& g, const RepairConfig& config) {
    const RepairConfig cfg = config.resolved();
    cfg.validate();
    if (g.k() != 3) throw UnsupportedColorCount("repair needs k = 3");
    return RepairRun(g, cfg).run();
}

std::int64_t tester_sample_count(double epsilon, double exponent, double confidence) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0,1)");
    if (!(confidence > 0.0 && confidence < 1.0)) throw PreconditionError("confidence must lie in (0,1)");
    if (!(exponent > 0.0)) throw PreconditionError("exponent must be positive");
    const double q = std::log(1.0 / (1.0 - confidence)) / std::pow(epsilon, exponent);
    return std::max<std::int64_t>(1, saturating_ceil(q));
}

TesterResult test_rainbow_free(const ColoredGraph& g, const TesterConfig& cfg) {
    if (g.k() != 3) throw UnsupportedColorCount("tester needs k = 3");
    if (g.n() < 3) throw PreconditionError("tester needs n >= 3");
    TesterResult out;
    out.planned = cfg.samples ? *cfg.samples : tester_sample_count(cfg.epsilon, cfg.exponent, cfg.confidence);
    if (out.planned < 1) throw PreconditionError("sample count must be positive");
    std::int64_t q = out.planned;
    if (static_cast<std::uint64_t>(q) > cfg.budget) {
        q = static_cast<std::int64_t>(cfg.budget);
        out.capped = true;
    }

    const std::int64_t n = g.n();
    const std::int64_t triples = n * (n - 1) * (n - 2) / 6;
    if (triples <= q) {
        out.exhaustive = true;
        out.capped = false;
        out.drawn = triples;
        if (auto w = find_rainbow_triangle(g)) {
            out.accept = false;
            out.witness = *w;
        }
        return out;
    }

    Rng rng(cfg.seed);
    for (std::int64_t i = 0; i < q; ++i) {
        std::array<Vertex, 3> t{};
        t[0] = static_cast<Vertex>(rng.uniform(0, n - 1));
        do t[1] = static_cast<Vertex>(rng.uniform(0, n - 1)); while (t[1] == t[0]);
        do t[2] = static_cast<Vertex>(rng.uniform(0, n - 1)); while (t[2] == t[0] || t[2] == t[1]);
        ++out.drawn;
        const Color x = g.color(t[0], t[1]), y = g.color(t[0], t[2]), z = g.color(t[1], t[2]);
        if (x != y && y != z && x != z) {
            std::sort(t.begin(), t.end());
            out.accept = false;
            out.witness = t;
            return out;
        }
    }
    return out;
}

}  // namespace gallai_lab
