#include "gallai_lab/copies.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

namespace gallai_lab {

CopyFamily::CopyFamily(int size) : pattern_size(size), role_map(static_cast<std::size_t>(size)) {
    std::iota(role_map.begin(), role_map.end(), 0);
}

void CopyFamily::validate(int host_n) const {
    if (static_cast<int>(role_map.size()) != pattern_size)
        throw InvalidFamily("role map length differs from pattern size");
    std::vector<int> seen_role(static_cast<std::size_t>(pattern_size), 0);
    for (int r : role_map) {
        if (r < 0 || r >= pattern_size || seen_role[r]++)
            throw InvalidFamily("role map is not a permutation");
    }
    for (std::size_t i = 0; i < copies.size(); ++i) {
        const auto& t = copies[i];
        if (static_cast<int>(t.size()) != pattern_size)
            throw InvalidFamily("copy " + std::to_string(i) + " has " + std::to_string(t.size()) +
                                " vertices, expected " + std::to_string(pattern_size));
        for (std::size_t a = 0; a < t.size(); ++a) {
            if (t[a] < 0 || t[a] >= host_n)
                throw InvalidFamily("copy " + std::to_string(i) + " vertex " + std::to_string(t[a]) +
                                    " outside host");
            for (std::size_t b = a + 1; b < t.size(); ++b)
                if (t[a] == t[b])
                    throw InvalidFamily("copy " + std::to_string(i) + " repeats vertex " +
                                        std::to_string(t[a]));
        }
    }
}

std::uint64_t default_enumeration_budget() {
    if (const char* env = std::getenv("GALLAI_LAB_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1'000'000'000ULL;
}

namespace {

struct ColoredMatch {
    const ColoredGraph& host;
    const ColoredGraph& pattern;
    int host_n() const { return host.n(); }
    int size() const { return pattern.n(); }
    bool ok(int i, int j, Vertex x, Vertex y) const { return host.color(x, y) == pattern.color(i, j); }
};

struct InducedMatch {
    const Digraph& host;
    const Digraph& pattern;
    int host_n() const { return host.n(); }
    int size() const { return pattern.n(); }
    bool ok(int i, int j, Vertex x, Vertex y) const {
        return host.has_edge(x, y) == pattern.has_edge(i, j) && host.has_edge(y, x) == pattern.has_edge(j, i);
    }
};

template <class Match>
std::vector<std::vector<int>> automorphisms_of(const Match& self) {
    const int f = self.size();
    std::vector<int> perm(static_cast<std::size_t>(f));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < f && ok; ++i)
            for (int j = i + 1; j < f && ok; ++j) ok = self.ok(perm[i], perm[j], i, j);
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool canonical(const std::vector<Vertex>& t, const std::vector<std::vector<int>>& autos) {
    for (const auto& sigma : autos) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const Vertex other = t[sigma[i]];
            if (other < t[i]) return false;
            if (other > t[i]) break;
        }
    }
    return true;
}

struct SearchShared {
    std::uint64_t budget;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
};

template <class Match>
class Searcher {
public:
    Searcher(const Match& m, const std::vector<std::vector<int>>& autos, SearchShared& shared, bool collect)
        : m_(m), autos_(autos), shared_(shared), collect_(collect),
          tuple_(static_cast<std::size_t>(m.size())), used_(static_cast<std::size_t>(m.host_n()), 0) {}

    void run_from(Vertex first, std::vector<std::vector<Vertex>>& out) {
        out_ = &out;
        tuple_[0] = first;
        used_[first] = 1;
        tick();
        extend(1);
        used_[first] = 0;
    }

    void finish() { flush(); }
    std::int64_t injections() const { return injections_; }

private:
    void tick() {
        if (++local_nodes_ >= 4096) flush();
    }

    void flush() {
        const auto total = shared_.nodes.fetch_add(local_nodes_) + local_nodes_;
        local_nodes_ = 0;
        if (total > shared_.budget) shared_.aborted.store(true, std::memory_order_relaxed);
    }

    void extend(int depth) {
        if (shared_.aborted.load(std::memory_order_relaxed)) return;
        if (depth == m_.size()) {
            ++injections_;
            if (collect_ && canonical(tuple_, autos_)) out_->push_back(tuple_);
            return;
        }
        const int n = m_.host_n();
        for (Vertex y = 0; y < n; ++y) {
            if (used_[y]) continue;
            tick();
            bool ok = true;
            for (int i = 0; i < depth && ok; ++i) ok = m_.ok(i, depth, tuple_[i], y);
            if (!ok) continue;
            tuple_[depth] = y;
            used_[y] = 1;
            extend(depth + 1);
            used_[y] = 0;
        }
    }

    const Match& m_;
    const std::vector<std::vector<int>>& autos_;
    SearchShared& shared_;
    bool collect_;
    std::vector<Vertex> tuple_;
    std::vector<std::uint8_t> used_;
    std::vector<std::vector<Vertex>>* out_ = nullptr;
    std::uint64_t local_nodes_ = 0;
    std::int64_t injections_ = 0;
};

template <class Match>
void check_pattern(const Match& m, const EnumerationOptions& opts) {
    if (m.size() < 1) throw PreconditionError("pattern must have at least one vertex");
    if (m.size() > opts.max_pattern_size)
        throw PreconditionError("pattern has " + std::to_string(m.size()) + " vertices, cap is " +
                                std::to_string(opts.max_pattern_size));
}

template <class Match>
EnumerationResult run(const Match& m, const EnumerationOptions& opts, bool use_threads) {
    check_pattern(m, opts);
    const auto autos = automorphisms_of(Match{m.pattern, m.pattern});
    SearchShared shared;
    shared.budget = opts.budget ? opts.budget : default_enumeration_budget();

    const int n = m.host_n();
    std::vector<std::vector<std::vector<Vertex>>> buckets(static_cast<std::size_t>(n));
    std::int64_t injections = 0;

    if (m.size() <= n) {
        if (use_threads) {
#pragma omp parallel reduction(+ : injections)
            {
                Searcher<Match> s(m, autos, shared, opts.collect);
#pragma omp for schedule(dynamic, 1)
                for (int x = 0; x < n; ++x) s.run_from(x, buckets[x]);
                s.finish();
                injections += s.injections();
            }
        } else {
            Searcher<Match> s(m, autos, shared, opts.collect);
            for (int x = 0; x < n; ++x) s.run_from(x, buckets[x]);
            s.finish();
            injections = s.injections();
        }
    }

    if (shared.aborted.load() || shared.nodes.load() > shared.budget)
        throw BudgetExceeded("copy enumeration exceeded the budget of " + std::to_string(shared.budget) +
                             " candidate extensions; refusing to report a truncated count");

    EnumerationResult r;
    r.family = CopyFamily(m.size());
    for (auto& b : buckets)
        for (auto& t : b) r.family.copies.push_back(std::move(t));
    r.injections = injections;
    r.automorphisms = static_cast<std::int64_t>(autos.size());
    r.occurrences = injections / r.automorphisms;
    r.nodes = shared.nodes.load();
    return r;
}

}  // namespace

EnumerationResult enumerate_copies(const ColoredGraph& host, const ColoredGraph& pattern,
                                   const EnumerationOptions& opts) {
    return run(ColoredMatch{host, pattern}, opts, true);
}

EnumerationResult enumerate_copies(const Digraph& host, const Digraph& pattern, const EnumerationOptions& opts) {
    return run(InducedMatch{host, pattern}, opts, true);
}

namespace serial {

EnumerationResult enumerate_copies(const ColoredGraph& host, const ColoredGraph& pattern,
                                   const EnumerationOptions& opts) {
    return run(ColoredMatch{host, pattern}, opts, false);
}

EnumerationResult enumerate_copies(const Digraph& host, const Digraph& pattern, const EnumerationOptions& opts) {
    return run(InducedMatch{host, pattern}, opts, false);
}

}  // namespace serial

std::vector<std::vector<int>> automorphisms(const ColoredGraph& pattern) {
    return automorphisms_of(ColoredMatch{pattern, pattern});
}

std::vector<std::vector<int>> automorphisms(const Digraph& pattern) {
    return automorphisms_of(InducedMatch{pattern, pattern});
}

bool is_copy(const ColoredGraph& host, const ColoredGraph& pattern, std::span<const Vertex> tuple) {
    if (static_cast<int>(tuple.size()) != pattern.n()) return false;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) return false;
            if (host.color(tuple[i], tuple[j]) != pattern.color(static_cast<int>(i), static_cast<int>(j)))
                return false;
        }
    return true;
}

bool is_induced_copy(const Digraph& host, const Digraph& pattern, std::span<const Vertex> tuple) {
    if (static_cast<int>(tuple.size()) != pattern.n()) return false;
    const InducedMatch m{host, pattern};
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) return false;
            if (!m.ok(static_cast<int>(i), static_cast<int>(j), tuple[i], tuple[j])) return false;
        }
    return true;
}

PairDisjointReport verify_pair_disjoint(const CopyFamily& family) {
    PairDisjointReport report;
    std::unordered_map<std::uint64_t, int> owner;
    std::vector<std::pair<int, int>> hits;
    for (std::size_t idx = 0; idx < family.copies.size(); ++idx) {
        const auto& t = family.copies[idx];
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = a + 1; b < t.size(); ++b) {
                const auto lo = static_cast<std::uint64_t>(std::min(t[a], t[b]));
                const auto hi = static_cast<std::uint64_t>(std::max(t[a], t[b]));
                const auto [it, fresh] = owner.emplace((lo << 32) | hi, static_cast<int>(idx));
                if (!fresh && it->second != static_cast<int>(idx))
                    hits.emplace_back(it->second, static_cast<int>(idx));
            }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    report.pair_disjoint = hits.empty();
    report.violations = std::move(hits);
    return report;
}

}  // namespace gallai_lab
