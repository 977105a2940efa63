#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <string>

#include "gallai_lab/hardness.hpp"

namespace gallai_lab {

LinearConstraint LinearConstraint::weighted(int p, int q) {
    if (p < 1 || q < 1) throw PreconditionError("weighted constraint needs p, q >= 1");
    return {Shape::weighted, p, q};
}

LinearConstraint LinearConstraint::four_term() { return {Shape::four_term, 1, 1}; }

std::string LinearConstraint::describe() const {
    if (shape == Shape::four_term) return "s1 + s2 + s3 = 3 s4";
    return std::to_string(p) + " s1 + " + std::to_string(q) + " s2 = " + std::to_string(p + q) + " s3";
}

EquationFamily EquationFamily::three_term_progressions() { return {{LinearConstraint::weighted(1, 1)}}; }

EquationFamily EquationFamily::weighted_triangles(int f) {
    if (f < 3) throw PreconditionError("weighted triangle family needs f >= 3");
    EquationFamily fam;
    for (int p = 1; p <= f - 1; ++p)
        for (int q = 1; q <= f - 1; ++q) fam.constraints.push_back(LinearConstraint::weighted(p, q));
    return fam;
}

EquationFamily EquationFamily::four_term() { return {{LinearConstraint::four_term()}}; }

int EquationFamily::max_coefficient_sum() const {
    int best = 1;
    for (const auto& c : constraints) best = std::max(best, c.coefficient_sum());
    return best;
}

namespace {

struct Membership {
    std::vector<std::uint8_t> bits;
    bool contains(std::int64_t v) const {
        return v >= 1 && v < static_cast<std::int64_t>(bits.size()) && bits[static_cast<std::size_t>(v)];
    }
};

Membership membership_of(std::span<const std::int64_t> sorted) {
    Membership m;
    m.bits.assign(sorted.empty() ? 1 : static_cast<std::size_t>(sorted.back()) + 1, 0);
    for (auto v : sorted) m.bits[static_cast<std::size_t>(v)] = 1;
    return m;
}

std::vector<std::int64_t> checked_sorted(std::span<const std::int64_t> set) {
    std::vector<std::int64_t> s(set.begin(), set.end());
    std::sort(s.begin(), s.end());
    if (!s.empty() && s.front() < 1) throw PreconditionError("set elements must be positive");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionError("set elements must be distinct");
    if (!s.empty() && s.back() > (std::int64_t{1} << 32)) throw PreconditionError("set elements too large");
    return s;
}

// Solutions whose outer variable (s3 for weighted, s4 for four-term) is s[i].
std::vector<std::int64_t> solution_at(const std::vector<std::int64_t>& s, const Membership& in,
                                      const LinearConstraint& c, std::size_t i) {
    const std::int64_t outer = s[i];
    if (c.shape == LinearConstraint::Shape::weighted) {
        for (auto s1 : s) {
            if (s1 == outer) continue;
            const std::int64_t num = static_cast<std::int64_t>(c.p + c.q) * outer - c.p * s1;
            if (num <= 0 || num % c.q != 0) continue;
            const std::int64_t s2 = num / c.q;
            if (s2 != s1 && s2 != outer && in.contains(s2)) return {s1, s2, outer};
        }
        return {};
    }
    // Repeats are allowed among s1 <= s2 <= s3; only the all-equal solution is trivial.
    for (std::size_t a = 0; a < s.size(); ++a) {
        const auto s1 = s[a];
        for (std::size_t b = a; b < s.size(); ++b) {
            const auto s2 = s[b];
            const std::int64_t s3 = 3 * outer - s1 - s2;
            if (s3 < s2) break;
            if (!(s1 == s2 && s2 == s3) && in.contains(s3)) return {s1, s2, s3, outer};
        }
    }
    return {};
}

}  // namespace

namespace serial {

AvoidanceReport verify_avoiding_set(std::span<const std::int64_t> set, const EquationFamily& family) {
    const auto s = checked_sorted(set);
    const auto in = membership_of(s);
    for (std::size_t ci = 0; ci < family.constraints.size(); ++ci)
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto w = solution_at(s, in, family.constraints[ci], i);
            if (!w.empty()) return {false, static_cast<int>(ci), std::move(w)};
        }
    return {};
}

}  // namespace serial

AvoidanceReport verify_avoiding_set(std::span<const std::int64_t> set, const EquationFamily& family) {
    const auto s = checked_sorted(set);
    const auto in = membership_of(s);
    const auto count = static_cast<std::int64_t>(s.size());
    for (std::size_t ci = 0; ci < family.constraints.size(); ++ci) {
        const auto& c = family.constraints[ci];
        std::atomic<std::int64_t> first{std::numeric_limits<std::int64_t>::max()};
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < count; ++i) {
            if (i > first.load(std::memory_order_relaxed)) continue;
            if (!solution_at(s, in, c, static_cast<std::size_t>(i)).empty()) {
                auto seen = first.load();
                while (i < seen && !first.compare_exchange_weak(seen, i)) {
                }
            }
        }
        // The smallest outer index gives the same witness as the serial scan.
        if (const auto i = first.load(); i != std::numeric_limits<std::int64_t>::max())
            return {false, static_cast<int>(ci), solution_at(s, in, c, static_cast<std::size_t>(i))};
    }
    return {};
}

namespace {

// True when adding z (larger than every element of s) creates a solution.
bool creates_solution(const std::vector<std::int64_t>& s, const std::vector<std::uint8_t>& in, std::int64_t z,
                      const EquationFamily& family) {
    auto has = [&](std::int64_t v) { return v >= 1 && v < z && in[static_cast<std::size_t>(v)]; };
    for (const auto& c : family.constraints) {
        if (c.shape == LinearConstraint::Shape::weighted) {
            // z can only be s1 or s2: with every element below z, (p+q) z exceeds p s1 + q s2.
            for (auto s3 : s) {
                const std::int64_t total = static_cast<std::int64_t>(c.p + c.q) * s3;
                const std::int64_t r1 = total - static_cast<std::int64_t>(c.p) * z;  // z as s1
                if (r1 > 0 && r1 % c.q == 0) {
                    const auto s2 = r1 / c.q;
                    if (s2 != s3 && has(s2)) return true;
                }
                const std::int64_t r2 = total - static_cast<std::int64_t>(c.q) * z;  // z as s2
                if (r2 > 0 && r2 % c.p == 0) {
                    const auto s1 = r2 / c.p;
                    if (s1 != s3 && has(s1)) return true;
                }
            }
        } else {
            // z is the largest summand s3; as s4 it would force the trivial solution.
            for (auto s4 : s) {
                const std::int64_t rest = 3 * s4 - z;
                for (auto s2 : s) {
                    const std::int64_t s1 = rest - s2;
                    if (s1 > s2) continue;
                    if (s1 >= 1 && has(s1)) return true;
                }
                // s2 = z as well: s1 = 3 s4 - 2 z.
                if (has(3 * s4 - 2 * z)) return true;
            }
        }
    }
    return false;
}

std::vector<std::int64_t> greedy_set(std::int64_t m, const EquationFamily& family) {
    std::vector<std::int64_t> s;
    std::vector<std::uint8_t> in(static_cast<std::size_t>(m) + 1, 0);
    for (std::int64_t z = 1; z <= m; ++z) {
        if (creates_solution(s, in, z, family)) continue;
        s.push_back(z);
        in[static_cast<std::size_t>(z)] = 1;
    }
    return s;
}

std::vector<std::int64_t> behrend_set(std::int64_t m, const EquationFamily& family) {
    const std::int64_t coef = family.max_coefficient_sum();
    std::vector<std::int64_t> best{1};
    for (int dims = 1; dims <= 40; ++dims) {
        // Largest digit bound D whose carry-free base B = coef (D-1) + 1 keeps every
        // number below m.
        auto largest_value = [&](std::int64_t digits) -> std::int64_t {
            const std::int64_t base = coef * (digits - 1) + 1;
            std::int64_t power = 1, total = 0;
            for (int j = 0; j < dims; ++j) {
                total += (digits - 1) * power;
                if (total >= m) return m + 1;
                if (j + 1 < dims) {
                    if (power > m / base) return m + 1;
                    power *= base;
                }
            }
            return total + 1;
        };
        std::int64_t digits = 1;
        while (largest_value(digits + 1) <= m) ++digits;
        if (digits < 2) break;
        const std::int64_t base = coef * (digits - 1) + 1;

        std::map<std::int64_t, std::vector<std::int64_t>> shells;
        std::vector<std::int64_t> x(static_cast<std::size_t>(dims), 0);
        for (;;) {
            std::int64_t value = 0, norm = 0, power = 1;
            for (int j = 0; j < dims; ++j) {
                value += x[j] * power;
                norm += x[j] * x[j];
                power *= base;
            }
            shells[norm].push_back(value + 1);
            int j = 0;
            while (j < dims && ++x[j] == digits) x[j++] = 0;
            if (j == dims) break;
        }
        for (auto& [norm, values] : shells)
            if (values.size() > best.size()) best = values;
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace

std::vector<std::int64_t> avoiding_set(std::int64_t m, const EquationFamily& family, AvoidingMethod method) {
    if (m < 1) throw PreconditionError("avoiding set needs m >= 1");
    if (m > (std::int64_t{1} << 31)) throw PreconditionError("m too large");
    auto s = method == AvoidingMethod::greedy ? greedy_set(m, family) : behrend_set(m, family);
    for (;;) {
        const auto report = verify_avoiding_set(s, family);
        if (report.avoids) return s;
        std::erase(s, report.witness.back());
    }
}

}  // namespace gallai_lab
