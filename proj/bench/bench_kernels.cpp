// Serial reference versus OpenMP kernels: rainbow counting, color-avoiding triangles,
// copy enumeration and avoiding-set verification.
//
// usage: bench_kernels [n] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "gallai_lab/copies.hpp"
#include "gallai_lab/hardness.hpp"
#include "gallai_lab/kernels.hpp"
#include "gallai_lab/rng.hpp"

using namespace gallai_lab;

namespace {

double best_seconds(int repeats, const std::function<std::int64_t()>& fn, std::int64_t& value) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        value = fn();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
    }
    return best;
}

void row(const char* name, int repeats, const std::function<std::int64_t()>& serial_fn,
         const std::function<std::int64_t()>& parallel_fn) {
    std::int64_t a = 0, b = 0;
    const double ts = best_seconds(repeats, serial_fn, a);
    const double tp = best_seconds(repeats, parallel_fn, b);
    std::printf("%-28s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
                a == b ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 600;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    std::printf("workers: %d, n = %d, best of %d\n", worker_count(), n, repeats);

    Rng rng(1);
    ColoredGraph g(n, 3, 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_color(u, v, static_cast<Color>(rng.uniform(1, 3)));

    row("rainbow triangles", repeats, [&] { return serial::count_rainbow_triangles(g); },
        [&] { return parallel::count_rainbow_triangles(g); });
    row("triangles avoiding color 2", repeats, [&] { return serial::triangles_avoiding_color(g, 2); },
        [&] { return parallel::triangles_avoiding_color(g, 2); });

    const auto host = g.induced(std::vector<Vertex>([&] {
        std::vector<Vertex> vs(std::min(n, 60));
        for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
        return vs;
    }()));
    const auto f4 = f4_pattern();
    EnumerationOptions eo;
    eo.collect = false;
    row("F4 copies (n<=60)", repeats, [&] { return serial::enumerate_copies(host, f4, eo).occurrences; },
        [&] { return enumerate_copies(host, f4, eo).occurrences; });

    const auto set = avoiding_set(100'000, EquationFamily::four_term(), AvoidingMethod::behrend);
    row("four-term verifier (behrend)", repeats,
        [&] { return static_cast<std::int64_t>(serial::verify_avoiding_set(set, EquationFamily::four_term()).avoids); },
        [&] { return static_cast<std::int64_t>(verify_avoiding_set(set, EquationFamily::four_term()).avoids); });
    std::printf("behrend four-term set at m = 1e5: %zu elements\n", set.size());
    return 0;
}
