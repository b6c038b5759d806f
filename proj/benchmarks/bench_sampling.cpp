// Compares the serial reference kernels against the OpenMP ones on the
// bundled example surface. The two paths must agree bitwise; the timings
// show what the parallel loops buy.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rfis/config.hpp"
#include "rfis/empirical.hpp"

using namespace rfis;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int max_level = argc > 1 ? std::stoi(argv[1]) : 9;
    const Scenario sc = build_scenario(parse_config(paper_example_json(true)));

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-8s %-12s %-12s %-10s %-8s\n", "level", "serial_s", "parallel_s", "speedup",
                "match");

    SampledSurface serial = sample_surface_serial(sc.rfis, 0);
    SampledSurface parallel = sample_surface(sc.rfis, 0);
    for (int level = 1; level <= max_level; ++level) {
        const auto t0 = std::chrono::steady_clock::now();
        serial = refine_surface_serial(sc.rfis, serial);
        const auto t1 = std::chrono::steady_clock::now();
        parallel = refine_surface(sc.rfis, parallel);
        const auto t2 = std::chrono::steady_clock::now();
        const bool match = serial.values == parallel.values;
        const double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-8d %-12.4f %-12.4f %-10.2f %-8s\n", level, ts, tp, ts / tp,
                    match ? "bitwise" : "DIFFER");
        if (!match) return 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const OscillationProfile profile = compute_oscillation_profile(
        sc.rfis, sc.partition, 1, std::max(1, max_level - 1));
    const auto t1 = std::chrono::steady_clock::now();
    std::printf("oscillation profile levels 1..%d: %.4f s (O at top level = %g)\n",
                std::max(1, max_level - 1), seconds(t0, t1), profile.levels.back().total_osc);
    return 0;
}
