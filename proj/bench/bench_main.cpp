// Serial vs OpenMP timings for the parallel kernels.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qclf/construct.hpp"
#include "qclf/girth.hpp"
#include "qclf/quantum.hpp"
#include "qclf/sim.hpp"

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif

    {
        auto m = qclf::expand(qclf::build_classical(10, 281));
        double s = time_of([&] { qclf::girth_bfs_oracle_serial(m); });
        double p = time_of([&] { qclf::girth_bfs_oracle(m); });
        report("bfs girth oracle (10,281)", s, p);
    }
    {
        double s = time_of([&] { qclf::min_p_search_serial(12, 2, 2, 1200); });
        double p = time_of([&] { qclf::min_p_search(12, 2, 2, 1200); });
        report("min-P scan L=12 to 1200", s, p);
    }
    {
        auto [hx, hz] = qclf::build_sc_pair(6, 4160, 2, 3);
        auto ex = qclf::expand(hx);
        auto ez = qclf::expand(hz);
        double s = time_of([&] { qclf::check_orthogonal_serial(ex, ez); });
        double p = time_of([&] { qclf::check_orthogonal(ex, ez); });
        report("orthogonality SC(6,4160,3)", s, p);
    }
    {
        qclf::FerParams params;
        params.L = 8;
        params.P = 138;
        params.p_grid = {0.01};
        params.trials = 2000;
        params.seed = 42;
        params.jobs = 1;
        double s = time_of([&] { qclf::fer_experiment(params); });
        params.jobs = 0;  // all available threads
        double p = time_of([&] { qclf::fer_experiment(params); });
        report("fer 2000 trials (8,138)", s, p);
    }
    return 0;
}
