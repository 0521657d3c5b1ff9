// Compares the OpenMP-parallel oracle kernels against their serial reference
// implementations: full group counting and exhaustive key recovery at p = 59.
// Prints one line per kernel with both timings and the speedup.

#include "oracle_testkit.hpp"

#include <chrono>
#include <cstdio>

#ifdef G2UDS_HAVE_OPENMP
#include <omp.h>
#endif

using namespace g2uds;
using namespace g2uds::oracle;

namespace {

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
#ifdef G2UDS_HAVE_OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns are serial\n");
#endif

    FieldTower T(make_params(2, 2, 3, 1, 5, 1, 1, -1));
    PublicParams pp = setup(T, 7);

    std::uint64_t n_serial = 0, n_parallel = 0;
    double es = time_ms([&] { n_serial = enumerate_group_serial(pp.surface); });
    double ep = time_ms([&] { n_parallel = enumerate_group(pp.surface); });
    if (n_serial != n_parallel) {
        std::fprintf(stderr, "enumerate mismatch: %llu vs %llu\n",
                     static_cast<unsigned long long>(n_serial),
                     static_cast<unsigned long long>(n_parallel));
        return 1;
    }
    report("enumerate_group", es, ep);

    double bs = 0, bp = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        ProblemInstance inst = gen_instance("CSSI", pp, seed);
        SubgroupWitness ws, wp;
        bs += time_ms([&] { ws = cssi_bruteforce_serial(inst); });
        bp += time_ms([&] { wp = cssi_bruteforce(inst); });
        if (!(ws == wp) || !(ws == inst.witness_subgroup)) {
            std::fprintf(stderr, "bruteforce mismatch on seed %llu\n",
                         static_cast<unsigned long long>(seed));
            return 1;
        }
    }
    report("cssi_bruteforce (x3)", bs, bp);
    return 0;
}
