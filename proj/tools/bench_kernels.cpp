// Times the OpenMP quadrature kernels against the serial reference on the
// workloads that dominate sweeps: the decomposition integrals and the
// estimate's two sides over the standard field family.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "carlab/ledger.hpp"

using namespace carlab;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Workload {
    const char* name;
    double (*run)(bool parallel);
};

double run_rhs(bool parallel) {
    const auto family = default_test_family();
    const ConvexifyParams p(0.5);
    const CylinderGrid grid(-9.6, -5.05, 38, 32);
    double acc = 0.0;
    for (const auto& [id, f] : family) {
        const auto& field = *f;
        const NodeFn fn = [&](double T, double th) {
            return std::norm(apply_Qtilde_jet(field.jet(T, th, 2), T, p, 0.05).at(0, 0));
        };
        acc += parallel ? integrate(grid, fn) : integrate_ref(grid, fn);
    }
    return acc;
}

double run_commutator(bool parallel) {
    const auto family = default_test_family();
    const ConvexifyParams p(0.5);
    const CylinderGrid grid(-9.6, -5.05, 19, 32);
    double acc = 0.0;
    for (const auto& [id, f] : family) {
        const auto& field = *f;
        const NodeFn fn = [&](double T, double th) {
            const CylJet j = field.jet(T, th, 4);
            const Complex ab = apply_A_jet(apply_B_jet(j, T, p, 0.05), T, p, 0.05).at(0, 0);
            const Complex ba = apply_B_jet(apply_A_jet(j, T, p, 0.05), T, p, 0.05).at(0, 0);
            return ((ab - ba) * std::conj(j.at(0, 0))).real();
        };
        acc += parallel ? integrate(grid, fn) : integrate_ref(grid, fn);
    }
    return acc;
}

}  // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);
    std::printf("%-24s %12s %12s %9s %14s\n", "workload", "serial(ms)", "parallel(ms)",
                "speedup", "|difference|");

    const Workload workloads[] = {{"qtilde_norm_family", run_rhs},
                                  {"commutator_family", run_commutator}};
    for (const auto& w : workloads) {
        const double t0 = now_ms();
        const double serial = w.run(false);
        const double t1 = now_ms();
        const double parallel = w.run(true);
        const double t2 = now_ms();
        std::printf("%-24s %12.2f %12.2f %9.2f %14.3e\n", w.name, t1 - t0, t2 - t1,
                    (t1 - t0) / std::max(1e-9, t2 - t1), std::abs(serial - parallel));
    }
    return 0;
}
