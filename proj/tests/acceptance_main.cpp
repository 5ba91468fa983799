// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned inside the record builders in src/verify.cpp.

#include "hypdiff/verify.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <vector>

namespace {

bool report(int idx, const char* name, const std::vector<hypdiff::VerifyRecord>& recs,
            double wall_s) {
    bool ok = true;
    double worst = 0.0;
    const hypdiff::VerifyRecord* worst_rec = nullptr;
    for (const auto& r : recs) {
        ok = ok && r.pass;
        const double ratio = r.tol > 0.0 ? r.rel_err / r.tol : 1e300;
        if (worst_rec == nullptr || ratio > worst) {
            worst = ratio;
            worst_rec = &r;
        }
    }
    std::printf("[%s] %2d. %-52s %3zu checks  %6.1fs  worst %.2e vs tol %.0e (%s)\n",
                ok ? "PASS" : "FAIL", idx, name, recs.size(), wall_s,
                worst_rec ? worst_rec->rel_err : 0.0, worst_rec ? worst_rec->tol : 0.0,
                worst_rec ? worst_rec->anchor.c_str() : "-");
    if (!ok)
        for (const auto& r : recs)
            if (!r.pass)
                std::printf("       failed: %s [%s] rel_err %.3e tol %.0e\n",
                            r.anchor.c_str(), r.param.c_str(), r.rel_err, r.tol);
    return ok;
}

template <typename F>
bool run(int idx, const char* name, F&& builder) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto recs = builder();
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report(idx, name, recs, wall);
    } catch (const std::exception& e) {
        std::printf("[FAIL] %2d. %-52s threw: %s\n", idx, name, e.what());
        return false;
    }
}

} // namespace

int main() {
    using namespace hypdiff;
    bool ok = true;
    ok &= run(1, "algebra: su(1,1) commutators", algebra_records);
    ok &= run(2, "evolution: composition and continuation", evolution_records);
    ok &= run(3, "brachistochrone: RK4 vs closed form, invariants", trajectory_records);
    ok &= run(4, "metric: overlap tensor vs hyperbolic plane", metric_records);
    ok &= run(5, "eigen: ODE residuals for all solution families", eigen_records);
    ok &= run(6, "bridges: Laplace-transform identities", bridge_records);
    ok &= run(7, "whipple: degree-order exchange constancy", whipple_records);
    ok &= run(8, "completeness: index-transform round trips", completeness_records);
    ok &= run(9, "composition: Macdonald product formula", composition_records);
    ok &= run(10, "kernel: heat kernel, mass, semigroup, endpoint law",
              [] { return kernel_records(20260818ull, 100000); });
    return ok ? 0 : 1;
}
