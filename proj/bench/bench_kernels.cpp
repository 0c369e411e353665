// Benchmark of the OpenMP kernels against their serial reference
// implementations.  Also asserts that both versions produce bitwise
// identical results (the reductions are chunked the same way on purpose).

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#include "cliffpde/grid.hpp"
#include "cliffpde/kernels.hpp"

using namespace cliffpde;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial, double parallel, bool identical) {
    std::cout << std::left << std::setw(16) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(10) << serial * 1e3 << " ms" << std::setw(10)
              << parallel * 1e3 << " ms" << std::setw(9) << std::setprecision(2)
              << serial / parallel << "x   " << (identical ? "bitwise equal" : "MISMATCH")
              << "\n";
}

}  // namespace

int main() {
    const GridSpec spec(4, 16);
    MultivectorField a(spec, 4), b(spec, 4);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (double& v : a.raw()) v = uni(rng);
    for (double& v : b.raw()) v = uni(rng);
    const std::size_t n = a.raw().size();
    const int reps = 5;
    bool all_ok = true;

    std::cout << "kernel              serial      parallel  speedup\n";

    {
        std::vector<double> y1(b.raw()), y2(b.raw());
        const double ts =
            time_best_of(reps, [&] { kernels::serial::axpy(0.37, a.raw().data(), y2.data(), n); });
        const double tp =
            time_best_of(reps, [&] { kernels::axpy(0.37, a.raw().data(), y1.data(), n); });
        const bool ok = y1 == y2;
        all_ok = all_ok && ok;
        row("axpy", ts, tp, ok);
    }
    {
        double s1 = 0, s2 = 0;
        const double ts =
            time_best_of(reps, [&] { s2 = kernels::serial::sumsq(a.raw().data(), n); });
        const double tp = time_best_of(reps, [&] { s1 = kernels::sumsq(a.raw().data(), n); });
        const bool ok = s1 == s2;
        all_ok = all_ok && ok;
        row("sumsq", ts, tp, ok);
    }
    {
        MultivectorField o1(spec, 4), o2(spec, 4);
        const double ts = time_best_of(reps, [&] { kernels::serial::pointwise_mul(a, b, o2); });
        const double tp = time_best_of(reps, [&] { kernels::pointwise_mul(a, b, o1); });
        const bool ok = o1.raw() == o2.raw();
        all_ok = all_ok && ok;
        row("pointwise_mul", ts, tp, ok);
    }

    if (!all_ok) {
        std::cout << "parallel kernels do not match the serial reference\n";
        return 1;
    }
    return 0;
}
