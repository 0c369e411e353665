#include "cliffpde/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "cliffpde/multivector.hpp"

namespace cliffpde::kernels {

namespace {
constexpr std::size_t kChunk = 4096;
}

const signed char* sign_table(int m) {
    static std::map<int, std::vector<signed char>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        const std::size_t n = std::size_t(1) << m;
        std::vector<signed char> t(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t[i * n + j] = (signed char)blade_product_sign(BladeMask(i), BladeMask(j));
        it = cache.emplace(m, std::move(t)).first;
    }
    return it->second.data();
}

namespace serial {

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sumsq(const double* x, std::size_t n) {
    // Chunked accumulation, same splitting as the parallel version.
    double total = 0;
    for (std::size_t start = 0; start < n; start += kChunk) {
        const std::size_t end = std::min(n, start + kChunk);
        double part = 0;
        for (std::size_t i = start; i < end; ++i) part += x[i] * x[i];
        total += part;
    }
    return total;
}

void pointwise_mul(const MultivectorField& a, const MultivectorField& b, MultivectorField& out) {
    a.require_compatible(b);
    a.require_compatible(out);
    const int nc = a.ncomp();
    const std::size_t np = a.npoints();
    const signed char* signs = sign_table(a.m());
    std::fill(out.raw().begin(), out.raw().end(), 0.0);
    for (int ca = 0; ca < nc; ++ca) {
        const double* pa = a.comp(ca);
        for (int cb = 0; cb < nc; ++cb) {
            const double s = signs[std::size_t(ca) * nc + cb];
            const double* pb = b.comp(cb);
            double* po = out.comp(ca ^ cb);
            for (std::size_t i = 0; i < np; ++i) po[i] += s * pa[i] * pb[i];
        }
    }
}

}  // namespace serial

void axpy(double a, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) x[i] *= a;
}

double sumsq(const double* x, std::size_t n) {
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partials(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nchunks); ++c) {
        const std::size_t start = std::size_t(c) * kChunk;
        const std::size_t end = std::min(n, start + kChunk);
        double part = 0;
        for (std::size_t i = start; i < end; ++i) part += x[i] * x[i];
        partials[std::size_t(c)] = part;
    }
    double total = 0;
    for (double p : partials) total += p;
    return total;
}

void pointwise_mul(const MultivectorField& a, const MultivectorField& b, MultivectorField& out) {
    a.require_compatible(b);
    a.require_compatible(out);
    const int nc = a.ncomp();
    const std::size_t np = a.npoints();
    const signed char* signs = sign_table(a.m());
    std::fill(out.raw().begin(), out.raw().end(), 0.0);
    // Blocked over points so one block of every component stays cache-resident
    // while the blade table runs; the (ca, cb) nesting matches the serial
    // reference, so per-element accumulation order (and hence the result) is
    // identical.
    constexpr std::size_t kBlock = 64;
    const std::size_t nblocks = (np + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < std::ptrdiff_t(nblocks); ++blk) {
        const std::size_t start = std::size_t(blk) * kBlock;
        const std::size_t len = std::min(np - start, kBlock);
        for (int ca = 0; ca < nc; ++ca) {
            const double* pa = a.comp(ca) + start;
            bool zero = true;
            for (std::size_t i = 0; i < len; ++i)
                if (pa[i] != 0.0) {
                    zero = false;
                    break;
                }
            if (zero) continue;
            for (int cb = 0; cb < nc; ++cb) {
                const double s = signs[std::size_t(ca) * nc + cb];
                const double* pb = b.comp(cb) + start;
                double* po = out.comp(ca ^ cb) + start;
                for (std::size_t i = 0; i < len; ++i) po[i] += s * pa[i] * pb[i];
            }
        }
    }
}

}  // namespace cliffpde::kernels

namespace cliffpde {

MultivectorField field_mul(const MultivectorField& a, const MultivectorField& b) {
    MultivectorField out(a.spec(), a.m());
    kernels::pointwise_mul(a, b, out);
    return out;
}

double field_l2(const MultivectorField& f) {
    const double s = kernels::sumsq(f.raw().data(), f.raw().size());
    return std::sqrt(s * f.spec().cell_volume());
}

}  // namespace cliffpde
