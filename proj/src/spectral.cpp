#include "cliffpde/spectral.hpp"

#include <fftw3.h>
#include <omp.h>

#include <cmath>
#include <mutex>

#include "cliffpde/kernels.hpp"

namespace cliffpde {

namespace {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is.
std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bck = nullptr;
};

// One cached in-place c2c plan pair per (d, N).  Plans are created with
// FFTW_ESTIMATE so results do not depend on runtime measurement.
PlanPair& plans_for(const GridSpec& spec) {
    static std::vector<std::pair<GridSpec, PlanPair>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    for (auto& [s, p] : cache)
        if (s == spec) return p;
    std::vector<int> dims(std::size_t(spec.d), spec.N);
    std::vector<std::complex<double>> buf(spec.npoints());
    auto* b = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair p;
    p.fwd = fftw_plan_dft(spec.d, dims.data(), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bck = fftw_plan_dft(spec.d, dims.data(), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    cache.emplace_back(spec, p);
    return cache.back().second;
}

bool all_zero(const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0.0) return false;
    return true;
}

bool all_zero(const std::complex<double>* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0.0) return false;
    return true;
}

}  // namespace

SpectralField to_spectral(const MultivectorField& f) {
    const GridSpec& spec = f.spec();
    SpectralField F(spec, f.m());
    PlanPair& p = plans_for(spec);
    const std::size_t n = spec.npoints();
    const double scale = 1.0 / double(n);
    for (int c = 0; c < f.ncomp(); ++c) {
        const double* in = f.comp(c);
        if (all_zero(in, n)) continue;  // transform of the zero grid is zero
        std::complex<double>* out = F.comp(c);
        for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
        auto* b = reinterpret_cast<fftw_complex*>(out);
        fftw_execute_dft(p.fwd, b, b);
        for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
    }
    return F;
}

MultivectorField to_physical(const SpectralField& F) {
    const GridSpec& spec = F.spec();
    MultivectorField f(spec, F.m());
    PlanPair& p = plans_for(spec);
    const std::size_t n = spec.npoints();
    std::vector<std::complex<double>> buf(n);
    for (int c = 0; c < F.ncomp(); ++c) {
        const std::complex<double>* in = F.comp(c);
        if (all_zero(in, n)) continue;
        for (std::size_t i = 0; i < n; ++i) buf[i] = in[i];
        auto* b = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_execute_dft(p.bck, b, b);
        double* out = f.comp(c);
        for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
    }
    return f;
}

namespace {

// Applies a per-mode complex multiplier to every component.
template <class Mult>
MultivectorField apply_multiplier(const MultivectorField& f, Mult mult) {
    SpectralField F = to_spectral(f);
    const GridSpec& spec = f.spec();
    const std::size_t n = spec.npoints();
    std::vector<std::complex<double>> factors(n);
    std::vector<int> x(std::size_t(spec.d));
    std::vector<int> k(std::size_t(spec.d));
    for (std::size_t i = 0; i < n; ++i) {
        spec.coords(i, x.data());
        for (int a = 0; a < spec.d; ++a) k[std::size_t(a)] = spec.wavenumber(x[std::size_t(a)]);
        factors[i] = mult(k.data());
    }
    for (int c = 0; c < F.ncomp(); ++c) {
        std::complex<double>* d = F.comp(c);
        for (std::size_t i = 0; i < n; ++i) d[i] *= factors[i];
    }
    return to_physical(F);
}

}  // namespace

MultivectorField partial_derivative(const MultivectorField& f, int axis) {
    if (axis < 0 || axis >= f.spec().d) throw std::invalid_argument("derivative axis out of range");
    return apply_multiplier(f, [axis](const int* k) {
        return std::complex<double>(0.0, double(k[axis]));
    });
}

MultivectorField laplacian(const MultivectorField& f) {
    const int d = f.spec().d;
    return apply_multiplier(f, [d](const int* k) {
        double k2 = 0;
        for (int a = 0; a < d; ++a) k2 += double(k[a]) * double(k[a]);
        return std::complex<double>(-k2, 0.0);
    });
}

double component_mean(const MultivectorField& f, int c) {
    const double* d = f.comp(c);
    const std::size_t n = f.npoints();
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += d[i];
    return s / double(n);
}

MultivectorField inv_laplacian(const MultivectorField& f, double mean_tol) {
    for (int c = 0; c < f.ncomp(); ++c) {
        const double mean = component_mean(f, c);
        if (std::abs(mean) > mean_tol)
            throw std::domain_error("inv_laplacian: nonzero mean on blade component " +
                                    std::to_string(c) + " (mean = " + std::to_string(mean) + ")");
    }
    const int d = f.spec().d;
    return apply_multiplier(f, [d](const int* k) {
        double k2 = 0;
        for (int a = 0; a < d; ++a) k2 += double(k[a]) * double(k[a]);
        return k2 == 0.0 ? std::complex<double>(0.0) : std::complex<double>(1.0 / k2, 0.0);
    });
}

MultivectorField band_project(const MultivectorField& f, int K) {
    if (K < 0) throw std::invalid_argument("band_project: K must be non-negative");
    const int d = f.spec().d;
    return apply_multiplier(f, [d, K](const int* k) {
        for (int a = 0; a < d; ++a)
            if (k[a] > K || k[a] < -K) return std::complex<double>(0.0);
        return std::complex<double>(1.0);
    });
}

MultivectorField field_add(const MultivectorField& a, const MultivectorField& b) {
    a.require_compatible(b);
    MultivectorField r = a;
    kernels::axpy(1.0, b.raw().data(), r.raw().data(), r.raw().size());
    return r;
}

MultivectorField field_sub(const MultivectorField& a, const MultivectorField& b) {
    a.require_compatible(b);
    MultivectorField r = a;
    kernels::axpy(-1.0, b.raw().data(), r.raw().data(), r.raw().size());
    return r;
}

MultivectorField field_scale(const MultivectorField& a, double c) {
    MultivectorField r = a;
    kernels::scale(c, r.raw().data(), r.raw().size());
    return r;
}

}  // namespace cliffpde
