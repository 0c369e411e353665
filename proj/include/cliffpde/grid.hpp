#ifndef CLIFFPDE_GRID_HPP
#define CLIFFPDE_GRID_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cliffpde/multivector.hpp"

namespace cliffpde {

/// Uniform periodic grid on [0, 2pi)^d.
struct GridSpec {
    int d = 4;
    int N = 16;

    GridSpec() = default;
    GridSpec(int d_, int N_) : d(d_), N(N_) {
        if (d != 3 && d != 4) throw std::invalid_argument("grid dimension must be 3 or 4");
        if (N < 8 || N % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8");
    }

    std::size_t npoints() const {
        std::size_t n = 1;
        for (int a = 0; a < d; ++a) n *= std::size_t(N);
        return n;
    }
    double h() const { return 2.0 * std::numbers::pi / N; }
    double cell_volume() const { return std::pow(h(), d); }
    double volume() const { return std::pow(2.0 * std::numbers::pi, d); }

    // Row-major point index, axis 0 slowest (matches FFTW's layout).
    std::size_t index(const int* x) const {
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) idx = idx * std::size_t(N) + std::size_t(x[a]);
        return idx;
    }
    void coords(std::size_t idx, int* x) const {
        for (int a = d - 1; a >= 0; --a) {
            x[a] = int(idx % std::size_t(N));
            idx /= std::size_t(N);
        }
    }
    // Signed wavenumber for FFT bin j on one axis.
    int wavenumber(int j) const { return j < N / 2 ? j : j - N; }

    bool operator==(const GridSpec& o) const { return d == o.d && N == o.N; }
};

/// Multivector-valued function sampled on a GridSpec, stored component-major
/// (one contiguous scalar grid per blade coefficient).
class MultivectorField {
public:
    MultivectorField() = default;
    MultivectorField(const GridSpec& spec, int m)
        : spec_(spec), m_(m), ncomp_(1 << m), data_(std::size_t(ncomp_) * spec.npoints(), 0.0) {
        if (m < 0 || m > 8) throw std::invalid_argument("algebra dimension out of range");
    }

    const GridSpec& spec() const { return spec_; }
    int m() const { return m_; }
    int ncomp() const { return ncomp_; }
    std::size_t npoints() const { return spec_.npoints(); }

    double* comp(int c) { return data_.data() + std::size_t(c) * npoints(); }
    const double* comp(int c) const { return data_.data() + std::size_t(c) * npoints(); }
    double& at(int c, std::size_t pt) { return data_[std::size_t(c) * npoints() + pt]; }
    double at(int c, std::size_t pt) const { return data_[std::size_t(c) * npoints() + pt]; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    Multivector value_at(std::size_t pt) const {
        Multivector v(m_);
        for (int c = 0; c < ncomp_; ++c) v[BladeMask(c)] = at(c, pt);
        return v;
    }
    void set_value(std::size_t pt, const Multivector& v) {
        for (int c = 0; c < ncomp_; ++c) at(c, pt) = v[BladeMask(c)];
    }

    void require_compatible(const MultivectorField& o) const {
        if (!(spec_ == o.spec_) || m_ != o.m_)
            throw std::invalid_argument("field grid/algebra mismatch");
    }

private:
    GridSpec spec_;
    int m_ = 0;
    int ncomp_ = 1;
    std::vector<double> data_;
};

}  // namespace cliffpde

#endif
