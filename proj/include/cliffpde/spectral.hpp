#ifndef CLIFFPDE_SPECTRAL_HPP
#define CLIFFPDE_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "cliffpde/grid.hpp"

namespace cliffpde {

/// Fourier coefficients of a MultivectorField, component-major, same
/// row-major mode layout as the physical grid.  Coefficients are normalized
/// so that to_physical(to_spectral(f)) == f.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const GridSpec& spec, int m)
        : spec_(spec), m_(m), ncomp_(1 << m), data_(std::size_t(ncomp_) * spec.npoints()) {}

    const GridSpec& spec() const { return spec_; }
    int m() const { return m_; }
    int ncomp() const { return ncomp_; }
    std::size_t npoints() const { return spec_.npoints(); }

    std::complex<double>* comp(int c) { return data_.data() + std::size_t(c) * npoints(); }
    const std::complex<double>* comp(int c) const {
        return data_.data() + std::size_t(c) * npoints();
    }
    std::complex<double>& at(int c, std::size_t pt) {
        return data_[std::size_t(c) * npoints() + pt];
    }
    const std::complex<double>& at(int c, std::size_t pt) const {
        return data_[std::size_t(c) * npoints() + pt];
    }

private:
    GridSpec spec_;
    int m_ = 0;
    int ncomp_ = 1;
    std::vector<std::complex<double>> data_;
};

SpectralField to_spectral(const MultivectorField& f);
MultivectorField to_physical(const SpectralField& F);

/// Exact Fourier-multiplier derivative along one axis.
MultivectorField partial_derivative(const MultivectorField& f, int axis);
MultivectorField laplacian(const MultivectorField& f);

/// Inverse of -Laplacian on zero-mean fields: multiplier 1/|xi|^2, zero at
/// xi = 0.  Throws if any blade component has |mean| > mean_tol.
MultivectorField inv_laplacian(const MultivectorField& f, double mean_tol = 1e-10);

double component_mean(const MultivectorField& f, int c);

/// Sharp Fourier truncation: zeroes every mode with |k|_inf > K.  On the
/// band |k|_inf <= K < N/2 all multiplier operators compose exactly
/// (no Nyquist asymmetry), so d d* + d* d = -Lap holds identically there.
MultivectorField band_project(const MultivectorField& f, int K);

// Field arithmetic (pointwise, componentwise).
MultivectorField field_add(const MultivectorField& a, const MultivectorField& b);
MultivectorField field_sub(const MultivectorField& a, const MultivectorField& b);
MultivectorField field_scale(const MultivectorField& a, double c);

}  // namespace cliffpde

#endif
