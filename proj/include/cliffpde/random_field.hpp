#ifndef CLIFFPDE_RANDOM_FIELD_HPP
#define CLIFFPDE_RANDOM_FIELD_HPP

#include <cstdint>
#include <span>

#include "cliffpde/grid.hpp"
#include "cliffpde/multivector.hpp"

namespace cliffpde {

/// Zero-mean random real field: independent Gaussian Fourier coefficients on
/// all modes with 0 < |k|_inf <= bandwidth, Hermitian-symmetrized, restricted
/// to the listed blade components.  The coefficient of a mode depends only on
/// (seed, component, integer mode vector), never on N, so the same seed
/// yields samples of the same continuum field on every grid that resolves
/// the band.
MultivectorField generate_field(const GridSpec& spec, int m, std::uint64_t seed, double amplitude,
                                int bandwidth, std::span<const BladeMask> support);

/// Scalar (m = 0) convenience overload.
MultivectorField generate_scalar_field(const GridSpec& spec, std::uint64_t seed, double amplitude,
                                       int bandwidth);

}  // namespace cliffpde

#endif
