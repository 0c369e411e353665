#ifndef CLIFFPDE_NORMS_HPP
#define CLIFFPDE_NORMS_HPP

#include <limits>

#include "cliffpde/grid.hpp"

namespace cliffpde {

inline constexpr double kInfQ = std::numeric_limits<double>::infinity();

/// L^p norm with pointwise Euclidean magnitude over blade coefficients:
/// ( sum_x |f(x)|^p cellvol )^{1/p}.
double lp_norm(const MultivectorField& f, double p);

/// Discrete Lorentz norm via decreasing rearrangement.  With f*_1 >= f*_2 >= ...
/// and t_k = k * cellvol:
///   q = inf : max_k t_k^{1/p} f*_k
///   finite q: ( sum_k (t_k^{1/p} f*_k)^q * cellvol / t_k )^{1/q},
/// the Riemann sum of the integral (t^{1/p} f*(t))^q dt/t.  L^{p,p} equals
/// lp_norm exactly.
double lorentz_norm(const MultivectorField& f, double p, double q);

}  // namespace cliffpde

#endif
