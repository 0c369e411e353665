#ifndef CLIFFPDE_KERNELS_HPP
#define CLIFFPDE_KERNELS_HPP

#include <cstddef>

#include "cliffpde/grid.hpp"

namespace cliffpde::kernels {

// Hot loops over grid data.  The default entry points use OpenMP; the
// serial namespace keeps plain reference implementations that the tests and
// the benchmark compare against.  Reductions are chunked identically in both
// versions so results are bitwise independent of the thread count.

namespace serial {
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
/// Pointwise Clifford product out(x) = a(x) * b(x).
void pointwise_mul(const MultivectorField& a, const MultivectorField& b, MultivectorField& out);
}  // namespace serial

void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
void pointwise_mul(const MultivectorField& a, const MultivectorField& b, MultivectorField& out);

/// Sign table for Cl_m blade products: entry [i * 2^m + j] is the sign of
/// e_I e_J as a multiple of e_{I xor J}.
const signed char* sign_table(int m);

}  // namespace cliffpde::kernels

namespace cliffpde {
/// Pointwise Clifford product of two fields (parallel kernel).
MultivectorField field_mul(const MultivectorField& a, const MultivectorField& b);
/// L2 norm over the grid: sqrt(sum |f(x)|^2 cellvol).
double field_l2(const MultivectorField& f);
}  // namespace cliffpde

#endif
