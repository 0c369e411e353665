#ifndef CLIFFPDE_DIRAC_HPP
#define CLIFFPDE_DIRAC_HPP

#include "cliffpde/grid.hpp"
#include "cliffpde/subspaces.hpp"

namespace cliffpde {

enum class DiracSide { left, right };

/// First-order operator d0 f -/+ sum_i e_i di f (left) or -/+ sum_i (di f) e_i
/// (right), with i ranging over the d-1 spatial generators.  conjugated flips
/// the spatial signs, so conj(D) D = D conj(D) = Laplacian.
struct DiracMode {
    DiracSide side = DiracSide::left;
    bool conjugated = false;
    int d = 4;
};

MultivectorField dirac(const MultivectorField& f, const DiracMode& mode);

/// Pointwise product with a constant basis blade on the chosen side.
MultivectorField blade_multiply(const MultivectorField& f, BladeMask mask, DiracSide side);

/// Pointwise grade involution.
MultivectorField field_grade_involution(const MultivectorField& f);

/// Riemann-Fueter operator on quaternion-valued fields (m = 2 representation:
/// 1 -> e0, i -> e1, j -> e2, k -> e1e2):
///   D f = d0 f + d1 f * i + d2 f * j + d3 f * k    (active_axes = 4)
/// conjugated flips the spatial signs; active_axes = 3 drops the d3 term.
MultivectorField riemann_fueter(const MultivectorField& f, bool conjugated, int active_axes);

/// Conversion between E4-valued Cl_4 fields and quaternion (m = 2) fields
/// under e4 -> 1, e1e4 -> i, e2e4 -> j, e3e4 -> k.
MultivectorField e4_to_quaternion(const MultivectorField& v);
MultivectorField quaternion_to_e4(const MultivectorField& q);

/// (Pi4 + P) dR on E4-valued fields, computed by the componentwise formula
///   (d0 v0 - sum_j dj vj) e4
///   + sum_i (d0 vi + di v0 - d_{i+1} v^{i-1} + d_{i-1} v^{i+1}) e_i e4,
/// indices cyclic in {1,2,3}.  Equals riemann_fueter under the quaternion
/// identification.
MultivectorField projected_dirac(const MultivectorField& v);

/// Inverse of projected_dirac on zero-mean E4 fields, via the factorization
/// conj(D) D = Laplacian: v = inv_laplacian(-conj(D) g).
MultivectorField invert_projected_dirac(const MultivectorField& g);

/// q^{-1} dR q for a pointwise-invertible field (the inverse is supplied by
/// the caller, e.g. from exponential construction).
MultivectorField gauge_derivative(const MultivectorField& q, const MultivectorField& qinv);

/// Pointwise exp of a Lie-algebra-valued field; returns value and inverse.
std::pair<MultivectorField, MultivectorField> field_exp(const MultivectorField& u);

/// Pointwise multiplicative inverse of a field (solves q x = e0 at every
/// grid point and validates x q = e0).  Throws if q is singular somewhere.
MultivectorField field_inverse(const MultivectorField& q);

}  // namespace cliffpde

#endif
