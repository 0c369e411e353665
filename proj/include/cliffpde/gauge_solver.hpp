#ifndef CLIFFPDE_GAUGE_SOLVER_HPP
#define CLIFFPDE_GAUGE_SOLVER_HPP

#include <array>
#include <vector>

#include "cliffpde/dirac.hpp"
#include "cliffpde/grid.hpp"

namespace cliffpde {

/// Potential tuple (beta^0, ..., beta^{d-1}) of scalar fields, standing for
/// the multivector beta = beta^0 e0 - sum_{i>=1} beta^i e_i.  The spatial
/// part must be curl-free and every component zero-mean.
struct GaugePotential {
    int d = 4;
    std::vector<MultivectorField> comp;  // d scalar (m = 0) fields

    const GridSpec& spec() const { return comp.at(0).spec(); }
    /// beta as a multivector field in Cl_m (m >= d-1).
    MultivectorField as_multivector(int m) const;
    /// beta * e_d as a multivector field in Cl_m (m >= d).
    MultivectorField times_ed(int m) const;
    double l2() const;
};

/// v = v^0 e_d + sum_i v^i e_i e_d solving dR v = beta e_d.
struct GaugeFieldSolution {
    int d = 4;
    std::vector<MultivectorField> v;  // d scalar fields
    double system_residual = 0;       // ||dR v - beta e_d||_L2
    double curl_residual = 0;         // trivector part of dR v

    /// v as an E4-valued Cl_4 field (d=4) or V3-valued Cl_3 field (d=3).
    MultivectorField as_multivector() const;
};

/// Max over spatial pairs of ||di beta^j - dj beta^i||_L2.
double check_curl_free(const GaugePotential& beta);

/// Explicit potential solver via the componentwise Poisson equations
///   Lap v^0 = d0 beta^0 - sum_i di beta^i,
///   Lap v^i = -d0 beta^i - di beta^0.
GaugeFieldSolution solve_dv_beta(const GaugePotential& beta);

/// Special case beta = dL alpha: phi = 2 inv_laplacian(d0 alpha),
/// v^0 = -alpha - d0 phi, v' = grad_x' phi.
std::pair<MultivectorField, GaugeFieldSolution> solve_lorenz_gauge(const MultivectorField& alpha);

/// L2 residuals of (curl A - B, -dt A - grad phi - E, dt phi + div A - beta0),
/// with axis 0 as time and axes 1..3 as space.
std::array<double, 3> maxwell_residual(const std::array<MultivectorField, 3>& A,
                                       const MultivectorField& phi,
                                       const std::array<MultivectorField, 3>& B,
                                       const std::array<MultivectorField, 3>& E,
                                       const MultivectorField& beta0);

/// dL f - (beta e_d) f.
MultivectorField equation_residual(const GaugePotential& beta, const MultivectorField& f);

/// Discrepancy between the residual of the single equation for
/// g = f1 + f2 e4 and the pair of coupled residuals, which vanishes
/// identically by the e4-conjugation identity.
double coupled_reduction_check(const MultivectorField& f1, const MultivectorField& f2,
                               const GaugePotential& beta);

/// Residual of the Leibniz identity
///   d0(q f) - sum_i di(q e_i f) = q dL f + q D(q) f.
double gauged_identity_residual(const MultivectorField& q, const MultivectorField& qinv,
                                const MultivectorField& f);

/// Linearization of the gauge operator at the identity.
/// d=4: (Pi6[Lap u], (Pi4+P)[dR u]); d=3: the quaternion-component formula
/// equal to the 3-active-axis Riemann-Fueter operator.
std::pair<MultivectorField, MultivectorField> linearized_gauge(const MultivectorField& u, int d);

/// Inverse of linearized_gauge on zero-mean data.
MultivectorField invert_linearized(const MultivectorField& omega, const MultivectorField& g, int d);

/// Max L2 norm of the trivector components of dR v.
double trivector_vanishing_check(const GaugeFieldSolution& sol);

}  // namespace cliffpde

#endif
