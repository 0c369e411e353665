#ifndef CLIFFPDE_HODGE_HPP
#define CLIFFPDE_HODGE_HPP

#include <vector>

#include "cliffpde/grid.hpp"
#include "cliffpde/multivector.hpp"

namespace cliffpde {

/// k-form on T^d whose coefficients are MultivectorFields, indexed by
/// increasing multi-indices in lexicographic order.
class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(const GridSpec& spec, int k, int m);

    static const std::vector<std::vector<int>>& index_sets(int d, int k);

    const GridSpec& spec() const { return spec_; }
    int degree() const { return k_; }
    int m() const { return m_; }
    int ncomp() const { return int(comp_.size()); }
    MultivectorField& comp(int i) { return comp_.at(std::size_t(i)); }
    const MultivectorField& comp(int i) const { return comp_.at(std::size_t(i)); }
    const std::vector<int>& indices(int i) const;
    int index_of(const std::vector<int>& idx) const;

    void require_compatible(const DifferentialForm& o) const;

private:
    GridSpec spec_;
    int k_ = 0;
    int m_ = 0;
    std::vector<MultivectorField> comp_;
};

DifferentialForm form_add(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm form_sub(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm form_scale(const DifferentialForm& a, double c);
double form_l2(const DifferentialForm& a);
DifferentialForm form_inv_laplacian(const DifferentialForm& a);
/// Componentwise torus mean (the harmonic part of the form).
std::vector<Multivector> form_mean(const DifferentialForm& a);
DifferentialForm form_sub_const(const DifferentialForm& a, const std::vector<Multivector>& c);

DifferentialForm exterior_d(const DifferentialForm& w);
DifferentialForm hodge_star(const DifferentialForm& w);
/// d* = (-1)^{d(k-1)+1} * d *  on k-forms;  -Lap = d d* + d* d.
DifferentialForm codifferential(const DifferentialForm& w);

/// Gradient of a 0-form as a 1-form.
DifferentialForm gradient_form(const MultivectorField& f);

struct HodgeSplit {
    MultivectorField gamma;            // 0-form potential
    DifferentialForm Y;                // coexact potential, dY = 0
    std::vector<Multivector> harmonic; // constant 1-form (componentwise mean)
    double reconstruction_residual = 0;
    double dY_residual = 0;
};

/// omega = d gamma + d* Y + harmonic with gamma = inv_laplacian(d* omega),
/// Y = inv_laplacian(d omega).
HodgeSplit linear_hodge_decompose(const DifferentialForm& omega);

struct NonlinearHodge {
    MultivectorField A;                // 0-form (Cl_4 valued)
    DifferentialForm B;                // 2-form, dB = 0
    std::vector<Multivector> H;        // constant 1-form (torus harmonic part)
    double residual = 0;               // ||F - dA - q d*B - H||
    std::vector<double> history;       // residual per iteration
    std::vector<double> ratios;        // successive residual ratios
    double dq_l4 = 0;                  // ||grad q||_{L^4} of the gauge used
    int iterations = 0;
};

/// Fixed-point iteration for F = dA + q d*B + H on the torus, run in
/// defect-correction form on the de-aliased band |k|_inf <= (N-1)/3:
/// each step splits the residual r = dg + d* Y + mean and applies
///   A += inv_laplacian(d* r),  B += inv_laplacian(d(q^{-1} r)),
///   H += mean(r).
/// Throws on non-contraction (ratio >= 1 for 3 consecutive iterations).
NonlinearHodge nonlinear_hodge_decompose(const DifferentialForm& F, const MultivectorField& q,
                                         const MultivectorField& qinv, int max_iter = 50,
                                         double tol = 1e-8);

struct BComponents {
    std::vector<MultivectorField> b;   // b_0..b_3 from d*B
    double div_residual = 0;           // ||sum_a da b_a||
    double bi_residual = 0;            // worst consistency residual of f = ...
    double dirac_residual = 0;         // residual of the first-order identity for b_0
};

/// Extracts d*B = sum b_a dx_a and checks the component identities for F
/// built from (q, f) as F = (qf, -q e1 f, -q e2 f, -q e3 f).
BComponents recover_b_components(const MultivectorField& f, const MultivectorField& q,
                                 const MultivectorField& qinv, const NonlinearHodge& nh);

/// ||grad q||_{L^p} with pointwise magnitude over all partial derivatives
/// and blade components.
double gradient_lp_norm(const MultivectorField& q, double p);

}  // namespace cliffpde

#endif
