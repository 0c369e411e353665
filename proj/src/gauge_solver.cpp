#include "cliffpde/gauge_solver.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "cliffpde/kernels.hpp"
#include "cliffpde/spectral.hpp"

namespace cliffpde {

namespace {

double scalar_l2(const MultivectorField& f) { return field_l2(f); }

void copy_comp(const MultivectorField& src, MultivectorField& dst, int c) {
    std::memcpy(dst.comp(c), src.comp(0), src.npoints() * sizeof(double));
}

}  // namespace

MultivectorField GaugePotential::as_multivector(int m) const {
    if (int(comp.size()) != d) throw std::invalid_argument("gauge potential has wrong arity");
    MultivectorField b(spec(), m);
    copy_comp(comp[0], b, 0);
    for (int i = 1; i < d; ++i) {
        const double* in = comp[std::size_t(i)].comp(0);
        double* out = b.comp(1 << (i - 1));
        for (std::size_t p = 0; p < b.npoints(); ++p) out[p] = -in[p];
    }
    return b;
}

MultivectorField GaugePotential::times_ed(int m) const {
    if (m < d) throw std::invalid_argument("algebra too small for beta e_d");
    return blade_multiply(as_multivector(m), BladeMask(1u << (d - 1)), DiracSide::right);
}

double GaugePotential::l2() const {
    double s = 0;
    for (const auto& c : comp) {
        const double n = scalar_l2(c);
        s += n * n;
    }
    return std::sqrt(s);
}

double check_curl_free(const GaugePotential& beta) {
    double worst = 0;
    for (int i = 1; i < beta.d; ++i)
        for (int j = i + 1; j < beta.d; ++j) {
            MultivectorField r = field_sub(partial_derivative(beta.comp[std::size_t(j)], i),
                                           partial_derivative(beta.comp[std::size_t(i)], j));
            worst = std::max(worst, scalar_l2(r));
        }
    return worst;
}

MultivectorField GaugeFieldSolution::as_multivector() const {
    const int m = d == 4 ? 4 : 3;
    MultivectorField V(v.at(0).spec(), m);
    const BladeMask ed = BladeMask(1u << (d - 1));
    copy_comp(v[0], V, ed);
    for (int i = 1; i < d; ++i) copy_comp(v[std::size_t(i)], V, BladeMask((1u << (i - 1)) | ed));
    return V;
}

namespace {

// Fills the residual fields of a candidate solution against dR v = beta e_d.
void fill_residuals(GaugeFieldSolution& sol, const GaugePotential& beta) {
    const int m = sol.d == 4 ? 4 : 3;
    MultivectorField V = sol.as_multivector();
    MultivectorField R = field_sub(dirac(V, {DiracSide::right, false, sol.d}), beta.times_ed(m));
    sol.system_residual = field_l2(R);
    sol.curl_residual = trivector_vanishing_check(sol);
}

}  // namespace

GaugeFieldSolution solve_dv_beta(const GaugePotential& beta) {
    if (int(beta.comp.size()) != beta.d)
        throw std::invalid_argument("gauge potential arity mismatch");
    const double bnorm = beta.l2();
    const double curl = check_curl_free(beta);
    if (curl > 1e-8 * (1.0 + bnorm))
        throw std::domain_error("solve_dv_beta: spatial part of beta is not curl-free");

    // Lap v0 = d0 b0 - sum_i di b^i;  Lap v^i = -d0 b^i - di b0.
    MultivectorField rhs0 = partial_derivative(beta.comp[0], 0);
    for (int i = 1; i < beta.d; ++i)
        rhs0 = field_sub(rhs0, partial_derivative(beta.comp[std::size_t(i)], i));

    GaugeFieldSolution sol;
    sol.d = beta.d;
    sol.v.push_back(inv_laplacian(field_scale(rhs0, -1.0)));
    for (int i = 1; i < beta.d; ++i) {
        MultivectorField rhs = field_add(partial_derivative(beta.comp[std::size_t(i)], 0),
                                         partial_derivative(beta.comp[0], i));
        sol.v.push_back(inv_laplacian(rhs));
    }
    fill_residuals(sol, beta);
    return sol;
}

std::pair<MultivectorField, GaugeFieldSolution> solve_lorenz_gauge(const MultivectorField& alpha) {
    if (alpha.spec().d != 4) throw std::invalid_argument("solve_lorenz_gauge requires d = 4");
    if (alpha.m() != 0) throw std::invalid_argument("solve_lorenz_gauge expects a scalar field");
    MultivectorField phi = field_scale(inv_laplacian(partial_derivative(alpha, 0)), 2.0);

    GaugeFieldSolution sol;
    sol.d = 4;
    sol.v.push_back(field_sub(field_scale(alpha, -1.0), partial_derivative(phi, 0)));
    for (int i = 1; i < 4; ++i) sol.v.push_back(partial_derivative(phi, i));

    GaugePotential beta{4, {}};
    for (int a = 0; a < 4; ++a) beta.comp.push_back(partial_derivative(alpha, a));
    fill_residuals(sol, beta);
    return {phi, sol};
}

std::array<double, 3> maxwell_residual(const std::array<MultivectorField, 3>& A,
                                       const MultivectorField& phi,
                                       const std::array<MultivectorField, 3>& B,
                                       const std::array<MultivectorField, 3>& E,
                                       const MultivectorField& beta0) {
    // Spatial axes are 1..3; entry i of a 3-vector belongs to axis i+1.
    auto d = [](const MultivectorField& f, int axis) { return partial_derivative(f, axis); };
    std::array<double, 3> res{};

    double s = 0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        MultivectorField curl_i = field_sub(d(A[std::size_t(k)], j + 1), d(A[std::size_t(j)], k + 1));
        const double n = field_l2(field_sub(curl_i, B[std::size_t(i)]));
        s += n * n;
    }
    res[0] = std::sqrt(s);

    s = 0;
    for (int i = 0; i < 3; ++i) {
        MultivectorField lhs = field_scale(field_add(d(A[std::size_t(i)], 0), d(phi, i + 1)), -1.0);
        const double n = field_l2(field_sub(lhs, E[std::size_t(i)]));
        s += n * n;
    }
    res[1] = std::sqrt(s);

    MultivectorField gauge = d(phi, 0);
    for (int i = 0; i < 3; ++i) gauge = field_add(gauge, d(A[std::size_t(i)], i + 1));
    res[2] = field_l2(field_sub(gauge, beta0));
    return res;
}

MultivectorField equation_residual(const GaugePotential& beta, const MultivectorField& f) {
    if (f.spec().d != beta.d) throw std::invalid_argument("equation_residual: dimension mismatch");
    MultivectorField lhs = dirac(f, {DiracSide::left, false, beta.d});
    return field_sub(lhs, field_mul(beta.times_ed(f.m()), f));
}

double coupled_reduction_check(const MultivectorField& f1, const MultivectorField& f2,
                               const GaugePotential& beta) {
    f1.require_compatible(f2);
    if (f1.m() != 3 || f1.spec().d != 4)
        throw std::invalid_argument("coupled_reduction_check expects Cl_3 fields on T^4");

    // Single equation for g = f1 + f2 e4: residual dL g + (beta e4) g.
    MultivectorField g(f1.spec(), 4);
    for (int c = 0; c < 8; ++c) {
        std::memcpy(g.comp(c), f1.comp(c), f1.npoints() * sizeof(double));
        std::memcpy(g.comp(c | 8), f2.comp(c), f2.npoints() * sizeof(double));
    }
    MultivectorField Rg = field_add(dirac(g, {DiracSide::left, false, 4}),
                                    field_mul(beta.times_ed(4), g));

    // Coupled residuals: R1 = dL f1 - beta hat(f2), R2 = dL f2 + beta hat(f1),
    // where beta is the Cl_3 multivector.  By e4 f = hat(f) e4 these embed as
    // Rg = R1 + R2 e4 identically.
    MultivectorField b3 = beta.as_multivector(3);
    MultivectorField R1 = field_sub(dirac(f1, {DiracSide::left, false, 4}),
                                    field_mul(b3, field_grade_involution(f2)));
    MultivectorField R2 = field_add(dirac(f2, {DiracSide::left, false, 4}),
                                    field_mul(b3, field_grade_involution(f1)));

    MultivectorField R(f1.spec(), 4);
    for (int c = 0; c < 8; ++c) {
        std::memcpy(R.comp(c), R1.comp(c), f1.npoints() * sizeof(double));
        std::memcpy(R.comp(c | 8), R2.comp(c), f2.npoints() * sizeof(double));
    }
    return field_l2(field_sub(Rg, R));
}

double gauged_identity_residual(const MultivectorField& q, const MultivectorField& qinv,
                                const MultivectorField& f) {
    q.require_compatible(f);
    const int d = q.spec().d;
    MultivectorField lhs = partial_derivative(field_mul(q, f), 0);
    for (int i = 1; i < d; ++i) {
        MultivectorField qeif = field_mul(q, blade_multiply(f, BladeMask(1u << (i - 1)), DiracSide::left));
        lhs = field_sub(lhs, partial_derivative(qeif, i));
    }
    MultivectorField Dq = gauge_derivative(q, qinv);
    MultivectorField rhs = field_add(field_mul(q, dirac(f, {DiracSide::left, false, d})),
                                     field_mul(q, field_mul(Dq, f)));
    return field_l2(field_sub(lhs, rhs));
}

namespace {

// Rejects fields with content outside the linearization domain (relative
// tolerance, so spectral roundoff in unused slots is ignored).
void require_zero_outside(const MultivectorField& u, std::span<const BladeMask> outside,
                          const char* what) {
    double bad = 0, total = 0;
    for (int c = 0; c < u.ncomp(); ++c) total += kernels::sumsq(u.comp(c), u.npoints());
    for (BladeMask c : outside) bad += kernels::sumsq(u.comp(c), u.npoints());
    if (bad > 1e-20 * (1.0 + total))
        throw std::domain_error(std::string(what) + ": field support outside allowed blades");
}

}  // namespace

std::pair<MultivectorField, MultivectorField> linearized_gauge(const MultivectorField& u, int d) {
    if (d == 4) {
        if (u.m() != 4 || u.spec().d != 4)
            throw std::invalid_argument("linearized_gauge d=4 expects a Cl_4 field on T^4");
        static constexpr std::array<BladeMask, 6> outside4{
            blade::e0, blade::e123, blade::e124, blade::e134, blade::e234, blade::e1234};
        require_zero_outside(u, outside4, "linearized_gauge");
        MultivectorField lap = laplacian(u);
        MultivectorField omega(u.spec(), 4);
        for (BladeMask c : subspace_blades(SubspaceTag::E6))
            std::memcpy(omega.comp(c), lap.comp(c), u.npoints() * sizeof(double));

        MultivectorField W = dirac(u, {DiracSide::right, false, 4});
        MultivectorField g(u.spec(), 4);
        const std::size_t bytes = u.npoints() * sizeof(double);
        std::memcpy(g.comp(blade::e4), W.comp(blade::e4), bytes);
        std::memcpy(g.comp(blade::e14), W.comp(blade::e14), bytes);
        std::memcpy(g.comp(blade::e24), W.comp(blade::e24), bytes);
        std::memcpy(g.comp(blade::e34), W.comp(blade::e34), bytes);
        // P folds the trivector part into the e_i e4 slots (see p_map).
        kernels::axpy(1.0, W.comp(blade::e234), g.comp(blade::e14), u.npoints());
        kernels::axpy(-1.0, W.comp(blade::e134), g.comp(blade::e24), u.npoints());
        kernels::axpy(1.0, W.comp(blade::e124), g.comp(blade::e34), u.npoints());
        return {omega, g};
    }
    if (d != 3) throw std::invalid_argument("linearized_gauge: d must be 3 or 4");
    if (u.m() != 3 || u.spec().d != 3)
        throw std::invalid_argument("linearized_gauge d=3 expects a Cl_3 field on T^3");
    static constexpr std::array<BladeMask, 2> outside3{blade::e0, blade::e123};
    require_zero_outside(u, outside3, "linearized_gauge");

    MultivectorField lap = laplacian(u);
    MultivectorField omega(u.spec(), 3);
    for (BladeMask c : subspace_blades(SubspaceTag::V2))
        std::memcpy(omega.comp(c), lap.comp(c), u.npoints() * sizeof(double));

    // Quaternion components (v0, v1, v2, v3) <-> (e3, e1e3, e2e3, e1e2);
    // the second slot is the 3-active-axis Riemann-Fueter image, landing in
    // span{e0, e1, e2, e1e2}.
    MultivectorField vq(u.spec(), 2);
    const std::size_t bytes = u.npoints() * sizeof(double);
    std::memcpy(vq.comp(0), u.comp(blade::e3), bytes);
    std::memcpy(vq.comp(1), u.comp(blade::e13), bytes);
    std::memcpy(vq.comp(2), u.comp(blade::e23), bytes);
    std::memcpy(vq.comp(3), u.comp(blade::e12), bytes);
    MultivectorField gq = riemann_fueter(vq, false, 3);
    MultivectorField g(u.spec(), 3);
    for (int c = 0; c < 4; ++c) std::memcpy(g.comp(c), gq.comp(c), bytes);
    return {omega, g};
}

MultivectorField invert_linearized(const MultivectorField& omega, const MultivectorField& g,
                                   int d) {
    omega.require_compatible(g);
    if (d == 4) {
        MultivectorField u = inv_laplacian(field_scale(omega, -1.0));
        MultivectorField v = invert_projected_dirac(g);
        return field_add(u, v);
    }
    if (d != 3) throw std::invalid_argument("invert_linearized: d must be 3 or 4");
    MultivectorField u = inv_laplacian(field_scale(omega, -1.0));
    MultivectorField gq(g.spec(), 2);
    const std::size_t bytes = g.npoints() * sizeof(double);
    for (int c = 0; c < 4; ++c) std::memcpy(gq.comp(c), g.comp(c), bytes);
    MultivectorField h = riemann_fueter(gq, true, 3);
    MultivectorField vq = inv_laplacian(field_scale(h, -1.0));
    std::memcpy(u.comp(blade::e3), vq.comp(0), bytes);
    std::memcpy(u.comp(blade::e13), vq.comp(1), bytes);
    std::memcpy(u.comp(blade::e23), vq.comp(2), bytes);
    std::memcpy(u.comp(blade::e12), vq.comp(3), bytes);
    return u;
}

double trivector_vanishing_check(const GaugeFieldSolution& sol) {
    MultivectorField W = dirac(sol.as_multivector(), {DiracSide::right, false, sol.d});
    const double vol = W.spec().cell_volume();
    double worst = 0;
    if (sol.d == 4) {
        for (BladeMask c : {blade::e124, blade::e134, blade::e234}) {
            const double n = std::sqrt(kernels::sumsq(W.comp(c), W.npoints()) * vol);
            worst = std::max(worst, n);
        }
    } else {
        worst = std::sqrt(kernels::sumsq(W.comp(blade::e123), W.npoints()) * vol);
    }
    return worst;
}

}  // namespace cliffpde
