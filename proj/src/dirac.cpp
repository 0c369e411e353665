#include "cliffpde/dirac.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffpde/kernels.hpp"
#include "cliffpde/spectral.hpp"

namespace cliffpde {

MultivectorField blade_multiply(const MultivectorField& f, BladeMask mask, DiracSide side) {
    MultivectorField out(f.spec(), f.m());
    const std::size_t np = f.npoints();
    for (int c = 0; c < f.ncomp(); ++c) {
        const int s = side == DiracSide::left ? blade_product_sign(mask, BladeMask(c))
                                              : blade_product_sign(BladeMask(c), mask);
        const double* in = f.comp(c);
        double* o = out.comp(c ^ mask);
        for (std::size_t i = 0; i < np; ++i) o[i] = s * in[i];
    }
    return out;
}

MultivectorField field_grade_involution(const MultivectorField& f) {
    MultivectorField out = f;
    for (int c = 0; c < f.ncomp(); ++c) {
        if (popcount16(BladeMask(c)) & 1) {
            double* d = out.comp(c);
            for (std::size_t i = 0; i < f.npoints(); ++i) d[i] = -d[i];
        }
    }
    return out;
}

namespace {

// Per-mode signed wavenumbers, so first-order operators can be assembled in
// the spectral domain with a single transform round trip.
std::vector<std::array<int, 4>> wavenumber_table(const GridSpec& spec) {
    std::vector<std::array<int, 4>> k(spec.npoints());
    std::vector<int> x(std::size_t(spec.d));
    for (std::size_t i = 0; i < k.size(); ++i) {
        spec.coords(i, x.data());
        for (int a = 0; a < spec.d; ++a)
            k[i][std::size_t(a)] = spec.wavenumber(x[std::size_t(a)]);
    }
    return k;
}

// out += s * blade_multiply(d_axis f, mask, side), accumulated spectrally.
void add_blade_deriv(SpectralField& out, const SpectralField& F, int axis, BladeMask mask,
                     DiracSide side, double s, const std::vector<std::array<int, 4>>& k) {
    const std::size_t n = F.npoints();
    for (int c = 0; c < F.ncomp(); ++c) {
        const int bsgn = side == DiracSide::left ? blade_product_sign(mask, BladeMask(c))
                                                 : blade_product_sign(BladeMask(c), mask);
        const double sc = s * bsgn;
        std::complex<double>* o = out.comp(c ^ mask);
        const std::complex<double>* in = F.comp(c);
        for (std::size_t i = 0; i < n; ++i)
            o[i] += std::complex<double>(0.0, sc * double(k[i][std::size_t(axis)])) * in[i];
    }
}

void require_support(const MultivectorField& f, std::span<const BladeMask> blades,
                     const char* what) {
    std::vector<bool> ok(std::size_t(f.ncomp()), false);
    for (BladeMask b : blades) ok[b] = true;
    double bad = 0, total = 0;
    for (int c = 0; c < f.ncomp(); ++c) {
        const double s = kernels::sumsq(f.comp(c), f.npoints());
        total += s;
        if (!ok[std::size_t(c)]) bad += s;
    }
    if (bad > 1e-20 * (1.0 + total))
        throw std::domain_error(std::string(what) + ": field support outside allowed blades");
}

}  // namespace

MultivectorField dirac(const MultivectorField& f, const DiracMode& mode) {
    if (f.spec().d != mode.d) throw std::invalid_argument("dirac: field/operator dimension mismatch");
    if (f.m() < mode.d - 1)
        throw std::invalid_argument("dirac: algebra too small for spatial generators");
    const std::vector<std::array<int, 4>> k = wavenumber_table(f.spec());
    SpectralField F = to_spectral(f);
    SpectralField out(f.spec(), f.m());
    add_blade_deriv(out, F, 0, BladeMask(0), mode.side, 1.0, k);
    const double sgn = mode.conjugated ? 1.0 : -1.0;
    for (int i = 1; i < mode.d; ++i)
        add_blade_deriv(out, F, i, BladeMask(1u << (i - 1)), mode.side, sgn, k);
    return to_physical(out);
}

MultivectorField riemann_fueter(const MultivectorField& f, bool conjugated, int active_axes) {
    if (f.m() != 2) throw std::invalid_argument("riemann_fueter expects an m = 2 field");
    if (active_axes != 3 && active_axes != 4)
        throw std::invalid_argument("riemann_fueter: active_axes must be 3 or 4");
    if (active_axes > f.spec().d)
        throw std::invalid_argument("riemann_fueter: more active axes than grid dimensions");
    static constexpr BladeMask units[3] = {1, 2, 3};  // i, j, k in the Cl_2 model
    const std::vector<std::array<int, 4>> k = wavenumber_table(f.spec());
    SpectralField F = to_spectral(f);
    SpectralField out(f.spec(), f.m());
    add_blade_deriv(out, F, 0, BladeMask(0), DiracSide::right, 1.0, k);
    const double sgn = conjugated ? -1.0 : 1.0;
    for (int a = 1; a < active_axes; ++a)
        add_blade_deriv(out, F, a, units[a - 1], DiracSide::right, sgn, k);
    return to_physical(out);
}

MultivectorField e4_to_quaternion(const MultivectorField& v) {
    if (v.m() != 4) throw std::invalid_argument("e4_to_quaternion expects a Cl_4 field");
    static constexpr BladeMask e4_blades[] = {blade::e4, blade::e14, blade::e24, blade::e34};
    require_support(v, e4_blades, "e4_to_quaternion");
    MultivectorField q(v.spec(), 2);
    const std::size_t n = v.npoints() * sizeof(double);
    std::memcpy(q.comp(0), v.comp(blade::e4), n);
    std::memcpy(q.comp(1), v.comp(blade::e14), n);
    std::memcpy(q.comp(2), v.comp(blade::e24), n);
    std::memcpy(q.comp(3), v.comp(blade::e34), n);
    return q;
}

MultivectorField quaternion_to_e4(const MultivectorField& q) {
    if (q.m() != 2) throw std::invalid_argument("quaternion_to_e4 expects an m = 2 field");
    MultivectorField v(q.spec(), 4);
    const std::size_t n = q.npoints() * sizeof(double);
    std::memcpy(v.comp(blade::e4), q.comp(0), n);
    std::memcpy(v.comp(blade::e14), q.comp(1), n);
    std::memcpy(v.comp(blade::e24), q.comp(2), n);
    std::memcpy(v.comp(blade::e34), q.comp(3), n);
    return v;
}

MultivectorField projected_dirac(const MultivectorField& v) {
    if (v.spec().d != 4) throw std::invalid_argument("projected_dirac requires d = 4");
    MultivectorField q = e4_to_quaternion(v);  // also validates E4 support
    const std::vector<std::array<int, 4>> k = wavenumber_table(v.spec());
    SpectralField Q = to_spectral(q);
    SpectralField G(v.spec(), 2);
    const std::size_t np = v.npoints();
    const auto d = [&](int a, int c, std::size_t i) {
        return std::complex<double>(0.0, double(k[i][std::size_t(a)])) * Q.comp(c)[i];
    };
    for (std::size_t i = 0; i < np; ++i) {
        G.comp(0)[i] = d(0, 0, i) - d(1, 1, i) - d(2, 2, i) - d(3, 3, i);
        G.comp(1)[i] = d(0, 1, i) + d(1, 0, i) - d(2, 3, i) + d(3, 2, i);
        G.comp(2)[i] = d(0, 2, i) + d(2, 0, i) - d(3, 1, i) + d(1, 3, i);
        G.comp(3)[i] = d(0, 3, i) + d(3, 0, i) - d(1, 2, i) + d(2, 1, i);
    }
    return quaternion_to_e4(to_physical(G));
}

MultivectorField invert_projected_dirac(const MultivectorField& g) {
    MultivectorField gq = e4_to_quaternion(g);
    // The conjugate operator annihilates constants, so a nonzero mean would
    // be silently dropped instead of inverted; reject it as unsolvable.
    for (int c = 0; c < 4; ++c)
        if (std::abs(component_mean(gq, c)) > 1e-10)
            throw std::domain_error("invert_projected_dirac: input component has nonzero mean");
    MultivectorField h = riemann_fueter(gq, true, 4);
    // projected_dirac acts as D, conj(D) D = Laplacian, and inv_laplacian
    // inverts -Laplacian, so v = inv_laplacian(-conj(D) g).
    MultivectorField vq = inv_laplacian(field_scale(h, -1.0));
    return quaternion_to_e4(vq);
}

MultivectorField gauge_derivative(const MultivectorField& q, const MultivectorField& qinv) {
    q.require_compatible(qinv);
    DiracMode mode{DiracSide::right, false, q.spec().d};
    MultivectorField dq = dirac(q, mode);
    return field_mul(qinv, dq);
}

std::pair<MultivectorField, MultivectorField> field_exp(const MultivectorField& u) {
    MultivectorField value(u.spec(), u.m());
    MultivectorField inverse(u.spec(), u.m());
    const std::size_t np = u.npoints();
    for (std::size_t i = 0; i < np; ++i) {
        const Multivector a = u.value_at(i);
        value.set_value(i, mv_exp_series(a));
        inverse.set_value(i, mv_exp_series(a * -1.0));
    }
    return {value, inverse};
}

MultivectorField field_inverse(const MultivectorField& q) {
    const int m = q.m();
    const int n = 1 << m;
    const signed char* signs = kernels::sign_table(m);
    MultivectorField inv(q.spec(), m);
    Eigen::MatrixXd L(n, n);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(0) = 1.0;
    for (std::size_t pt = 0; pt < q.npoints(); ++pt) {
        // Left-multiplication matrix: (q x)_{a^b} += sign(a, b) q_a x_b.
        L.setZero();
        for (int a = 0; a < n; ++a) {
            const double qa = q.at(a, pt);
            if (qa == 0.0) continue;
            for (int b = 0; b < n; ++b) L(a ^ b, b) += signs[a * n + b] * qa;
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(L);
        Eigen::VectorXd x = lu.solve(e0);
        if (!(L * x - e0).isZero(1e-8))
            throw std::domain_error("field_inverse: field is not pointwise invertible");
        for (int b = 0; b < n; ++b) inv.at(b, pt) = x(b);
    }
    return inv;
}

}  // namespace cliffpde
