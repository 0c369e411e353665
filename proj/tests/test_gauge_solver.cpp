// Unit tests for the gauge-potential layer: curl checks, the explicit
// first-order solver and its gradient-potential special case, Maxwell-form
// residuals, the coupled/single reduction, the Leibniz identity, and the
// linearized operator with its inverse.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "cliffpde/gauge_solver.hpp"
#include "cliffpde/kernels.hpp"
#include "cliffpde/random_field.hpp"
#include "cliffpde/spectral.hpp"

using namespace cliffpde;

namespace {

MultivectorField trig(const GridSpec& spec, int axis, bool sine, int m = 0, int comp = 0) {
    MultivectorField f(spec, m);
    std::vector<int> x(std::size_t(spec.d));
    for (std::size_t i = 0; i < f.npoints(); ++i) {
        spec.coords(i, x.data());
        const double t = x[std::size_t(axis)] * spec.h();
        f.at(comp, i) = sine ? std::sin(t) : std::cos(t);
    }
    return f;
}

double dist(const MultivectorField& a, const MultivectorField& b) {
    return field_l2(field_sub(a, b));
}

// Curl-free potential: free time component plus a spatial gradient.
GaugePotential gradient_beta(const GridSpec& spec, std::uint64_t seed, int bw) {
    GaugePotential beta{spec.d, {}};
    beta.comp.push_back(generate_scalar_field(spec, seed, 1.0, bw));
    MultivectorField psi = generate_scalar_field(spec, seed + 1, 1.0, bw);
    for (int i = 1; i < spec.d; ++i) beta.comp.push_back(partial_derivative(psi, i));
    return beta;
}

GaugePotential single_component_beta(const GridSpec& spec, int which, const MultivectorField& f) {
    GaugePotential beta{spec.d, {}};
    for (int a = 0; a < spec.d; ++a)
        beta.comp.push_back(a == which ? f : MultivectorField(spec, 0));
    return beta;
}

std::vector<BladeMask> all_blades(int m) {
    std::vector<BladeMask> v;
    for (int c = 0; c < (1 << m); ++c) v.push_back(BladeMask(c));
    return v;
}

}  // namespace

TEST_CASE("check_curl_free: gradients pass, explicit non-gradients fail") {
    const GridSpec spec(4, 16);
    CHECK(check_curl_free(gradient_beta(spec, 200, spec.N / 3)) <= 1e-12);
    CHECK(check_curl_free(single_component_beta(spec, 1, trig(spec, 2, true))) > 0.1);
    GaugePotential zero{4, {}};
    for (int a = 0; a < 4; ++a) zero.comp.push_back(MultivectorField(spec, 0));
    CHECK(check_curl_free(zero) == 0.0);
}

TEST_CASE("solve_dv_beta: zero input and single-mode closed forms") {
    const GridSpec spec(4, 16);
    GaugePotential zero{4, {}};
    for (int a = 0; a < 4; ++a) zero.comp.push_back(MultivectorField(spec, 0));
    GaugeFieldSolution s0 = solve_dv_beta(zero);
    for (int a = 0; a < 4; ++a) CHECK(field_l2(s0.v[std::size_t(a)]) == 0.0);

    // beta^0 = cos(x1) forces v^1 = -sin(x1), everything else zero.
    GaugeFieldSolution s1 = solve_dv_beta(single_component_beta(spec, 0, trig(spec, 1, false)));
    CHECK(field_l2(s1.v[0]) <= 1e-12);
    CHECK(dist(s1.v[1], field_scale(trig(spec, 1, true), -1.0)) <= 1e-12);
    CHECK(field_l2(s1.v[2]) <= 1e-12);
    CHECK(field_l2(s1.v[3]) <= 1e-12);
    CHECK(s1.system_residual <= 1e-10);

    // beta^0 = cos(x0) is carried entirely by v^0 = sin(x0).
    GaugeFieldSolution s2 = solve_dv_beta(single_component_beta(spec, 0, trig(spec, 0, false)));
    CHECK(dist(s2.v[0], trig(spec, 0, true)) <= 1e-12);
    for (int a = 1; a < 4; ++a) CHECK(field_l2(s2.v[std::size_t(a)]) <= 1e-12);
}

TEST_CASE("solve_dv_beta: residuals on random curl-free potentials; rejection") {
    const GridSpec spec(4, 16);
    double res = 0, curl = 0;
    for (int t = 0; t < 10; ++t) {
        GaugePotential beta = gradient_beta(spec, 210 + 2 * std::uint64_t(t), spec.N / 3);
        GaugeFieldSolution sol = solve_dv_beta(beta);
        res = std::max(res, sol.system_residual / (1.0 + beta.l2()));
        curl = std::max(curl, sol.curl_residual);
        CHECK(trivector_vanishing_check(sol) <= 1e-10 * (1.0 + beta.l2()));
    }
    CHECK(res <= 1e-8);
    CHECK(curl <= 1e-10);

    CHECK_THROWS_AS((void)solve_dv_beta(single_component_beta(spec, 1, trig(spec, 2, true))),
                    std::domain_error);
}

TEST_CASE("solve_dv_beta: d = 3 single mode matches the 4-D pattern") {
    const GridSpec spec(3, 16);
    GaugeFieldSolution s = solve_dv_beta(single_component_beta(spec, 0, trig(spec, 1, false)));
    CHECK(field_l2(s.v[0]) <= 1e-12);
    CHECK(dist(s.v[1], field_scale(trig(spec, 1, true), -1.0)) <= 1e-12);
    CHECK(field_l2(s.v[2]) <= 1e-12);
    CHECK(s.system_residual <= 1e-10);
}

TEST_CASE("solve_lorenz_gauge: closed forms and agreement with the general solver") {
    const GridSpec spec(4, 16);
    auto [phi0, s0] = solve_lorenz_gauge(MultivectorField(spec, 0));
    CHECK(field_l2(phi0) == 0.0);
    for (int a = 0; a < 4; ++a) CHECK(field_l2(s0.v[std::size_t(a)]) == 0.0);

    // alpha = sin(x0): phi = 2 cos(x0), v^0 = sin(x0), spatial part zero.
    auto [phi1, s1] = solve_lorenz_gauge(trig(spec, 0, true));
    CHECK(dist(phi1, field_scale(trig(spec, 0, false), 2.0)) <= 1e-12);
    CHECK(dist(s1.v[0], trig(spec, 0, true)) <= 1e-12);
    for (int a = 1; a < 4; ++a) CHECK(field_l2(s1.v[std::size_t(a)]) <= 1e-12);

    // alpha = sin(x1): compare against solve_dv_beta with beta = dL alpha,
    // i.e. beta^0 = d0 alpha, beta^i = di alpha.
    for (std::uint64_t t = 0; t < 4; ++t) {
        MultivectorField alpha =
            t == 0 ? trig(spec, 1, true) : generate_scalar_field(spec, 230 + t, 1.0, spec.N / 3);
        auto [phi, slor] = solve_lorenz_gauge(alpha);
        GaugePotential beta{4, {}};
        for (int a = 0; a < 4; ++a) beta.comp.push_back(partial_derivative(alpha, a));
        GaugeFieldSolution sgen = solve_dv_beta(beta);
        double dev = 0;
        for (int a = 0; a < 4; ++a)
            dev = std::max(dev, dist(slor.v[std::size_t(a)], sgen.v[std::size_t(a)]));
        CHECK(dev <= 1e-8 * (1.0 + beta.l2()));
    }
}

TEST_CASE("maxwell_residual: zero fields, gradients, explicit violation") {
    const GridSpec spec(4, 16);
    const MultivectorField z(spec, 0);
    std::array<MultivectorField, 3> Z{z, z, z};
    auto r0 = maxwell_residual(Z, z, Z, Z, z);
    CHECK(std::max({r0[0], r0[1], r0[2]}) == 0.0);

    // A = grad_x' psi has zero curl.
    MultivectorField psi = generate_scalar_field(spec, 240, 1.0, spec.N / 3);
    std::array<MultivectorField, 3> A{partial_derivative(psi, 1), partial_derivative(psi, 2),
                                      partial_derivative(psi, 3)};
    auto r1 = maxwell_residual(A, z, Z, Z, z);
    CHECK(r1[0] <= 1e-12);

    std::array<MultivectorField, 3> bad{trig(spec, 2, true), z, z};
    auto r2 = maxwell_residual(bad, z, Z, Z, z);
    CHECK(r2[0] > 0.1);
}

TEST_CASE("equation_residual matches an independent composition") {
    const GridSpec spec(4, 16);
    GaugePotential zero{4, {}};
    for (int a = 0; a < 4; ++a) zero.comp.push_back(MultivectorField(spec, 0));
    CHECK(field_l2(equation_residual(zero, MultivectorField(spec, 4))) == 0.0);
    MultivectorField cst(spec, 4);
    for (std::size_t i = 0; i < cst.npoints(); ++i) cst.at(6, i) = 1.0;
    CHECK(field_l2(equation_residual(zero, cst)) <= 1e-12);

    GaugePotential beta = gradient_beta(spec, 250, spec.N / 4);
    MultivectorField f = generate_field(spec, 4, 252, 1.0, spec.N / 4, all_blades(4));

    // Oracle assembled from primitives: dL f built axis by axis, and
    // beta e4 = beta^0 e4 - sum_i beta^i e_i e4 written out componentwise.
    MultivectorField dl = partial_derivative(f, 0);
    for (int i = 1; i < 4; ++i)
        dl = field_sub(dl, blade_multiply(partial_derivative(f, i), BladeMask(1u << (i - 1)),
                                          DiracSide::left));
    MultivectorField be4(spec, 4);
    static constexpr BladeMask slots[4] = {blade::e4, blade::e14, blade::e24, blade::e34};
    for (int a = 0; a < 4; ++a) {
        const double s = a == 0 ? 1.0 : -1.0;
        const double* src = beta.comp[std::size_t(a)].comp(0);
        double* dst = be4.comp(slots[a]);
        for (std::size_t i = 0; i < be4.npoints(); ++i) dst[i] = s * src[i];
    }
    MultivectorField oracle = field_sub(dl, field_mul(be4, f));
    CHECK(dist(equation_residual(beta, f), oracle) <= 1e-12 * (1.0 + field_l2(oracle)));
}

TEST_CASE("coupled_reduction_check is an exact algebraic identity") {
    const GridSpec spec(4, 16);
    GaugePotential zero{4, {}};
    for (int a = 0; a < 4; ++a) zero.comp.push_back(MultivectorField(spec, 0));
    CHECK(coupled_reduction_check(MultivectorField(spec, 3), MultivectorField(spec, 3), zero) ==
          0.0);

    double worst = 0;
    for (std::uint64_t t = 0; t < 5; ++t) {
        MultivectorField f1 = generate_field(spec, 3, 260 + t, 1.0, spec.N / 4, all_blades(3));
        MultivectorField f2 = generate_field(spec, 3, 270 + t, 1.0, spec.N / 4, all_blades(3));
        GaugePotential beta = gradient_beta(spec, 280 + 2 * t, spec.N / 4);
        worst = std::max(worst, coupled_reduction_check(f1, f2, beta));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("gauged Leibniz identity residual") {
    const GridSpec spec(4, 16);
    MultivectorField one(spec, 4), f0(spec, 4);
    for (std::size_t i = 0; i < one.npoints(); ++i) one.at(0, i) = 1.0;
    MultivectorField f = generate_field(spec, 4, 290, 1.0, spec.N / 5, all_blades(4));
    CHECK(gauged_identity_residual(one, one, f) <= 1e-12);
    CHECK(gauged_identity_residual(one, one, f0) == 0.0);

    // Band-limited polynomial gauge q = 1 + w: all products in the identity
    // stay below the Nyquist band, so the residual is truncation-limited.
    MultivectorField q = generate_field(spec, 4, 291, 0.05, spec.N / 5, all_blades(4));
    for (std::size_t i = 0; i < q.npoints(); ++i) q.at(0, i) += 1.0;
    MultivectorField qi = field_inverse(q);
    CHECK(gauged_identity_residual(q, qi, f) <= 1e-6);
}

TEST_CASE("linearized gauge operator and its inverse") {
    const GridSpec spec(4, 16);
    auto [w0, g0] = linearized_gauge(MultivectorField(spec, 4), 4);
    CHECK(field_l2(w0) == 0.0);
    CHECK(field_l2(g0) == 0.0);

    // u = sin(x1) e1e2: the first slot carries Lap u = -sin(x1) e1e2 and the
    // measured second slot is zero.
    MultivectorField u(spec, 4);
    std::vector<int> x(4);
    for (std::size_t i = 0; i < u.npoints(); ++i) {
        spec.coords(i, x.data());
        u.at(blade::e12, i) = std::sin(x[1] * spec.h());
    }
    auto [w1, g1] = linearized_gauge(u, 4);
    CHECK(dist(w1, field_scale(u, -1.0)) <= 1e-12);
    CHECK(field_l2(g1) <= 1e-10);

    MultivectorField rec = invert_linearized(w1, g1, 4);
    CHECK(dist(rec, u) <= 1e-10);
    CHECK(field_l2(invert_linearized(MultivectorField(spec, 4), MultivectorField(spec, 4), 4)) ==
          0.0);

    static constexpr std::array<BladeMask, 10> lie{blade::e4,  blade::e14, blade::e24, blade::e34,
                                                   blade::e1,  blade::e2,  blade::e3,  blade::e12,
                                                   blade::e13, blade::e23};
    double worst = 0;
    for (std::uint64_t t = 0; t < 5; ++t) {
        MultivectorField v = generate_field(spec, 4, 300 + t, 1.0, spec.N / 3, lie);
        auto [w, g] = linearized_gauge(v, 4);
        worst = std::max(worst, dist(invert_linearized(w, g, 4), v) / (1.0 + field_l2(v)));
    }
    CHECK(worst <= 1e-10);

    // Support guard: pseudoscalar content is outside the linearization domain.
    MultivectorField bad(spec, 4);
    for (std::size_t i = 0; i < bad.npoints(); ++i) {
        spec.coords(i, x.data());
        bad.at(blade::e1234, i) = std::sin(x[1] * spec.h());
    }
    CHECK_THROWS((void)linearized_gauge(bad, 4));
}

TEST_CASE("trivector_vanishing_check flags adversarial solutions") {
    const GridSpec spec(4, 16);
    GaugeFieldSolution good =
        solve_dv_beta(single_component_beta(spec, 0, trig(spec, 1, false)));
    CHECK(trivector_vanishing_check(good) <= 1e-12);

    GaugeFieldSolution zero{4, {}, 0, 0};
    for (int a = 0; a < 4; ++a) zero.v.push_back(MultivectorField(spec, 0));
    CHECK(trivector_vanishing_check(zero) == 0.0);

    GaugeFieldSolution bad = zero;
    bad.v[1] = trig(spec, 2, true);  // v^1 = sin(x2): nonzero spatial curl
    CHECK(trivector_vanishing_check(bad) > 0.1);
}
