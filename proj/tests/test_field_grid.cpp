// Unit tests for the periodic-grid field layer: spectral derivatives, the
// inverse Laplacian, transforms, and the L^p / Lorentz norms.  Closed-form
// expectations come from single-Fourier-mode calculus on [0, 2pi)^d.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cliffpde/grid.hpp"
#include "cliffpde/kernels.hpp"
#include "cliffpde/norms.hpp"
#include "cliffpde/random_field.hpp"
#include "cliffpde/spectral.hpp"

using namespace cliffpde;

namespace {

// f(x) = trig(x_axis) placed in one blade component.
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

}  // namespace

TEST_CASE("partial_derivative: single modes and constants") {
    const GridSpec spec(4, 16);
    CHECK(dist(partial_derivative(trig(spec, 1, true), 1), trig(spec, 1, false)) <= 1e-12);

    MultivectorField c(spec, 0);
    for (std::size_t i = 0; i < c.npoints(); ++i) c.at(0, i) = 3.25;
    for (int ax = 0; ax < 4; ++ax) CHECK(field_l2(partial_derivative(c, ax)) <= 1e-12);

    // sin(x0)cos(x2) in the e1e2 component of a Cl_4 field, derivative in x0.
    MultivectorField f(spec, 4);
    MultivectorField g(spec, 4);
    std::vector<int> x(4);
    for (std::size_t i = 0; i < f.npoints(); ++i) {
        spec.coords(i, x.data());
        const double t0 = x[0] * spec.h(), t2 = x[2] * spec.h();
        f.at(3, i) = std::sin(t0) * std::cos(t2);  // mask 3 = e1e2
        g.at(3, i) = std::cos(t0) * std::cos(t2);
    }
    CHECK(dist(partial_derivative(f, 0), g) <= 1e-12);
}

TEST_CASE("partial derivatives commute on band-limited fields") {
    const GridSpec spec(4, 16);
    MultivectorField f = generate_scalar_field(spec, 31, 1.0, spec.N / 3);
    double worst = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            worst = std::max(worst, dist(partial_derivative(partial_derivative(f, a), b),
                                         partial_derivative(partial_derivative(f, b), a)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("inv_laplacian: closed forms, inverse property, solvability guard") {
    const GridSpec spec(4, 16);
    CHECK(dist(inv_laplacian(trig(spec, 1, true)), trig(spec, 1, true)) <= 1e-12);
    CHECK(field_l2(inv_laplacian(MultivectorField(spec, 0))) == 0.0);
    CHECK(dist(inv_laplacian(field_add(trig(spec, 0, false), trig(spec, 3, false))),
               field_add(trig(spec, 0, false), trig(spec, 3, false))) <= 1e-12);

    MultivectorField f = generate_scalar_field(spec, 32, 1.0, spec.N / 3);
    MultivectorField u = inv_laplacian(f);
    CHECK(dist(field_scale(laplacian(u), -1.0), f) <= 1e-10 * (1.0 + field_l2(f)));

    MultivectorField c(spec, 0);
    for (std::size_t i = 0; i < c.npoints(); ++i) c.at(0, i) = 1.0;
    CHECK_THROWS(inv_laplacian(c));
}

TEST_CASE("transform round trip") {
    const GridSpec spec(4, 16);
    MultivectorField f = generate_field(spec, 4, 33, 1.0, spec.N / 3,
                                        std::array<BladeMask, 3>{0, 5, 15});
    CHECK(dist(to_physical(to_spectral(f)), f) <= 1e-12 * (1.0 + field_l2(f)));
}

TEST_CASE("lp_norm: volume, homogeneity, zero") {
    const GridSpec spec(4, 16);
    MultivectorField one(spec, 0);
    for (std::size_t i = 0; i < one.npoints(); ++i) one.at(0, i) = 1.0;
    CHECK(lp_norm(one, 4.0) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(lp_norm(MultivectorField(spec, 0), 4.0) == 0.0);

    MultivectorField f = generate_scalar_field(spec, 34, 1.0, spec.N / 3);
    CHECK(lp_norm(field_scale(f, -2.5), 3.0) ==
          doctest::Approx(2.5 * lp_norm(f, 3.0)).epsilon(1e-12));
}

TEST_CASE("lorentz_norm: diagonal case, constants, monotonicity in q") {
    const GridSpec spec(4, 16);
    MultivectorField f = generate_scalar_field(spec, 35, 1.0, spec.N / 3);

    // L^{p,p} coincides with L^p for the discrete rearrangement sum.
    for (double p : {2.0, 3.0, 4.0}) {
        const double lr = lorentz_norm(f, p, p), lp = lp_norm(f, p);
        CHECK(std::abs(lr - lp) <= 1e-10 * lp);
    }

    CHECK(lorentz_norm(MultivectorField(spec, 0), 4.0, kInfQ) == 0.0);

    MultivectorField one(spec, 0);
    for (std::size_t i = 0; i < one.npoints(); ++i) one.at(0, i) = 1.0;
    CHECK(lorentz_norm(one, 3.0, kInfQ) ==
          doctest::Approx(std::pow(spec.volume(), 1.0 / 3.0)).epsilon(1e-12));

    // Nonincreasing in the secondary index.
    for (int t = 0; t < 10; ++t) {
        MultivectorField g = generate_scalar_field(spec, 100 + std::uint64_t(t), 1.0, spec.N / 3);
        double prev = lorentz_norm(g, 4.0, 1.0);
        for (double q : {2.0, 4.0, 8.0, kInfQ}) {
            const double cur = lorentz_norm(g, 4.0, q);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }

    CHECK_THROWS_AS((void)lorentz_norm(f, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("band_project: truncation behavior") {
    const GridSpec spec(4, 16);
    MultivectorField f = generate_scalar_field(spec, 36, 1.0, 5);
    CHECK(dist(band_project(f, 5), f) <= 1e-12);
    MultivectorField t = band_project(f, 2);
    CHECK(dist(band_project(t, 2), t) <= 1e-13);
    CHECK(field_l2(t) <= field_l2(f) * (1.0 + 1e-12));
}

TEST_CASE("GridSpec validation") {
    CHECK_THROWS_AS(GridSpec(5, 16), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, 15), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, 6), std::invalid_argument);
    const GridSpec spec(3, 24);
    CHECK(spec.npoints() == 24u * 24u * 24u);
    CHECK(spec.wavenumber(23) == -1);
    CHECK(spec.wavenumber(11) == 11);
}
