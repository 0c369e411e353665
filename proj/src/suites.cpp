#include "cliffpde/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffpde/compensation.hpp"
#include "cliffpde/dirac.hpp"
#include "cliffpde/gauge_solver.hpp"
#include "cliffpde/hodge.hpp"
#include "cliffpde/kernels.hpp"
#include "cliffpde/norms.hpp"
#include "cliffpde/operator_assembly.hpp"
#include "cliffpde/random_field.hpp"
#include "cliffpde/spectral.hpp"
#include "cliffpde/subspaces.hpp"
#include "cliffpde/symbol.hpp"

namespace cliffpde {

namespace {

using blade::e1;
using blade::e2;
using blade::e3;
using blade::e4;
using blade::e12;
using blade::e13;
using blade::e14;
using blade::e23;
using blade::e24;
using blade::e34;
using blade::e123;
using blade::e124;
using blade::e134;
using blade::e234;
using blade::e1234;

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t salt(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + tag * kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<BladeMask> masks_all(int m) {
    std::vector<BladeMask> v;
    for (int c = 0; c < (1 << m); ++c) v.push_back(BladeMask(c));
    return v;
}

// Exponential coordinates of the structure group: grades 1 and 2 over e1..e4
// restricted to the two invariant slots (E4 and E6 together).
constexpr std::array<BladeMask, 10> kLieBlades = {e4, e14, e24, e34, e1, e2, e3, e12, e13, e23};
constexpr std::array<BladeMask, 10> kE6E4Blades = kLieBlades;

Multivector random_mv(int m, std::mt19937_64& rng, double amp = 1.0) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Multivector a(m);
    for (std::size_t c = 0; c < a.size(); ++c) a[BladeMask(c)] = amp * uni(rng);
    return a;
}

Multivector random_in(std::span<const BladeMask> blades, int m, std::mt19937_64& rng,
                      double amp = 1.0) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Multivector a(m);
    for (BladeMask b : blades) a[b] = amp * uni(rng);
    return a;
}

// Scalar grid filled with cos/sin of one coordinate.
MultivectorField trig_field(const GridSpec& spec, int axis, bool sine, int m = 0,
                            BladeMask comp = 0) {
    MultivectorField f(spec, m);
    std::vector<int> x(std::size_t(spec.d));
    double* out = f.comp(comp);
    for (std::size_t i = 0; i < spec.npoints(); ++i) {
        spec.coords(i, x.data());
        const double t = x[std::size_t(axis)] * spec.h();
        out[i] = sine ? std::sin(t) : std::cos(t);
    }
    return f;
}

MultivectorField constant_field(const GridSpec& spec, int m, BladeMask comp, double v) {
    MultivectorField f(spec, m);
    double* out = f.comp(comp);
    for (std::size_t i = 0; i < spec.npoints(); ++i) out[i] = v;
    return f;
}

// Lifts a T^3 field to a T^4 field constant along axis 3.
MultivectorField lift_to_4d(const MultivectorField& f3, const GridSpec& spec4) {
    if (f3.spec().d != 3 || f3.spec().N != spec4.N)
        throw std::invalid_argument("lift_to_4d: incompatible grids");
    MultivectorField f4(spec4, f3.m());
    const std::size_t n3 = f3.npoints();
    const std::size_t N = std::size_t(spec4.N);
    for (int c = 0; c < f3.ncomp(); ++c) {
        const double* in = f3.comp(c);
        double* out = f4.comp(c);
        for (std::size_t i = 0; i < n3; ++i)
            for (std::size_t j = 0; j < N; ++j) out[i * N + j] = in[i];
    }
    return f4;
}

// Curl-free zero-mean potential tuple: beta^0 random, spatial part a gradient.
GaugePotential make_beta(const GridSpec& spec, std::uint64_t seed, double amp, int bandwidth) {
    GaugePotential beta{spec.d, {}};
    beta.comp.push_back(generate_scalar_field(spec, salt(seed, 11), amp, bandwidth));
    MultivectorField psi = generate_scalar_field(spec, salt(seed, 12), amp, bandwidth);
    for (int i = 1; i < spec.d; ++i) beta.comp.push_back(partial_derivative(psi, i));
    return beta;
}

// Pointwise exponential gauge with ||grad q||_{L^4} close to (and below)
// the requested target; single-pass scaling with a 10% safety margin.
std::pair<MultivectorField, MultivectorField> make_gauge(const GridSpec& spec, std::uint64_t seed,
                                                         double target_dq4, int bandwidth) {
    MultivectorField u = generate_field(spec, 4, salt(seed, 21), 1.0, bandwidth, kLieBlades);
    const double g = gradient_lp_norm(u, 4.0);
    if (g > 0) u = field_scale(u, 0.9 * target_dq4 / g);
    return field_exp(u);
}

double rel(double err, double base) { return err / (1.0 + base); }

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << header << "\n";
    for (const auto& r : rows) out << r << "\n";
}

std::string csv_base(const ExperimentConfig& cfg) {
    std::string base = cfg.out_path;
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json") base.resize(base.size() - 5);
    return base;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

void run_identities(const ExperimentConfig& cfg, ExperimentReport& rep) {
    std::mt19937_64 rng(salt(cfg.seed, 1));

    // Algebra-level identities (no grid).
    {
        double worst = 0;
        for (int t = 0; t < 1000; ++t) {
            Multivector a = random_mv(4, rng), b = random_mv(4, rng), c = random_mv(4, rng);
            const Multivector lhs = mv_mul(mv_mul(a, b), c);
            const Multivector rhs = mv_mul(a, mv_mul(b, c));
            worst = std::max(worst,
                             (lhs - rhs).norm() / (1.0 + a.norm() * b.norm() * c.norm()));
        }
        rep.add("assoc_random_triples", worst, 1e-12);
    }
    {
        double worst = 0;
        for (int t = 0; t < 200; ++t) {
            Multivector a = random_mv(4, rng), b = random_mv(4, rng);
            const Multivector lhs = grade_involution(mv_mul(a, b));
            const Multivector rhs = mv_mul(grade_involution(a), grade_involution(b));
            worst = std::max(worst, (lhs - rhs).norm() / (1.0 + a.norm() * b.norm()));
        }
        rep.add("involution_automorphism", worst, 1e-12);
    }
    {
        // e4 f = hat(f) e4 for every Cl_3 basis blade, exactly.
        const Multivector e4mv = Multivector::blade(4, e4);
        double worst = 0;
        for (int c = 0; c < 8; ++c) {
            const Multivector f = Multivector::blade(4, BladeMask(c));
            worst = std::max(worst,
                             (mv_mul(e4mv, f) - mv_mul(grade_involution(f), e4mv)).norm());
        }
        rep.add("e4_conjugation_exact", worst, 0.0);
    }
    {
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            const Multivector a = random_in(kLieBlades, 4, rng, 0.5);
            const GaugeElement g = mv_exp(a);
            Multivector prod = mv_mul(g.value, g.inverse);
            prod[0] -= 1.0;
            worst = std::max(worst, prod.norm());
        }
        rep.add("exp_inverse", worst, 1e-12);
    }
    {
        // Plane rotor: exp(theta e1 e2) = cos theta + sin theta e1 e2.
        double worst = 0;
        for (double theta : {0.3, 1.0, 3.141592653589793}) {
            Multivector expected(4);
            expected[0] = std::cos(theta);
            expected[e12] = std::sin(theta);
            const Multivector got = mv_exp_series(Multivector::blade(4, e12, theta));
            worst = std::max(worst, (got - expected).norm());
        }
        rep.add("exp_rotor_formula", worst, 1e-14);
    }

    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);
    const GridSpec spec3(3, 16);
    const int bw = spec4.N / 3;
    const int bwc = spec4.N / 4;

    // Second-order factorizations: the conjugate of each first-order operator
    // composes with it to the Laplacian, in all four side/order combinations.
    {
        double worst = 0;
        for (int t = 0; t < 20; ++t) {
            MultivectorField f =
                generate_field(spec4, 4, salt(cfg.seed, 100 + std::uint64_t(t)), 1.0, bw,
                               masks_all(4));
            MultivectorField lap = laplacian(f);
            const double base = field_l2(lap);
            for (DiracSide side : {DiracSide::left, DiracSide::right}) {
                MultivectorField Df = dirac(f, {side, false, 4});
                MultivectorField Dbf = dirac(f, {side, true, 4});
                worst = std::max(worst,
                                 rel(field_l2(field_sub(dirac(Df, {side, true, 4}), lap)), base));
                worst = std::max(worst,
                                 rel(field_l2(field_sub(dirac(Dbf, {side, false, 4}), lap)), base));
            }
        }
        rep.add("dirac_factorization", worst, 1e-10);
    }
    {
        double worst = 0;
        for (int t = 0; t < 20; ++t) {
            MultivectorField f =
                generate_field(spec4, 2, salt(cfg.seed, 140 + std::uint64_t(t)), 1.0, bw,
                               masks_all(2));
            MultivectorField lap = laplacian(f);
            const double base = field_l2(lap);
            MultivectorField Df = riemann_fueter(f, false, 4);
            MultivectorField Dbf = riemann_fueter(f, true, 4);
            worst = std::max(worst,
                             rel(field_l2(field_sub(riemann_fueter(Df, true, 4), lap)), base));
            worst = std::max(worst,
                             rel(field_l2(field_sub(riemann_fueter(Dbf, false, 4), lap)), base));
        }
        rep.add("rf_factorization", worst, 1e-10);
    }
    {
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            MultivectorField f =
                generate_field(spec3, 2, salt(cfg.seed, 160 + std::uint64_t(t)), 1.0,
                               spec3.N / 3, masks_all(2));
            MultivectorField lap = laplacian(f);
            const double base = field_l2(lap);
            MultivectorField Df = riemann_fueter(f, false, 3);
            worst = std::max(worst,
                             rel(field_l2(field_sub(riemann_fueter(Df, true, 3), lap)), base));
        }
        rep.add("rf3_factorization", worst, 1e-10);
    }

    // The projected first-order operator agrees with the quaternionic one.
    {
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            MultivectorField v =
                generate_field(spec4, 4, salt(cfg.seed, 200 + std::uint64_t(t)), 1.0, bw,
                               subspace_blades(SubspaceTag::E4));
            MultivectorField g = projected_dirac(v);
            MultivectorField gq = e4_to_quaternion(g);
            MultivectorField ref = riemann_fueter(e4_to_quaternion(v), false, 4);
            worst = std::max(worst, rel(field_l2(field_sub(gq, ref)), field_l2(ref)));
        }
        rep.add("projected_dirac_equals_rf", worst, 1e-12);
    }
    {
        double worst = 0;
        for (int t = 0; t < 20; ++t) {
            MultivectorField v =
                generate_field(spec4, 4, salt(cfg.seed, 300 + std::uint64_t(t)), 1.0, bw,
                               subspace_blades(SubspaceTag::E4));
            MultivectorField back = invert_projected_dirac(projected_dirac(v));
            worst = std::max(worst, rel(field_l2(field_sub(back, v)), field_l2(v)));
        }
        rep.add("projected_dirac_roundtrip", worst, 1e-10);
    }

    // Gauged Leibniz identity.  The gauge is 1 + w with w band-limited so
    // that every product stays below the Nyquist band and the identity is
    // exact on the grid; the inverse is computed pointwise.
    {
        const int bwl = std::max(1, spec4.N / 5);
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            MultivectorField q =
                generate_field(spec4, 4, salt(cfg.seed, 400 + std::uint64_t(t)), 0.05, bwl,
                               masks_all(4));
            for (std::size_t i = 0; i < q.npoints(); ++i) q.at(0, i) += 1.0;
            MultivectorField qi = field_inverse(q);
            MultivectorField f =
                generate_field(spec4, 4, salt(cfg.seed, 420 + std::uint64_t(t)), 1.0, bwl,
                               masks_all(4));
            worst = std::max(worst, gauged_identity_residual(q, qi, f));
        }
        rep.add("leibniz_identity", worst, 1e-6);
    }

    // Reduction of the single Cl_4 equation to the coupled Cl_3 pair.
    {
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            MultivectorField f1 =
                generate_field(spec4, 3, salt(cfg.seed, 500 + std::uint64_t(t)), 1.0, bwc,
                               masks_all(3));
            MultivectorField f2 =
                generate_field(spec4, 3, salt(cfg.seed, 520 + std::uint64_t(t)), 1.0, bwc,
                               masks_all(3));
            GaugePotential beta = make_beta(spec4, salt(cfg.seed, 540 + std::uint64_t(t)), 1.0, bwc);
            worst = std::max(worst, coupled_reduction_check(f1, f2, beta));
        }
        rep.add("coupled_reduction", worst, 1e-12);
    }

    // Logarithmic derivative of single-blade rotors (exact on the grid).
    {
        MultivectorField q(spec4, 4), qi(spec4, 4);
        std::vector<int> x(4);
        for (std::size_t i = 0; i < spec4.npoints(); ++i) {
            spec4.coords(i, x.data());
            const double t = x[0] * spec4.h();
            q.at(0, i) = std::cos(t);
            q.at(e12, i) = std::sin(t);
            qi.at(0, i) = std::cos(t);
            qi.at(e12, i) = -std::sin(t);
        }
        MultivectorField D = gauge_derivative(q, qi);
        MultivectorField expect = constant_field(spec4, 4, e12, 1.0);
        rep.add("gauge_derivative_time_rotor", field_l2(field_sub(D, expect)), 1e-12);
    }
    {
        MultivectorField q(spec4, 4), qi(spec4, 4);
        std::vector<int> x(4);
        for (std::size_t i = 0; i < spec4.npoints(); ++i) {
            spec4.coords(i, x.data());
            const double t = x[1] * spec4.h();
            q.at(0, i) = std::cos(t);
            q.at(e12, i) = std::sin(t);
            qi.at(0, i) = std::cos(t);
            qi.at(e12, i) = -std::sin(t);
        }
        MultivectorField D = gauge_derivative(q, qi);
        MultivectorField expect = constant_field(spec4, 4, e2, -1.0);
        rep.add("gauge_derivative_space_rotor", field_l2(field_sub(D, expect)), 1e-12);
    }
    {
        // The logarithmic derivative never produces a pseudoscalar part.
        // Algebra level: elements of the structure Lie algebra, and their
        // right products with spatial generators, have no e1234 component.
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            const Multivector b = random_in(kLieBlades, 4, rng);
            worst = std::max(worst, std::abs(b[e1234]));
            for (BladeMask ei : {e1, e2, e3})
                worst = std::max(worst,
                                 std::abs(mv_mul(b, Multivector::blade(4, ei))[e1234]));
        }
        // Field level: gauges in the even Cl_3 subalgebra close exactly, so
        // the pseudoscalar component stays identically zero on the grid.
        static constexpr std::array<BladeMask, 3> evenCl3 = {e12, e13, e23};
        for (int t = 0; t < 2; ++t) {
            MultivectorField u =
                generate_field(spec4, 4, salt(cfg.seed, 600 + std::uint64_t(t)), 0.3, bwc,
                               evenCl3);
            auto [q, qi] = field_exp(u);
            MultivectorField D = gauge_derivative(q, qi);
            const double ps =
                std::sqrt(kernels::sumsq(D.comp(e1234), D.npoints()) * spec4.cell_volume());
            worst = std::max(worst, ps);
        }
        rep.add("gauge_derivative_pseudoscalar_free", worst, 1e-10);
    }

    // Linearized operator: apply-then-invert is the identity on its domain.
    {
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            MultivectorField u =
                generate_field(spec4, 4, salt(cfg.seed, 700 + std::uint64_t(t)), 1.0, bw,
                               kE6E4Blades);
            auto [omega, g] = linearized_gauge(u, 4);
            MultivectorField back = invert_linearized(omega, g, 4);
            worst = std::max(worst, rel(field_l2(field_sub(back, u)), field_l2(u)));
        }
        rep.add("linearized_roundtrip_d4", worst, 1e-10);
    }
    {
        static constexpr std::array<BladeMask, 6> dom3 = {e1, e2, e3, e13, e23, e12};
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            MultivectorField u =
                generate_field(spec3, 3, salt(cfg.seed, 750 + std::uint64_t(t)), 1.0,
                               spec3.N / 3, dom3);
            auto [omega, g] = linearized_gauge(u, 3);
            MultivectorField back = invert_linearized(omega, g, 3);
            worst = std::max(worst, rel(field_l2(field_sub(back, u)), field_l2(u)));
        }
        rep.add("linearized_roundtrip_d3", worst, 1e-10);
    }
    {
        // Independent componentwise oracle for the d = 3 first-order slot.
        static constexpr std::array<BladeMask, 6> dom3 = {e1, e2, e3, e13, e23, e12};
        MultivectorField u = generate_field(spec3, 3, salt(cfg.seed, 800), 1.0, spec3.N / 3,
                                            dom3);
        auto [omega, g] = linearized_gauge(u, 3);
        (void)omega;
        MultivectorField v0(spec3, 0), v1(spec3, 0), v2(spec3, 0), v3(spec3, 0);
        const std::size_t bytes = u.npoints() * sizeof(double);
        std::memcpy(v0.comp(0), u.comp(e3), bytes);
        std::memcpy(v1.comp(0), u.comp(e13), bytes);
        std::memcpy(v2.comp(0), u.comp(e23), bytes);
        std::memcpy(v3.comp(0), u.comp(e12), bytes);
        auto dx = [](const MultivectorField& f, int a) { return partial_derivative(f, a); };
        MultivectorField g0 = field_sub(field_sub(dx(v0, 0), dx(v1, 1)), dx(v2, 2));
        MultivectorField g1 = field_sub(field_add(dx(v1, 0), dx(v0, 1)), dx(v3, 2));
        MultivectorField g2 = field_add(field_add(dx(v2, 0), dx(v0, 2)), dx(v3, 1));
        MultivectorField g3 = field_add(field_sub(dx(v3, 0), dx(v2, 1)), dx(v1, 2));
        MultivectorField ref(spec3, 3);
        std::memcpy(ref.comp(0), g0.comp(0), bytes);
        std::memcpy(ref.comp(1), g1.comp(0), bytes);
        std::memcpy(ref.comp(2), g2.comp(0), bytes);
        std::memcpy(ref.comp(3), g3.comp(0), bytes);
        rep.add("linearized_d3_component_oracle",
                rel(field_l2(field_sub(g, ref)), field_l2(ref)), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// symbols
// ---------------------------------------------------------------------------

void run_symbols(const ExperimentConfig& cfg, ExperimentReport& rep) {
    std::mt19937_64 rng(salt(cfg.seed, 2));
    std::uniform_real_distribution<double> uni(-3.0, 3.0);

    double det4 = 0, det3 = 0, ortho = 0, match = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::array<double, 4> xi{uni(rng), uni(rng), uni(rng), uni(rng)};
        const double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
        const double n2s = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];

        const SymbolMatrix s4 = symbol(xi, SymbolVariant::dirac4);
        det4 = std::max(det4, std::abs(s4.det - n2 * n2) / (1.0 + n2 * n2));

        const SymbolMatrix s3 = symbol(xi, SymbolVariant::rf3);
        det3 = std::max(det3, std::abs(s3.det - n2s * n2s) / (1.0 + n2s * n2s));

        const SymbolMatrix s3ref = symbol({xi[0], xi[1], xi[2], 0.0}, SymbolVariant::dirac4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                match = std::max(match, std::abs(s3.mat[r][c] - s3ref.mat[r][c]));

        // sigma^T sigma = |xi|^2 I: the symbol is a similarity matrix.
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double dot = 0;
                for (int k = 0; k < 4; ++k) dot += s4.mat[k][r] * s4.mat[k][c];
                const double want = r == c ? n2 : 0.0;
                ortho = std::max(ortho, std::abs(dot - want) / (1.0 + n2));
            }
    }
    rep.add("symbol_det_dirac4", det4, 1e-12);
    rep.add("symbol_det_rf3", det3, 1e-12);
    rep.add("symbol_rf3_matches_dirac4_at_xi3_0", match, 0.0);
    rep.add("symbol_orthogonality", ortho, 1e-12);

    {
        const SymbolMatrix s = symbol({1.0, 0.0, 0.0, 0.0}, SymbolVariant::dirac4);
        double dev = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) dev = std::max(dev, std::abs(s.mat[r][c] - (r == c)));
        rep.add("symbol_identity_at_unit_time", dev, 0.0);
    }
    {
        const SymbolMatrix s = symbol({1.0, 2.0, 3.0, 4.0}, SymbolVariant::dirac4);
        rep.add("symbol_det_example", std::abs(s.det - 900.0), 1e-9);
    }
}

// ---------------------------------------------------------------------------
// gauge-solve
// ---------------------------------------------------------------------------

void run_gauge_solve(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);
    const int bw = spec4.N / 3;

    double res = 0, curl = 0;
    for (int t = 0; t < 100; ++t) {
        GaugePotential beta = make_beta(spec4, salt(cfg.seed, 1000 + std::uint64_t(t)),
                                        cfg.amplitude, bw);
        GaugeFieldSolution sol = solve_dv_beta(beta);
        res = std::max(res, sol.system_residual / (1.0 + beta.l2()));
        curl = std::max(curl, sol.curl_residual);
    }
    rep.add("solver_residual_rel", res, 1e-8);
    rep.add("solver_trivector_max", curl, 1e-10);

    {
        // Single-mode potential: beta^0 = cos x1 forces v^1 = -sin x1.
        GaugePotential beta{4, {}};
        beta.comp.push_back(trig_field(spec4, 1, false));
        for (int i = 1; i < 4; ++i) beta.comp.push_back(MultivectorField(spec4, 0));
        GaugeFieldSolution sol = solve_dv_beta(beta);
        double worst = field_l2(sol.v[0]);
        worst = std::max(worst,
                         field_l2(field_add(sol.v[1], trig_field(spec4, 1, true))));
        worst = std::max(worst, field_l2(sol.v[2]));
        worst = std::max(worst, field_l2(sol.v[3]));
        rep.add("solver_single_mode_example", worst, 1e-12);
    }
    {
        // A potential whose spatial part is not curl-free must be rejected.
        GaugePotential beta{4, {}};
        beta.comp.push_back(MultivectorField(spec4, 0));
        beta.comp.push_back(trig_field(spec4, 2, true));  // beta^1 = sin x2
        beta.comp.push_back(MultivectorField(spec4, 0));
        beta.comp.push_back(MultivectorField(spec4, 0));
        double flagged = 1.0;
        try {
            (void)solve_dv_beta(beta);
        } catch (const std::domain_error&) {
            flagged = 0.0;
        }
        rep.add("solver_rejects_non_curl_free", flagged, 0.5);
    }
    {
        // The closed-form path for gradient potentials matches the general one.
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            MultivectorField alpha =
                generate_scalar_field(spec4, salt(cfg.seed, 1200 + std::uint64_t(t)), 1.0, bw);
            auto [phi, sol1] = solve_lorenz_gauge(alpha);
            (void)phi;
            GaugePotential beta{4, {}};
            for (int a = 0; a < 4; ++a) beta.comp.push_back(partial_derivative(alpha, a));
            GaugeFieldSolution sol2 = solve_dv_beta(beta);
            for (int a = 0; a < 4; ++a)
                worst = std::max(worst, rel(field_l2(field_sub(sol1.v[std::size_t(a)],
                                                               sol2.v[std::size_t(a)])),
                                            beta.l2()));
        }
        rep.add("lorenz_agreement", worst, 1e-8);
    }
    {
        // A 3-D solve lifted along the extra axis matches the 4-D solve.
        const GridSpec spec3(3, spec4.N);
        GaugePotential b3 = make_beta(spec3, salt(cfg.seed, 1300), cfg.amplitude, spec3.N / 3);
        GaugeFieldSolution s3 = solve_dv_beta(b3);
        GaugePotential b4{4, {}};
        for (int a = 0; a < 3; ++a) b4.comp.push_back(lift_to_4d(b3.comp[std::size_t(a)], spec4));
        b4.comp.push_back(MultivectorField(spec4, 0));
        GaugeFieldSolution s4 = solve_dv_beta(b4);
        double worst = field_l2(s4.v[3]);
        for (int a = 0; a < 3; ++a)
            worst = std::max(worst, field_l2(field_sub(s4.v[std::size_t(a)],
                                                       lift_to_4d(s3.v[std::size_t(a)], spec4))));
        rep.add("solver_d3_d4_coherence", worst, 1e-10);
    }
}

// ---------------------------------------------------------------------------
// lorenz
// ---------------------------------------------------------------------------

void run_lorenz(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);
    const int bw = spec4.N / 3;

    {
        // alpha = sin x0: phi = 2 cos x0, v^0 = sin x0, spatial part zero.
        MultivectorField alpha = trig_field(spec4, 0, true);
        auto [phi, sol] = solve_lorenz_gauge(alpha);
        double worst = field_l2(field_sub(phi, field_scale(trig_field(spec4, 0, false), 2.0)));
        worst = std::max(worst, field_l2(field_sub(sol.v[0], trig_field(spec4, 0, true))));
        for (int i = 1; i < 4; ++i) worst = std::max(worst, field_l2(sol.v[std::size_t(i)]));
        rep.add("lorenz_time_mode_example", worst, 1e-12);
    }
    {
        // alpha = sin x1 has no time dependence: phi = 0, v^0 = -alpha.
        MultivectorField alpha = trig_field(spec4, 1, true);
        auto [phi, sol] = solve_lorenz_gauge(alpha);
        double worst = field_l2(phi);
        worst = std::max(worst,
                         field_l2(field_add(sol.v[0], trig_field(spec4, 1, true))));
        for (int i = 1; i < 4; ++i) worst = std::max(worst, field_l2(sol.v[std::size_t(i)]));
        rep.add("lorenz_space_mode_example", worst, 1e-12);
    }
    {
        double res = 0, curl = 0;
        for (int t = 0; t < 10; ++t) {
            MultivectorField alpha =
                generate_scalar_field(spec4, salt(cfg.seed, 1400 + std::uint64_t(t)),
                                      cfg.amplitude, bw);
            auto [phi, sol] = solve_lorenz_gauge(alpha);
            (void)phi;
            res = std::max(res, sol.system_residual / (1.0 + field_l2(alpha)));
            curl = std::max(curl, sol.curl_residual);
        }
        rep.add("lorenz_system_residual", res, 1e-8);
        rep.add("lorenz_trivector_max", curl, 1e-10);
    }
    {
        // Electromagnetic bookkeeping: residuals vanish on consistent data
        // and on the zero configuration.
        MultivectorField zero(spec4, 0);
        std::array<MultivectorField, 3> Z{zero, zero, zero};
        auto r0 = maxwell_residual(Z, zero, Z, Z, zero);
        rep.add("maxwell_zero_fields", std::max({r0[0], r0[1], r0[2]}), 1e-15);

        std::array<MultivectorField, 3> A{
            generate_scalar_field(spec4, salt(cfg.seed, 1500), 1.0, bw),
            generate_scalar_field(spec4, salt(cfg.seed, 1501), 1.0, bw),
            generate_scalar_field(spec4, salt(cfg.seed, 1502), 1.0, bw)};
        MultivectorField phi = generate_scalar_field(spec4, salt(cfg.seed, 1503), 1.0, bw);
        std::array<MultivectorField, 3> B{zero, zero, zero};
        std::array<MultivectorField, 3> E{zero, zero, zero};
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            B[std::size_t(i)] = field_sub(partial_derivative(A[std::size_t(k)], j + 1),
                                          partial_derivative(A[std::size_t(j)], k + 1));
            E[std::size_t(i)] = field_scale(field_add(partial_derivative(A[std::size_t(i)], 0),
                                                      partial_derivative(phi, i + 1)),
                                            -1.0);
        }
        MultivectorField beta0 = partial_derivative(phi, 0);
        for (int i = 0; i < 3; ++i)
            beta0 = field_add(beta0, partial_derivative(A[std::size_t(i)], i + 1));
        auto r = maxwell_residual(A, phi, B, E, beta0);
        rep.add("maxwell_consistency", std::max({r[0], r[1], r[2]}), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// hodge (linear)
// ---------------------------------------------------------------------------

DifferentialForm random_form(const GridSpec& spec, int k, std::uint64_t seed, int bw) {
    DifferentialForm w(spec, k, 0);
    for (int i = 0; i < w.ncomp(); ++i)
        w.comp(i) = generate_scalar_field(spec, salt(seed, std::uint64_t(i)), 1.0, bw);
    return w;
}

void run_hodge(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);
    const int bw = spec4.N / 3;

    {
        double worst = 0;
        for (int k = 0; k < 3; ++k) {
            DifferentialForm w = random_form(spec4, k, salt(cfg.seed, 2000 + std::uint64_t(k)), bw);
            worst = std::max(worst, form_l2(exterior_d(exterior_d(w))));
        }
        rep.add("d_squared_zero", worst, 1e-10);
    }
    {
        double worst = 0;
        for (int k = 2; k <= 4; ++k) {
            DifferentialForm w = random_form(spec4, k, salt(cfg.seed, 2010 + std::uint64_t(k)), bw);
            worst = std::max(worst, form_l2(codifferential(codifferential(w))));
        }
        rep.add("dstar_squared_zero", worst, 1e-10);
    }
    {
        // ** = (-1)^{k(d-k)} on k-forms (exact sign bookkeeping).
        double worst = 0;
        for (int k = 0; k <= 4; ++k) {
            DifferentialForm w = random_form(spec4, k, salt(cfg.seed, 2020 + std::uint64_t(k)), bw);
            const double sgn = (k * (4 - k)) % 2 == 0 ? 1.0 : -1.0;
            worst = std::max(worst,
                             form_l2(form_sub(hodge_star(hodge_star(w)), form_scale(w, sgn))));
        }
        rep.add("star_star_sign", worst, 0.0);
    }
    {
        double worst = 0;
        for (int k = 1; k <= 3; ++k) {
            DifferentialForm w = random_form(spec4, k, salt(cfg.seed, 2030 + std::uint64_t(k)), bw);
            DifferentialForm lhs = exterior_d(codifferential(w));
            lhs = form_add(lhs, codifferential(exterior_d(w)));
            DifferentialForm lap = w;
            for (int i = 0; i < lap.ncomp(); ++i) lap.comp(i) = laplacian(w.comp(i));
            worst = std::max(worst, rel(form_l2(form_add(lhs, lap)), form_l2(lap)));
        }
        rep.add("hodge_laplacian_identity", worst, 1e-10);
    }
    {
        // d* on 1-forms is minus the divergence.
        DifferentialForm w = random_form(spec4, 1, salt(cfg.seed, 2040), bw);
        MultivectorField div(spec4, 0);
        for (int a = 0; a < 4; ++a)
            div = field_add(div, partial_derivative(w.comp(a), a));
        rep.add("codiff_1form_formula",
                field_l2(field_add(codifferential(w).comp(0), div)), 1e-12);
    }
    {
        // d* on 2-forms, componentwise reference expression.
        DifferentialForm xi = random_form(spec4, 2, salt(cfg.seed, 2050), bw);
        auto c = [&xi](int a, int b) -> const MultivectorField& {
            return xi.comp(xi.index_of({a, b}));
        };
        auto dx = [](const MultivectorField& f, int a) { return partial_derivative(f, a); };
        std::array<MultivectorField, 4> alpha{
            field_add(field_add(dx(c(0, 1), 1), dx(c(0, 2), 2)), dx(c(0, 3), 3)),
            field_add(field_sub(dx(c(1, 2), 2), dx(c(0, 1), 0)), dx(c(1, 3), 3)),
            field_sub(dx(c(2, 3), 3), field_add(dx(c(0, 2), 0), dx(c(1, 2), 1))),
            field_scale(field_add(field_add(dx(c(0, 3), 0), dx(c(1, 3), 1)), dx(c(2, 3), 2)),
                        -1.0)};
        DifferentialForm ref(spec4, 1, 0);
        for (int a = 0; a < 4; ++a) ref.comp(a) = alpha[std::size_t(a)];
        rep.add("codiff_2form_formula", form_l2(form_sub(codifferential(xi), ref)), 1e-12);
    }
    {
        double rec = 0, dy = 0;
        for (int t = 0; t < 5; ++t) {
            DifferentialForm w = random_form(spec4, 1, salt(cfg.seed, 2100 + std::uint64_t(t)), bw);
            HodgeSplit split = linear_hodge_decompose(w);
            rec = std::max(rec, rel(split.reconstruction_residual, form_l2(w)));
            dy = std::max(dy, split.dY_residual);
        }
        rep.add("linear_reconstruction", rec, 1e-8);
        rep.add("linear_dY_residual", dy, 1e-10);
    }
    {
        // Pure gradient input: the scalar potential is recovered exactly.
        MultivectorField s = trig_field(spec4, 1, true);
        HodgeSplit split = linear_hodge_decompose(gradient_form(s));
        double worst = field_l2(field_sub(split.gamma, s));
        worst = std::max(worst, form_l2(split.Y));
        for (const Multivector& h : split.harmonic) worst = std::max(worst, h.norm());
        rep.add("linear_gradient_input", worst, 1e-12);
    }
    {
        // Constant input is purely harmonic.
        DifferentialForm w(spec4, 1, 0);
        w.comp(0) = constant_field(spec4, 0, 0, 0.7);
        HodgeSplit split = linear_hodge_decompose(w);
        double worst = field_l2(split.gamma);
        worst = std::max(worst, form_l2(split.Y));
        worst = std::max(worst, std::abs(split.harmonic[0][0] - 0.7));
        for (int a = 1; a < 4; ++a)
            worst = std::max(worst, split.harmonic[std::size_t(a)].norm());
        // Accumulating the mean over all grid points costs ~ n * eps.
        rep.add("linear_constant_harmonic", worst, 1e-11);
    }
    {
        MultivectorField a = generate_scalar_field(spec4, salt(cfg.seed, 2200), 1.0, bw);
        MultivectorField b = generate_scalar_field(spec4, salt(cfg.seed, 2201), 1.0, bw);
        DifferentialForm da = gradient_form(a), db = gradient_form(b);
        DifferentialForm anti = form_add(wedge_1forms(da, db), wedge_1forms(db, da));
        double worst = form_l2(anti);
        worst = std::max(worst, form_l2(wedge_1forms(da, da)));
        rep.add("wedge_antisymmetry", worst, 0.0);
    }
}

// ---------------------------------------------------------------------------
// nonlinear-hodge
// ---------------------------------------------------------------------------

DifferentialForm random_cl4_1form(const GridSpec& spec, std::uint64_t seed, int bw) {
    DifferentialForm F(spec, 1, 4);
    for (int a = 0; a < 4; ++a)
        F.comp(a) = generate_field(spec, 4, salt(seed, std::uint64_t(a)), 1.0, bw, masks_all(4));
    return F;
}

void run_nonlinear_hodge(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);
    const int bwc = spec4.N / 4;
    std::vector<std::string> iter_rows;

    {
        // Identity gauge: the problem is linear and solved in one sweep.
        MultivectorField one = constant_field(spec4, 4, 0, 1.0);
        DifferentialForm F = DifferentialForm(spec4, 1, 4);
        MultivectorField s(spec4, 4);
        MultivectorField st = trig_field(spec4, 1, true);
        std::memcpy(s.comp(0), st.comp(0), st.npoints() * sizeof(double));
        F = gradient_form(s);
        NonlinearHodge nh = nonlinear_hodge_decompose(F, one, one);
        double worst = nh.residual / (1.0 + form_l2(F));
        worst = std::max(worst, field_l2(field_sub(nh.A, s)));
        worst = std::max(worst, form_l2(nh.B));
        rep.add("nonlinear_identity_gauge", worst, 1e-10);
    }
    {
        double ratio = 0, resid = 0, dq = 0;
        for (int t = 0; t < 20; ++t) {
            auto [q, qi] = make_gauge(spec4, salt(cfg.seed, 3000 + std::uint64_t(t)), 0.05, bwc);
            DifferentialForm F = random_cl4_1form(spec4, salt(cfg.seed, 3100 + std::uint64_t(t)),
                                                  bwc);
            const double fnorm = form_l2(F);
            NonlinearHodge nh = nonlinear_hodge_decompose(F, q, qi);
            dq = std::max(dq, nh.dq_l4);
            resid = std::max(resid, nh.residual / (1.0 + fnorm));
            // Ratios are meaningful while the residual is above noise level.
            for (std::size_t i = 0; i + 1 < nh.history.size(); ++i)
                if (nh.history[i] > 1e-12 * fnorm)
                    ratio = std::max(ratio, nh.history[i + 1] / nh.history[i]);
            for (std::size_t i = 0; i < nh.history.size(); ++i)
                iter_rows.push_back(std::to_string(t) + "," + std::to_string(i) + "," +
                                    fmt(nh.history[i]));
        }
        rep.add("nonlinear_gauge_size", dq, 0.05);
        rep.add("nonlinear_contraction_ratio", ratio, 0.5);
        rep.add("nonlinear_residual_rel", resid, 1e-8);
    }
    {
        // A large sign-changing gauge (||dq||_L4 well above 1) makes the
        // quadratic form indefinite; the iteration diverges and this is
        // detected via the three-strikes ratio rule.
        MultivectorField q(spec4, 4);
        std::vector<int> x(4);
        for (std::size_t i = 0; i < q.npoints(); ++i) {
            spec4.coords(i, x.data());
            q.at(0, i) = 1.0 + 1.5 * std::sin(x[1] * spec4.h() + 0.37);
        }
        MultivectorField qi = field_inverse(q);
        DifferentialForm F = random_cl4_1form(spec4, salt(cfg.seed, 3201), bwc);
        double flagged = 1.0;
        try {
            (void)nonlinear_hodge_decompose(F, q, qi, 30);
        } catch (const std::runtime_error&) {
            flagged = 0.0;
        }
        rep.add("nonlinear_divergence_detected", flagged, 0.5);
    }
    {
        // Recover the auxiliary components from gauge-structured data.  The
        // gauge is a low-band polynomial q = e0 + w so that F = q (blade f)
        // stays inside the solver's Galerkin band and the pointwise identity
        // residuals are limited only by band-edge leakage, which scales as
        // ||w||^2 and sits far below the thresholds at this amplitude.
        double div = 0, bi = 0, dir = 0;
        for (int t = 0; t < 5; ++t) {
            MultivectorField q = generate_field(spec4, 4, salt(cfg.seed, 3300 + std::uint64_t(t)),
                                                1e-5, 1, masks_all(4));
            for (std::size_t i = 0; i < q.npoints(); ++i) q.at(0, i) += 1.0;
            MultivectorField qi = field_inverse(q);
            MultivectorField f = generate_field(spec4, 4, salt(cfg.seed, 3320 + std::uint64_t(t)),
                                                1.0, bwc, masks_all(4));
            DifferentialForm F(spec4, 1, 4);
            F.comp(0) = field_mul(q, f);
            for (int i = 1; i < 4; ++i)
                F.comp(i) = field_scale(
                    field_mul(q, blade_multiply(f, BladeMask(1u << (i - 1)), DiracSide::left)),
                    -1.0);
            NonlinearHodge nh = nonlinear_hodge_decompose(F, q, qi, 60, 1e-12);
            BComponents bc = recover_b_components(f, q, qi, nh);
            div = std::max(div, bc.div_residual);
            bi = std::max(bi, bc.bi_residual);
            dir = std::max(dir, bc.dirac_residual);
        }
        rep.add("b_divergence_free", div, 1e-8);
        rep.add("b_consistency", bi, 1e-6);
        rep.add("b_dirac_identity", dir, 1e-6);
    }
    write_csv(csv_base(cfg) + "_iterations.csv", "instance,iteration,residual", iter_rows);
}

// ---------------------------------------------------------------------------
// compensation
// ---------------------------------------------------------------------------

void run_compensation(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const double p = 2.0;
    const int bw = 5;  // shared band so both grids sample the same field
    std::vector<std::string> rows;

    {
        const GridSpec spec(4, 16);
        MultivectorField a = generate_scalar_field(spec, salt(cfg.seed, 4000), 1.0, bw);
        CompensationRecord r = compensation_ratio(a, a, p);
        rep.add("compensation_self_wedge_zero", r.grad_u_lp, 0.0);
    }
    {
        const GridSpec spec(4, 16);
        MultivectorField a = generate_scalar_field(spec, salt(cfg.seed, 4001), 1.0, bw);
        MultivectorField b = generate_scalar_field(spec, salt(cfg.seed, 4002), 1.0, bw);
        CompensationRecord r1 = compensation_ratio(a, b, p);
        CompensationRecord r2 = compensation_ratio(field_scale(a, 2.0), field_scale(b, 3.0), p);
        rep.add("compensation_scaling_invariance",
                std::abs(r1.ratio - r2.ratio) / r1.ratio, 1e-10);
    }

    double worst_dev = 0, max_ratio = 0;
    for (int t = 0; t < 100; ++t) {
        const std::uint64_t sa = salt(cfg.seed, 4100 + std::uint64_t(t));
        const std::uint64_t sb = salt(cfg.seed, 4300 + std::uint64_t(t));
        double r16 = 0;
        for (int N : {16, 24}) {
            const GridSpec spec(4, N);
            MultivectorField a = generate_scalar_field(spec, sa, cfg.amplitude, bw);
            MultivectorField b = generate_scalar_field(spec, sb, cfg.amplitude, bw);
            CompensationRecord r = compensation_ratio(a, b, p);
            r.seed = sa;
            max_ratio = std::max(max_ratio, r.ratio);
            rows.push_back(std::to_string(t) + "," + std::to_string(N) + "," + fmt(r.p) + "," +
                           fmt(r.grad_u_lp) + "," + fmt(r.da_weak) + "," + fmt(r.db_lp) + "," +
                           fmt(r.ratio));
            if (N == 16)
                r16 = r.ratio;
            else
                worst_dev = std::max(worst_dev, std::abs(r.ratio - r16) / r16);
        }
    }
    rep.add("compensation_grid_stability", worst_dev, 0.2);
    rep.add("compensation_ratio_bounded", max_ratio, 10.0);
    write_csv(csv_base(cfg) + "_compensation.csv",
              "instance,N,p,grad_u_lp,da_weak,db_lp,ratio", rows);
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

void run_kernel(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const GridSpec spec4(4, cfg.d == 4 ? cfg.resolved_n() : 16);

    auto zero_beta = [&spec4]() {
        GaugePotential beta{4, {}};
        for (int a = 0; a < 4; ++a) beta.comp.push_back(MultivectorField(spec4, 0));
        return beta;
    };

    {
        // K = 0, beta = 0: the operator annihilates the constant block.
        AssembledOperator op = assemble_operator(zero_beta(), 0);
        double mx = 0;
        for (double v : op.mat) mx = std::max(mx, std::abs(v));
        rep.add("kernel_constant_block_zero", mx, 0.0);
    }
    {
        // K = 1, beta = 0: kernel is exactly the constants, gap at 1.
        AssembledOperator op = assemble_operator(zero_beta(), 1);
        KernelDiagnostic kd = kernel_diagnostic(op);
        rep.add("kernel_dim_free_operator", std::abs(double(kd.kernel_dim) - 16.0), 0.0);
        rep.add("kernel_spectral_gap",
                std::max(0.0, 1.0 - kd.smallest_nonzero), 1e-10);
    }
    {
        // Constant beta^0 shifts the whole spectrum off zero by |beta^0|.
        GaugePotential beta = zero_beta();
        beta.comp[0] = constant_field(spec4, 0, 0, 0.01);
        AssembledOperator op = assemble_operator(beta, 0);
        KernelDiagnostic kd = kernel_diagnostic(op);
        double worst = std::abs(double(kd.kernel_dim));
        worst = std::max(worst, std::abs(kd.smallest_nonzero - 0.01));
        rep.add("kernel_constant_shift", worst, 1e-8);
    }
}

}  // namespace

ExperimentReport run_suite(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.command = cfg.command;
    rep.config = cfg;

    const std::string& cmd = cfg.command;
    const bool all = cmd == "all";
    bool known = all;
    if (all || cmd == "identities") run_identities(cfg, rep), known = true;
    if (all || cmd == "symbols") run_symbols(cfg, rep), known = true;
    if (all || cmd == "gauge-solve") run_gauge_solve(cfg, rep), known = true;
    if (all || cmd == "lorenz") run_lorenz(cfg, rep), known = true;
    if (all || cmd == "hodge") run_hodge(cfg, rep), known = true;
    if (all || cmd == "nonlinear-hodge") run_nonlinear_hodge(cfg, rep), known = true;
    if (all || cmd == "compensation") run_compensation(cfg, rep), known = true;
    if (all || cmd == "kernel") run_kernel(cfg, rep), known = true;
    if (!known) throw std::invalid_argument("unknown command: " + cmd);
    return rep;
}

}  // namespace cliffpde
