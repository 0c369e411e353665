#ifndef CLIFFPDE_SUBSPACES_HPP
#define CLIFFPDE_SUBSPACES_HPP

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliffpde/multivector.hpp"

namespace cliffpde {

// Named blade masks used throughout (Cl4 conventions; Cl3 reuses the low bits).
namespace blade {
inline constexpr BladeMask e0 = 0;
inline constexpr BladeMask e1 = 1, e2 = 2, e3 = 4, e4 = 8;
inline constexpr BladeMask e12 = 3, e13 = 5, e23 = 6;
inline constexpr BladeMask e14 = 9, e24 = 10, e34 = 12;
inline constexpr BladeMask e123 = 7, e124 = 11, e134 = 13, e234 = 14;
inline constexpr BladeMask e1234 = 15;
}  // namespace blade

enum class SubspaceTag { E4, E6, E3, V1, V2, V3 };

// Blade lists backing each named subspace.  E3 is listed in the cyclic order
// e2e3e4, e3e1e4, e1e2e4 used by the P map; note e3e1e4 = -e1e3e4 in the
// canonical (increasing-index) basis, so the stored mask is e134.
inline std::span<const BladeMask> subspace_blades(SubspaceTag tag) {
    static constexpr std::array<BladeMask, 4> E4{blade::e4, blade::e14, blade::e24, blade::e34};
    static constexpr std::array<BladeMask, 6> E6{blade::e1, blade::e2, blade::e3,
                                                 blade::e12, blade::e13, blade::e23};
    static constexpr std::array<BladeMask, 3> E3{blade::e234, blade::e134, blade::e124};
    static constexpr std::array<BladeMask, 1> V1{blade::e12};
    static constexpr std::array<BladeMask, 2> V2{blade::e1, blade::e2};
    static constexpr std::array<BladeMask, 3> V3{blade::e3, blade::e13, blade::e23};
    switch (tag) {
        case SubspaceTag::E4: return E4;
        case SubspaceTag::E6: return E6;
        case SubspaceTag::E3: return E3;
        case SubspaceTag::V1: return V1;
        case SubspaceTag::V2: return V2;
        case SubspaceTag::V3: return V3;
    }
    throw std::invalid_argument("unknown subspace tag");
}

// Minimum algebra dimension a tag makes sense in.
inline int subspace_min_dim(SubspaceTag tag) {
    switch (tag) {
        case SubspaceTag::E4:
        case SubspaceTag::E6:
        case SubspaceTag::E3: return 4;
        default: return 3;
    }
}

inline Multivector subspace_project(const Multivector& a, SubspaceTag tag) {
    if (a.dim() < subspace_min_dim(tag))
        throw std::invalid_argument("subspace tag incompatible with algebra dimension");
    Multivector r(a.dim());
    for (BladeMask mask : subspace_blades(tag)) r[mask] = a[mask];
    return r;
}

inline Multivector subspace_project(const Multivector& a, std::span<const BladeMask> blades) {
    Multivector r(a.dim());
    for (BladeMask mask : blades) r[mask] = a[mask];
    return r;
}

inline bool in_subspace(const Multivector& a, std::span<const BladeMask> blades, double tol) {
    Multivector rest = a;
    for (BladeMask mask : blades) rest[mask] = 0;
    return rest.norm() <= tol;
}

// P: E3 -> E4, sending e_{k+1}e_{k-1}e_4 to e_k e_4 with indices cyclic in
// {1,2,3}.  In canonical coordinates: the e2e3e4 coefficient feeds +e1e4, the
// e1e3e4 coefficient feeds -e2e4 (because e3e1e4 = -e1e3e4), and the e1e2e4
// coefficient feeds +e3e4.
inline Multivector p_map(const Multivector& a, double tol = 1e-12) {
    if (a.dim() < 4) throw std::invalid_argument("p_map requires Cl_4");
    if (!in_subspace(a, subspace_blades(SubspaceTag::E3), tol))
        throw std::domain_error("p_map input must lie in E3");
    Multivector r(a.dim());
    r[blade::e14] = a[blade::e234];
    r[blade::e24] = -a[blade::e134];
    r[blade::e34] = a[blade::e124];
    return r;
}

// Quaternion identification of E4: e4 -> 1, e1e4 -> i, e2e4 -> j, e3e4 -> k.
// Quaternions themselves are represented as elements of Cl_2 via 1 -> e0,
// i -> e1, j -> e2, k -> e1e2 (so quaternion products are Clifford products).
inline std::array<double, 4> quaternion_iso(const Multivector& a, double tol = 1e-12) {
    if (a.dim() < 4) throw std::invalid_argument("quaternion_iso requires Cl_4");
    if (!in_subspace(a, subspace_blades(SubspaceTag::E4), tol))
        throw std::domain_error("quaternion_iso input must lie in E4");
    return {a[blade::e4], a[blade::e14], a[blade::e24], a[blade::e34]};
}

inline Multivector quaternion_iso_inverse(const std::array<double, 4>& q, int m = 4) {
    Multivector r(m);
    r[blade::e4] = q[0];
    r[blade::e14] = q[1];
    r[blade::e24] = q[2];
    r[blade::e34] = q[3];
    return r;
}

inline Multivector quat_mv(const std::array<double, 4>& q) {
    Multivector r(2);
    r[0] = q[0];
    r[1] = q[1];
    r[2] = q[2];
    r[3] = q[3];
    return r;
}

// f1 + f2 e_m under Cl_m = Cl_{m-1} + Cl_{m-1} e_m.  e_m carries the top bit,
// so appending it to a reduced product needs no reordering sign.
inline Multivector pair_to_single(const Multivector& f1, const Multivector& f2, int m) {
    f1.require_same(f2);
    if (f1.dim() >= m) {
        // Inputs may be handed over in the target algebra as long as they do
        // not use e_m.
        const BladeMask hi = BladeMask(1u << (m - 1));
        for (std::size_t i = 0; i < f1.size(); ++i)
            if ((i & hi) && (f1[BladeMask(i)] != 0.0 || f2[BladeMask(i)] != 0.0))
                throw std::domain_error("pair_to_single inputs must not use e_m");
    }
    Multivector r(m);
    const BladeMask hi = BladeMask(1u << (m - 1));
    for (std::size_t i = 0; i < f1.size(); ++i) {
        if (i & hi) continue;
        r[BladeMask(i)] += f1[BladeMask(i)];
        r[BladeMask(i | hi)] += f2[BladeMask(i)];
    }
    return r;
}

inline std::pair<Multivector, Multivector> single_to_pair(const Multivector& g) {
    const int m = g.dim();
    if (m < 1) throw std::invalid_argument("single_to_pair requires m >= 1");
    const BladeMask hi = BladeMask(1u << (m - 1));
    Multivector f1(m - 1), f2(m - 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i & hi)
            f2[BladeMask(i & ~hi)] = g[BladeMask(i)];
        else
            f1[BladeMask(i)] = g[BladeMask(i)];
    }
    return {f1, f2};
}

struct GaugeElement {
    Multivector value;
    Multivector inverse;
};

// exp by power series, summed to machine convergence.
inline Multivector mv_exp_series(const Multivector& a, int max_terms = 200) {
    Multivector sum = Multivector::scalar(a.dim(), 1.0);
    Multivector term = sum;
    for (int n = 1; n <= max_terms; ++n) {
        term = mv_mul(term, a);
        term *= 1.0 / n;
        sum += term;
        if (term.norm() <= 1e-18 * (1.0 + sum.norm())) return sum;
    }
    throw std::runtime_error("mv_exp: power series did not converge in 200 terms");
}

inline GaugeElement mv_exp(const Multivector& a) {
    GaugeElement g{mv_exp_series(a), mv_exp_series(a * -1.0)};
    Multivector check = mv_mul(g.value, g.inverse);
    check[0] -= 1.0;
    if (check.norm() > 1e-12)
        throw std::runtime_error("mv_exp: value * inverse deviates from identity");
    return g;
}

}  // namespace cliffpde

#endif
