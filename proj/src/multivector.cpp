#include "cliffpde/multivector.hpp"

#include <cmath>

namespace cliffpde {

double Multivector::norm() const { return std::sqrt(norm2()); }

Multivector mv_mul(const Multivector& a, const Multivector& b) {
    a.require_same(b);
    const int m = a.dim();
    Multivector r(m);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double ca = a[BladeMask(i)];
        if (ca == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double cb = b[BladeMask(j)];
            if (cb == 0.0) continue;
            const int s = blade_product_sign(BladeMask(i), BladeMask(j));
            r[BladeMask(i ^ j)] += s * ca * cb;
        }
    }
    return r;
}

Multivector grade_involution(const Multivector& a) {
    Multivector r(a.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double c = a[BladeMask(i)];
        r[BladeMask(i)] = (popcount16(BladeMask(i)) & 1) ? -c : c;
    }
    return r;
}

double mv_dot(const Multivector& a, const Multivector& b) {
    a.require_same(b);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[BladeMask(i)] * b[BladeMask(i)];
    return s;
}

}  // namespace cliffpde
