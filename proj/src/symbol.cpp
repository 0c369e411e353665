#include "cliffpde/symbol.hpp"

namespace cliffpde {

namespace {

double det4(const std::array<std::array<double, 4>, 4>& a) {
    double det = 0;
    for (int c = 0; c < 4; ++c) {
        // 3x3 minor of row 0, column c.
        int cols[3], k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != c) cols[k++] = j;
        const double m = a[1][cols[0]] * (a[2][cols[1]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[1]]) -
                         a[1][cols[1]] * (a[2][cols[0]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[0]]) +
                         a[1][cols[2]] * (a[2][cols[0]] * a[3][cols[1]] - a[2][cols[1]] * a[3][cols[0]]);
        det += ((c % 2 == 0) ? 1.0 : -1.0) * a[0][c] * m;
    }
    return det;
}

}  // namespace

SymbolMatrix symbol(const std::array<double, 4>& xi_in, SymbolVariant variant) {
    std::array<double, 4> xi = xi_in;
    if (variant == SymbolVariant::rf3) xi[3] = 0.0;
    SymbolMatrix s;
    s.mat = {{{xi[0], -xi[1], -xi[2], -xi[3]},
              {xi[1], xi[0], xi[3], -xi[2]},
              {xi[2], -xi[3], xi[0], xi[1]},
              {xi[3], xi[2], -xi[1], xi[0]}}};
    s.det = det4(s.mat);
    return s;
}

}  // namespace cliffpde
