#ifndef CLIFFPDE_SYMBOL_HPP
#define CLIFFPDE_SYMBOL_HPP

#include <array>

namespace cliffpde {

enum class SymbolVariant { dirac4, rf3 };

/// 4x4 principal symbol of the projected first-order operator at frequency
/// xi, with det(sigma) = |xi|^4 (dirac4) or (xi0^2+xi1^2+xi2^2)^2 (rf3, which
/// is the dirac4 symbol at xi3 = 0).
struct SymbolMatrix {
    std::array<std::array<double, 4>, 4> mat{};
    double det = 0;
};

SymbolMatrix symbol(const std::array<double, 4>& xi, SymbolVariant variant);

}  // namespace cliffpde

#endif
