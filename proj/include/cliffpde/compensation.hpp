#ifndef CLIFFPDE_COMPENSATION_HPP
#define CLIFFPDE_COMPENSATION_HPP

#include <cstdint>

#include "cliffpde/hodge.hpp"

namespace cliffpde {

struct CompensationRecord {
    int N = 0;
    std::uint64_t seed = 0;
    double p = 2.0;
    double grad_u_lp = 0;   // ||grad u||_{L^p}, -Lap u = (da ^ db) componentwise
    double da_weak = 0;     // ||da||_{L^{d,inf}}
    double db_lp = 0;       // ||db||_{L^p}
    double ratio = 0;       // grad_u_lp / (da_weak * db_lp)
};

/// Componentwise wedge of two real 1-forms:
/// (da ^ db)_{ij} = da_i db_j - da_j db_i.
DifferentialForm wedge_1forms(const DifferentialForm& da, const DifferentialForm& db);

/// Measures the compensation ratio for scalar fields a, b:
/// solves -Lap u = (da ^ db)_{ij} per component and reports
/// ||grad u||_{L^p} / (||da||_{L^{d,inf}} ||db||_{L^p}).
CompensationRecord compensation_ratio(const MultivectorField& a, const MultivectorField& b,
                                      double p);

}  // namespace cliffpde

#endif
