#ifndef CLIFFPDE_OPERATOR_ASSEMBLY_HPP
#define CLIFFPDE_OPERATOR_ASSEMBLY_HPP

#include <vector>

#include "cliffpde/gauge_solver.hpp"

namespace cliffpde {

/// Galerkin truncation of f -> dL f - (beta e4) f on the span of Fourier
/// modes |xi|_inf <= K of Cl_4-valued fields on T^4, realified (each complex
/// entry becomes a 2x2 block), as a dense row-major matrix.
/// Complex dimension 16 (2K+1)^4 is capped at 10^4.
struct AssembledOperator {
    int dim_complex = 0;        // 16 (2K+1)^4
    std::vector<double> mat;    // (2 dim)^2 row-major real entries
};

AssembledOperator assemble_operator(const GaugePotential& beta, int K);

struct KernelDiagnostic {
    std::vector<double> singular_values;  // descending, of the real matrix
    int kernel_dim_real = 0;              // count below threshold
    int kernel_dim = 0;                   // halved (complex count)
    double smallest_nonzero = 0;
};

KernelDiagnostic kernel_diagnostic(const AssembledOperator& op, double threshold = 1e-8);

}  // namespace cliffpde

#endif
