#ifndef CLIFFPDE_SUITES_HPP
#define CLIFFPDE_SUITES_HPP

#include "cliffpde/report.hpp"

namespace cliffpde {

/// Executes the named verification suite and returns its report.  Valid
/// commands: identities, symbols, gauge-solve, lorenz, hodge,
/// nonlinear-hodge, compensation, kernel, all.  CSV side files are written
/// next to the configured report path.
ExperimentReport run_suite(const ExperimentConfig& cfg);

}  // namespace cliffpde

#endif
