#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relboltz {

struct SuiteResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// The fast invariant suites: conservation and collision invariance for both
// frames, the GS Jacobian cross-check, the Lorentz constructors, the
// dispersion identity, the Juttner checks, the component decay slopes, the
// cut-off geometry and the discrete moment-conservation tests. Solver-scale
// verifications live in the acceptance suite and the limit/solve commands.
std::vector<SuiteResult> run_fast_suites(std::uint64_t seed);

} // namespace relboltz
