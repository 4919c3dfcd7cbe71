#pragma once

#include "hcp/linear_system.hpp"

namespace hcp {

struct SolverOptions {
    double eps_feas = 1e-7;    // phase-1 objective / residual acceptance
    double eps_pivot = 1e-9;   // minimum pivot magnitude
    double eps_opt = 1e-9;     // reduced-cost threshold
    long max_iterations = 0;   // 0 = scaled default
    int refactor_every = 64;
    long stall_window = 0;     // 0 = scaled default; then Bland's rule
    bool exact_certificates = true;   // Empty only with an exact certificate
    bool rational_escalation = true;  // retry in exact arithmetic on trouble
    bool force_rational = false;      // skip the floating-point pass entirely
};

/// Decides feasibility of {x : rows hold, 0 <= x <= upper} by phase-1
/// primal simplex. Deterministic for identical input. Empty verdicts are
/// backed by a certificate that passes verify_certificate exactly.
FeasibilityVerdict solve_feasibility(const LinearSystem& sys,
                                     const SolverOptions& opts = {});

}  // namespace hcp
