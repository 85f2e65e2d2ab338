#pragma once

#include "frontera/classify.hpp"
#include "frontera/dynamics.hpp"
#include "frontera/run_config.hpp"

#include <array>
#include <string>
#include <vector>

namespace frontera {

/// One of the four ordering relations u <= u_upper, v >= v_upper,
/// g >= g_upper, h <= h_upper. Gaps are violation magnitudes (>= 0).
struct OrderRelation
{
    std::string name;
    double      worst_gap  = 0.0;
    double      worst_time = 0.0;
    bool        passed     = true;
};

struct OrderReport
{
    std::array< OrderRelation, 4 >           relations; // u, v, g, h
    std::vector< std::array< double, 4 > >   per_sample; // gaps at each shared sample
    double                                   tol                = 0.0;
    std::size_t                              samples_compared   = 0;
    std::size_t                              snapshots_compared = 0;

    bool passed() const;
};

/// Checks that `lower` stays below `upper` in the competitive order:
/// u <= u_upper, v >= v_upper, g >= g_upper and h <= h_upper. Sample
/// scalars are compared at every sample; fields pointwise at snapshot
/// times present in both runs. Throws SampleMismatch unless the sample
/// times agree and shared snapshots live on the same grid.
OrderReport check_order( const Trajectory& lower, const Trajectory& upper, double tol );

struct AuditCheck
{
    std::string name;
    bool        applicable = true; // false for the symmetry check unless requested
    bool        passed     = true;
    double      residual   = 0.0;  // worst violation magnitude
    double      time       = 0.0;  // where it occurred
};

struct AuditReport
{
    std::vector< AuditCheck > checks;
    double                    tol = 0.0;

    bool              passed() const;
    const AuditCheck* find( std::string_view name ) const;
};

struct AuditOptions
{
    bool check_symmetry = false;
};

/// Invariant audit of a single trajectory. Fixed check list, in order:
/// positivity, interior_positivity, zero_outside_fronts, sup_bounds,
/// envelope_domination, front_monotonicity, symmetry.
///
/// Pointwise checks use the snapshots and the final state; interior
/// positivity covers nodes at least dx inside both fronts. ||u0|| and ||v0||
/// are read from the first sample. Bounds and envelopes allow `tol`; the
/// sign and monotonicity checks are exact.
AuditReport check_state_invariants( const Trajectory&        tr,
                                    const CompetitionParams& params,
                                    double                   tol,
                                    const AuditOptions&      options = {} );

struct DichotomyReport
{
    bool                       passed = true;
    std::vector< std::string > notes;
};

DichotomyReport check_dichotomy_consistency( const Outcome& out, const Trajectory& tr, double r_star, double tol );

} // namespace frontera
