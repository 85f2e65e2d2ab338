#pragma once

#include "frontera/dynamics.hpp"
#include "frontera/run_config.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frontera {

enum class Verdict
{
    SpreadingU,
    VanishingU,
    Undecided
};

std::string_view to_string( Verdict verdict );

struct TheoryBounds
{
    double                      m0 = 0.0;
    double                      k0 = 0.0;
    double                      u_carrying = 0.0;
    double                      v_carrying = 0.0;
    std::pair< double, double > superior_limit; // (a1/b1, 0)
    std::pair< double, double > inferior_limit; // (0, a2/c2)
    Regime                      regime = Regime::Mixed;
    std::optional< double >     r_star;
    /// Superior regime only: R*(d1, a1 - c1 a2/c2), the critical length
    /// for u facing v at its carrying capacity. A vanishing u ends with
    /// h - g at most this long, so exceeding it means spreading.
    std::optional< double >     decision_length;
    /// Set when the hypothesis needed for r_star fails, e.g. "a1 < d1 fails".
    std::optional< std::string > hypothesis_failure;
};

/// Carrying capacities, the a-priori bound M0 and, when the regime
/// hypothesis holds, the critical length: R*(d1, a1) for a superior u
/// (needs a1 < d1) and R*(d2, a2) for an inferior u (needs a2 < d2).
TheoryBounds theory_bounds( const CompetitionParams& params,
                            double                   u0_sup,
                            double                   v0_sup,
                            const Kernel&            kernel,
                            double                   grid_dx );

/// Resolved classification thresholds.
struct Criteria
{
    double horizon          = 0.0;
    double speed_tol        = 0.0;
    double vanish_tol       = 0.0;
    double limit_tol        = 0.0;
    bool   stop_on_decision = false;
};

Criteria resolve_criteria( const RunConfig& cfg );

struct Evidence
{
    double                  final_length      = 0.0;
    std::optional< double > r_star;
    std::optional< double > decision_length;
    double                  final_front_speed = 0.0; // max over the trailing 10% of the horizon
    double                  sup_u_final       = 0.0;
    double                  sup_v_final       = 0.0;
    double                  u_limit_gap       = 0.0; // relative gaps to the limit of the verdict
    double                  v_limit_gap       = 0.0;
    std::optional< double > crossing_time;           // first sample with length > decision_length
    double                  final_time        = 0.0;
};

struct Outcome
{
    Verdict                    verdict = Verdict::Undecided;
    Evidence                   evidence;
    double                     horizon = 0.0;
    Regime                     regime  = Regime::Mixed;
    std::vector< std::string > notes;
};

struct Classification
{
    Outcome    outcome;
    Trajectory trajectory;
};

/// Runs cfg and classifies the long-run behaviour of u.
///
/// Superior regime: SpreadingU as soon as h - g exceeds the decision
/// length; VanishingU when the front speed over the trailing 10% of the
/// horizon is below speed_tol, sup u < vanish_tol and the final length is at
/// most decision_length + dx.
/// Inferior regime: VanishingU when u has died out, the fronts have stopped
/// and v_center is within limit_tol of a2/c2. Mixed regime: Undecided.
Classification classify_run( const RunConfig& cfg, const Criteria& crit );
Outcome        classify_long_run( const RunConfig& cfg, const Criteria& crit );

/// Verdicts for a list of mu values, evaluated concurrently.
std::vector< Outcome > classify_sweep( const RunConfig& cfg, const std::vector< double >& mus, const Criteria& crit );

struct Probe
{
    double  mu           = 0.0;
    Verdict verdict      = Verdict::Undecided;
    double  horizon_used = 0.0;
    bool    doubled      = false;
};

struct ThresholdEstimate
{
    double               mu_lo = 0.0;
    double               mu_hi = 0.0;
    std::size_t          iterations = 0; // bisection probes, excluding the two endpoints
    std::vector< Probe > probes;
    bool                 always_spreading   = false;
    std::size_t          undecided_failures = 0;
    bool                 converged          = false;
    double               r_star             = 0.0;
    double               decision_length    = 0.0;
};

/// Geometric bisection on mu for the threshold separating vanishing (below)
/// from spreading (above), until mu_hi - mu_lo <= tol * mu_hi. Undecided
/// probes are retried once with a doubled horizon. When 2 h0 already
/// exceeds the decision length every mu spreads and no search is done.
ThresholdEstimate find_mu_star( const RunConfig& cfg_template,
                                double           mu_min,
                                double           mu_max,
                                double           tol,
                                const Criteria&  crit );

/// Throws ValidationError if the window cannot contain the fronts up to
/// `horizon`, using the linear front-speed bound; when stop_length is given
/// the run is assumed to stop once h - g exceeds it.
void preflight_window( const RunConfig& cfg, double horizon, std::optional< double > stop_length = std::nullopt );

} // namespace frontera
