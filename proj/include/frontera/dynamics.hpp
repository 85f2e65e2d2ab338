#pragma once

#include "frontera/grid.hpp"
#include "frontera/nonlocal_op.hpp"
#include "frontera/run_config.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace frontera {

/// Discretized (u, v, g, h) at one instant.
struct State
{
    double   t = 0.0;
    Field    u;
    Field    v;
    double   left_front  = 0.0;
    double   right_front = 0.0;
    FarField far_field;
};

/// Per-sample scalar summary; one CSV row.
struct Sample
{
    double t          = 0.0;
    double left_front = 0.0;
    double right_front = 0.0;
    double sup_u      = 0.0;
    double sup_v      = 0.0;
    double u_center   = 0.0;
    double v_center   = 0.0;

    double length() const { return right_front - left_front; }

    friend bool operator==( const Sample&, const Sample& ) = default;
};

struct Trajectory
{
    std::vector< Sample > samples;
    std::vector< State >  snapshots;
    State                 final_state;
    double                dt          = 0.0;
    double                dx          = 0.0;
    double                x_min       = 0.0; // first grid node
    std::uint64_t         fingerprint = 0;
};

Sample summarize( const State& state, const Grid& grid );

/// Interpolated value of a nodal field at x.
double field_value_at( const Field& f, const Grid& grid, double x );

/// Explicit Euler integrator for the free-boundary competition system.
///
/// With `coupled` false the v-equation is dropped and c1 is treated as zero,
/// which gives the single-species comparison system.
class Stepper
{
  public:
    Stepper( const CompetitionParams& params, const Kernel& kernel, const Grid& grid, double dt, double m0, bool coupled = true );

    const Grid& grid() const { return op_.grid(); }
    double      dt() const { return dt_; }
    double      stability_bound() const { return dt_max_; }

    /// Advances in place from t to t + dt.
    void advance( State& state );

  private:
    CompetitionParams     params_;
    NonlocalOperator      op_;
    double                dt_;
    double                dt_max_;
    bool                  coupled_;
    std::vector< double > conv_u_;
    std::vector< double > conv_v_;
};

/// One Euler step of the coupled system (builds a throwaway Stepper).
State step( const State& state, const CompetitionParams& params, const Kernel& kernel, const Grid& grid, double dt, double m0 );

State initial_state( const RunConfig& cfg, const Grid& grid, bool coupled = true );

struct RunOptions
{
    /// Called at every sample; returning false stops the run after that sample.
    std::function< bool( const Sample&, const State& ) > observer;
    bool                                                 coupled = true;
};

/// Integrates to cfg.horizon, sampling at steps 0, k, 2k, ... with
/// k = cfg.sample_every.
Trajectory run( const RunConfig& cfg, const RunOptions& options = {} );

/// Same seed data, c1 = 0 and no v-equation. Sampled v is identically zero.
Trajectory run_single_species_upper( const RunConfig& cfg );

/// Exact solution of y' = y (r - q y), y(0) = y0.
double logistic_envelope( double t, double r, double q, double y0 );

std::uint64_t config_fingerprint( const RunConfig& cfg );

/// Result of the fixed-point construction on a short horizon.
struct PicardResult
{
    State                 final_state;
    std::vector< double > distances; // sup |v_{k+1} - v_k| over space-time
    std::size_t           substeps = 0;
};

/// Upper limit on T for which the v-to-v map is a contraction:
/// 0.5 / (2 d2 + K1), K1 the Lipschitz constant of the reaction on [0, M0]^2.
double picard_horizon_bound( const RunConfig& cfg );

/// Alternates the (u, g, h) free-boundary solve given v and the v solve given
/// the zero-extended u, `iters` times, starting from v(t, x) = v0(x). Each
/// subproblem is integrated with `substeps` Euler steps per cfg.dt.
PicardResult picard_short_horizon( const RunConfig& cfg, double horizon, std::size_t iters, std::size_t substeps = 2 );

} // namespace frontera
