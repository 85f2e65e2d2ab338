#include "frontera/dynamics.hpp"
#include "frontera/errors.hpp"

#include <algorithm>
#include <cmath>

namespace frontera {

double picard_horizon_bound( const RunConfig& cfg )
{
    const auto&  p  = cfg.params;
    const double m0 = cfg.m0();
    // Sum of partial-derivative bounds of each reaction component on [0, M0]^2.
    const double k1 = std::max( p.a1 + 2.0 * p.b1 * m0 + 2.0 * p.c1 * m0, p.a2 + 2.0 * p.b2 * m0 + 2.0 * p.c2 * m0 );
    return 0.5 / ( 2.0 * p.d2 + k1 );
}

namespace {

struct UHistory
{
    std::vector< std::vector< double > > u;
    std::vector< IndexRange >            support;
    std::vector< double >                left;
    std::vector< double >                right;
};

struct VHistory
{
    std::vector< std::vector< double > > v;
    std::vector< FarField >              far;
};

// (u, g, h) subproblem with v prescribed at every substep level.
UHistory solve_free_boundary( const RunConfig&        cfg,
                              const NonlocalOperator& op,
                              const State&            seed,
                              const VHistory&         vh,
                              double                  tau,
                              std::size_t             levels )
{
    const auto& p = cfg.params;
    UHistory    out;
    out.u.reserve( levels );
    std::vector< double > u    = seed.u.values;
    IndexRange            supp = seed.u.support;
    double                g    = seed.left_front;
    double                h    = seed.right_front;
    std::vector< double > conv( u.size(), 0.0 );

    auto push = [&] {
        out.u.push_back( u );
        out.support.push_back( supp );
        out.left.push_back( g );
        out.right.push_back( h );
    };
    push();
    for ( std::size_t s = 0; s + 1 < levels; ++s )
    {
        const auto&  v      = vh.v[s];
        const double h_next = h + tau * p.mu * op.flux( u, supp, g, h, Side::Right );
        const double g_next = g - tau * p.mu * op.flux( u, supp, g, h, Side::Left );
        op.free_boundary_convolution( u, supp, g, h, conv );
        for ( std::size_t i = supp.first; i < supp.last; ++i )
        {
            const double ui = u[i];
            u[i] = std::max( 0.0, ui + tau * ( p.d1 * ( conv[i] - ui ) + ui * ( p.a1 - p.b1 * ui - p.c1 * v[i] ) ) );
        }
        supp = active_range( op.grid(), g_next, h_next );
        g    = g_next;
        h    = h_next;
        push();
    }
    return out;
}

// v subproblem on the whole window with u prescribed (zero outside its support).
VHistory solve_whole_line( const RunConfig& cfg, const NonlocalOperator& op, const State& seed, const UHistory& uh, double tau )
{
    const auto& p      = cfg.params;
    const auto  levels = uh.u.size();
    VHistory    out;
    out.v.reserve( levels );
    std::vector< double > v    = seed.v.values;
    FarField              far  = seed.far_field;
    std::vector< double > conv( v.size(), 0.0 );
    out.v.push_back( v );
    out.far.push_back( far );
    for ( std::size_t s = 0; s + 1 < levels; ++s )
    {
        const auto& u = uh.u[s];
        op.whole_line_convolution( v, far, conv );
        for ( std::size_t i = 0; i < v.size(); ++i )
        {
            const double vi = v[i];
            v[i] = std::max( 0.0, vi + tau * ( p.d2 * ( conv[i] - vi ) + vi * ( p.a2 - p.b2 * u[i] - p.c2 * vi ) ) );
        }
        auto logistic = [&]( double w ) { return w + tau * w * ( p.a2 - p.c2 * w ); };
        far           = { logistic( far.left_value ), logistic( far.right_value ) };
        out.v.push_back( v );
        out.far.push_back( far );
    }
    return out;
}

} // namespace

PicardResult picard_short_horizon( const RunConfig& cfg, double horizon, std::size_t iters, std::size_t substeps )
{
    if ( iters < 1 || substeps < 1 )
    {
        throw UsageError( "picard iteration needs iters >= 1 and substeps >= 1" );
    }
    if ( horizon > picard_horizon_bound( cfg ) * ( 1.0 + 1e-12 ) )
    {
        throw UsageError( "picard horizon " + std::to_string( horizon ) + " exceeds the contraction bound "
                          + std::to_string( picard_horizon_bound( cfg ) ) );
    }
    const Grid             grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
    const NonlocalOperator op( cfg.kernel, grid );
    const State            seed = initial_state( cfg, grid );

    const auto   n_steps = static_cast< std::size_t >( std::llround( horizon / cfg.dt ) );
    const auto   levels  = n_steps * substeps + 1;
    const double tau     = cfg.dt / static_cast< double >( substeps );
    if ( tau > cfg.stability_bound() )
    {
        throw StabilityViolation( "picard substep exceeds the stability bound" );
    }

    // Initial guess: v frozen at v0 for all t.
    VHistory vh;
    vh.v.assign( levels, seed.v.values );
    vh.far.assign( levels, seed.far_field );

    PicardResult result;
    result.substeps = substeps;
    UHistory uh;
    for ( std::size_t it = 0; it < iters; ++it )
    {
        uh             = solve_free_boundary( cfg, op, seed, vh, tau, levels );
        VHistory next  = solve_whole_line( cfg, op, seed, uh, tau );
        double   dist  = 0.0;
        for ( std::size_t s = 0; s < levels; ++s )
        {
            for ( std::size_t i = 0; i < grid.size(); ++i )
                dist = std::max( dist, std::abs( next.v[s][i] - vh.v[s][i] ) );
        }
        result.distances.push_back( dist );
        vh = std::move( next );
    }

    State& fin      = result.final_state;
    fin.t           = static_cast< double >( n_steps ) * cfg.dt;
    fin.u.values    = uh.u.back();
    fin.u.support   = uh.support.back();
    fin.left_front  = uh.left.back();
    fin.right_front = uh.right.back();
    fin.v.values    = vh.v.back();
    fin.v.support   = { 0, grid.size() };
    fin.far_field   = vh.far.back();
    return result;
}

} // namespace frontera
