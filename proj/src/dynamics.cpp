#include "frontera/dynamics.hpp"

#include "frontera/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

namespace frontera {

namespace {

constexpr double roundoff_floor = 1e-12;

std::string describe( const char* what, double value, double t, double x )
{
    std::ostringstream msg;
    msg.precision( 17 );
    msg << what << " = " << value << " at t = " << t << ", x = " << x;
    return msg.str();
}

} // namespace

double field_value_at( const Field& f, const Grid& grid, double x )
{
    if ( x <= grid.x_min() )
        return f.values.front();
    if ( x >= grid.x_max() )
        return f.values.back();
    auto j = static_cast< std::size_t >( std::floor( ( x - grid.x_min() ) / grid.dx() ) );
    j      = std::min( j, grid.size() - 2 );
    const double t = ( x - grid.node( j ) ) / grid.dx();
    if ( t == 0.0 )
        return f.values[j];
    return ( 1.0 - t ) * f.values[j] + t * f.values[j + 1];
}

Sample summarize( const State& state, const Grid& grid )
{
    Sample s;
    s.t           = state.t;
    s.left_front  = state.left_front;
    s.right_front = state.right_front;
    for ( std::size_t i = state.u.support.first; i < state.u.support.last; ++i )
        s.sup_u = std::max( s.sup_u, state.u.values[i] );
    for ( double v : state.v.values )
        s.sup_v = std::max( s.sup_v, v );
    s.u_center = field_value_at( state.u, grid, 0.0 );
    s.v_center = field_value_at( state.v, grid, 0.0 );
    return s;
}

Stepper::Stepper( const CompetitionParams& params, const Kernel& kernel, const Grid& grid, double dt, double m0, bool coupled )
: params_( params )
, op_( kernel, grid )
, dt_( dt )
, coupled_( coupled )
, conv_u_( grid.size(), 0.0 )
, conv_v_( grid.size(), 0.0 )
{
    const auto& p = params;
    dt_max_       = 0.5 / ( p.d1 + p.d2 + p.a1 + p.a2 + ( p.b1 + p.c1 + p.b2 + p.c2 ) * m0 );
    if ( !( dt > 0.0 ) || dt > dt_max_ )
    {
        std::ostringstream msg;
        msg.precision( 17 );
        msg << "dt = " << dt << " exceeds the stability bound " << dt_max_;
        throw StabilityViolation( msg.str() );
    }
}

void Stepper::advance( State& s )
{
    const Grid&       grid = op_.grid();
    const auto&       p    = params_;
    const IndexRange  old  = s.u.support;
    const double      g    = s.left_front;
    const double      h    = s.right_front;
    std::vector< double >& u = s.u.values;
    std::vector< double >& v = s.v.values;

    // Fronts move with the fluxes at time t.
    const double flux_right = op_.flux( u, old, g, h, Side::Right );
    const double flux_left  = op_.flux( u, old, g, h, Side::Left );
    const double h_next     = h + dt_ * p.mu * flux_right;
    const double g_next     = g - dt_ * p.mu * flux_left;
    const IndexRange next   = active_range( grid, g_next, h_next );

    op_.free_boundary_convolution( u, old, g, h, conv_u_ );

    // v first, while u still holds time-t values.
    if ( coupled_ )
    {
        op_.whole_line_convolution( v, s.far_field, conv_v_ );
        for ( std::size_t i = 0; i < v.size(); ++i )
        {
            const double vi = v[i];
            const double vn = vi + dt_ * ( p.d2 * ( conv_v_[i] - vi ) + vi * ( p.a2 - p.b2 * u[i] - p.c2 * vi ) );
            if ( vn < 0.0 )
            {
                if ( vn < -roundoff_floor )
                    throw PositivityLoss( describe( "v", vn, s.t + dt_, grid.node( i ) ) );
                conv_v_[i] = 0.0;
            }
            else
            {
                conv_v_[i] = vn;
            }
        }
    }

    const double c1 = coupled_ ? p.c1 : 0.0;
    for ( std::size_t i = old.first; i < old.last; ++i )
    {
        const double ui = u[i];
        double       un = ui + dt_ * ( p.d1 * ( conv_u_[i] - ui ) + ui * ( p.a1 - p.b1 * ui - c1 * v[i] ) );
        if ( un < 0.0 )
        {
            if ( un < -roundoff_floor )
                throw PositivityLoss( describe( "u", un, s.t + dt_, grid.node( i ) ) );
            un = 0.0;
        }
        u[i] = un;
    }
    // Nodes uncovered by the advancing fronts keep u = 0.

    if ( coupled_ )
    {
        v.swap( conv_v_ );
        auto logistic = [&]( double w ) { return w + dt_ * w * ( p.a2 - p.c2 * w ); };
        s.far_field   = { logistic( s.far_field.left_value ), logistic( s.far_field.right_value ) };
    }

    s.u.support   = next;
    s.left_front  = g_next;
    s.right_front = h_next;
    s.t += dt_;
}

State step( const State& state, const CompetitionParams& params, const Kernel& kernel, const Grid& grid, double dt, double m0 )
{
    Stepper stepper( params, kernel, grid, dt, m0 );
    State   next = state;
    stepper.advance( next );
    return next;
}

State initial_state( const RunConfig& cfg, const Grid& grid, bool coupled )
{
    const double h0 = cfg.params.h0;
    State        s;
    s.t           = 0.0;
    s.left_front  = -h0;
    s.right_front = h0;
    s.u           = Field::zeros( grid );
    s.u.support   = active_range( grid, -h0, h0 );
    for ( std::size_t i = s.u.support.first; i < s.u.support.last; ++i )
        s.u.values[i] = cfg.u0.value_at( grid.node( i ), h0 );

    s.v = Field::zeros( grid );
    if ( coupled )
    {
        s.v.support = { 0, grid.size() };
        for ( std::size_t i = 0; i < grid.size(); ++i )
            s.v.values[i] = cfg.v0.value_at( grid.node( i ) );
        s.far_field = { cfg.v0.value_at( grid.x_min() ), cfg.v0.value_at( grid.x_max() ) };
    }
    return s;
}

Trajectory run( const RunConfig& cfg, const RunOptions& options )
{
    const Grid  grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
    Stepper     stepper( cfg.params, cfg.kernel, grid, cfg.dt, cfg.m0(), options.coupled );
    State       state = initial_state( cfg, grid, options.coupled );
    const auto  n_steps      = cfg.steps();
    const auto  sample_every = std::max< std::size_t >( cfg.sample_every, 1 );

    std::set< std::size_t > snapshot_steps;
    for ( double t : cfg.snapshot_times )
    {
        if ( t >= 0.0 && t <= cfg.horizon )
            snapshot_steps.insert( static_cast< std::size_t >( std::llround( t / cfg.dt ) ) );
    }

    Trajectory tr;
    tr.dt          = cfg.dt;
    tr.dx          = cfg.dx;
    tr.x_min       = cfg.x_min;
    tr.fingerprint = config_fingerprint( cfg );

    auto record = [&]( std::size_t k ) {
        bool keep_going = true;
        if ( k % sample_every == 0 )
        {
            const std::size_t index  = k / sample_every;
            const Sample      sample = summarize( state, grid );
            tr.samples.push_back( sample );
            if ( cfg.snapshot_every > 0 && index % cfg.snapshot_every == 0 )
                tr.snapshots.push_back( state );
            if ( options.observer )
                keep_going = options.observer( sample, state );
        }
        if ( snapshot_steps.contains( k ) )
        {
            const bool already = !tr.snapshots.empty() && tr.snapshots.back().t == state.t;
            if ( !already )
                tr.snapshots.push_back( state );
        }
        return keep_going;
    };

    bool keep_going = record( 0 );
    for ( std::size_t k = 1; k <= n_steps && keep_going; ++k )
    {
        stepper.advance( state );
        state.t    = static_cast< double >( k ) * cfg.dt;
        keep_going = record( k );
    }
    tr.final_state = std::move( state );
    return tr;
}

Trajectory run_single_species_upper( const RunConfig& cfg )
{
    RunOptions options;
    options.coupled = false;
    return run( cfg, options );
}

double logistic_envelope( double t, double r, double q, double y0 )
{
    if ( y0 <= 0.0 )
        return 0.0;
    const double k = r / q;
    return k * y0 / ( y0 + ( k - y0 ) * std::exp( -r * t ) );
}

std::uint64_t config_fingerprint( const RunConfig& cfg )
{
    std::uint64_t hash = 14695981039346656037ull;
    auto          mix  = [&]( double value ) {
        unsigned char bytes[sizeof( double )];
        std::memcpy( bytes, &value, sizeof( double ) );
        for ( unsigned char b : bytes )
        {
            hash ^= b;
            hash *= 1099511628211ull;
        }
    };
    const auto& p = cfg.params;
    for ( double x : { p.d1, p.d2, p.a1, p.b1, p.c1, p.a2, p.b2, p.c2, p.mu, p.h0 } )
        mix( x );
    mix( static_cast< double >( cfg.kernel.family() ) );
    mix( cfg.kernel.sigma() );
    mix( cfg.kernel.shape() );
    mix( cfg.u0.amplitude );
    mix( static_cast< double >( cfg.u0.shape ) );
    if ( const auto* c = std::get_if< V0Profile::Constant >( &cfg.v0.data ) )
    {
        mix( c->value );
    }
    else
    {
        const auto& table = std::get< V0Profile::Table >( cfg.v0.data );
        for ( std::size_t i = 0; i < table.x.size(); ++i )
        {
            mix( table.x[i] );
            mix( table.v[i] );
        }
    }
    for ( double x : { cfg.x_min, cfg.x_max, cfg.dx, cfg.dt, cfg.horizon, static_cast< double >( cfg.sample_every ) } )
        mix( x );
    return hash;
}

} // namespace frontera
