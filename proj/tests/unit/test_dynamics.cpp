#include "frontera/dynamics.hpp"
#include "frontera/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace frontera;

namespace {

RunConfig small_config()
{
    RunConfig cfg;
    cfg.x_min        = -4.0;
    cfg.x_max        = 4.0;
    cfg.horizon      = 2.0;
    cfg.sample_every = 10;
    return cfg;
}

bool same_state( const State& a, const State& b )
{
    return a.t == b.t && a.left_front == b.left_front && a.right_front == b.right_front && a.u.values == b.u.values
           && a.v.values == b.v.values && a.u.support.first == b.u.support.first && a.u.support.last == b.u.support.last;
}

} // namespace

TEST_SUITE( "dynamics" )
{
    TEST_CASE( "constant v away from u follows the logistic step" )
    {
        const RunConfig cfg  = small_config();
        const Grid      grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        const State     s0   = initial_state( cfg, grid );
        const State     s1   = step( s0, cfg.params, cfg.kernel, grid, cfg.dt, cfg.m0() );
        const auto&     p    = cfg.params;
        const double    v    = 0.5;
        const double    want = v + cfg.dt * v * ( p.a2 - p.c2 * v );
        for ( std::size_t i : { std::size_t{ 0 }, std::size_t{ 10 }, grid.size() - 1 } )
            CHECK( s1.v.values[i] == doctest::Approx( want ).epsilon( 1e-14 ) );
        CHECK( s1.far_field.left_value == doctest::Approx( want ).epsilon( 1e-14 ) );
        CHECK( s1.t == cfg.dt );
    }

    TEST_CASE( "one step at the centre" )
    {
        // Hand-evaluated update at x = 0 with a box kernel: the support of u
        // lies inside the kernel support, so J * u = (1/2) int u.
        const RunConfig cfg  = small_config();
        const Grid      grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        const State     s0   = initial_state( cfg, grid );
        const State     s1   = step( s0, cfg.params, cfg.kernel, grid, cfg.dt, cfg.m0() );
        const auto&     p    = cfg.params;
        // Interpolant of cos(pi x / 0.3) on nodes -0.1..0.1 with linear ramps to +-0.15.
        const double c   = std::cos( std::numbers::pi * 0.05 / 0.3 ), e = std::cos( std::numbers::pi * 0.1 / 0.3 );
        const double mass = 0.05 * ( 0.5 * e + c + 1.0 + c + 0.5 * e ) + 2.0 * 0.5 * 0.05 * e;
        const double u    = 1.0;
        const double want = u + cfg.dt * ( p.d1 * ( 0.5 * mass - u ) + u * ( p.a1 - p.b1 * u - p.c1 * 0.5 ) );
        CHECK( s1.u.values[grid.nearest( 0.0 )] == doctest::Approx( want ).epsilon( 1e-13 ) );
    }

    TEST_CASE( "fronts are monotone and u stays inside them" )
    {
        RunConfig  cfg = small_config();
        cfg.snapshot_every = 1;
        const auto tr  = run( cfg );
        REQUIRE( tr.samples.size() == 21 );
        for ( std::size_t k = 1; k < tr.samples.size(); ++k )
        {
            CHECK( tr.samples[k].right_front >= tr.samples[k - 1].right_front );
            CHECK( tr.samples[k].left_front <= tr.samples[k - 1].left_front );
        }
        CHECK( tr.samples.back().length() > tr.samples.front().length() );
        const Grid grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        for ( const auto& s : tr.snapshots )
        {
            for ( std::size_t i = 0; i < grid.size(); ++i )
            {
                const double x = grid.node( i );
                if ( x <= s.left_front || x >= s.right_front )
                    REQUIRE( s.u.values[i] == 0.0 );
                REQUIRE( s.u.values[i] >= 0.0 );
                REQUIRE( s.v.values[i] >= 0.0 );
            }
        }
    }

    TEST_CASE( "symmetric data stay symmetric" )
    {
        RunConfig cfg = small_config();
        cfg.horizon   = 1.0;
        const auto tr = run( cfg );
        const auto& s = tr.final_state;
        CHECK( std::abs( s.left_front + s.right_front ) < 1e-12 );
        const std::size_t n = s.u.values.size();
        double            worst = 0.0;
        for ( std::size_t i = 0; i < n; ++i )
        {
            worst = std::max( worst, std::abs( s.u.values[i] - s.u.values[n - 1 - i] ) );
            worst = std::max( worst, std::abs( s.v.values[i] - s.v.values[n - 1 - i] ) );
        }
        CHECK( worst < 1e-10 );
    }

    TEST_CASE( "zero horizon" )
    {
        RunConfig cfg = small_config();
        cfg.horizon   = 0.0;
        const auto tr = run( cfg );
        REQUIRE( tr.samples.size() == 1 );
        CHECK( tr.samples[0].t == 0.0 );
        CHECK( tr.samples[0].right_front == cfg.params.h0 );
        const Grid grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        CHECK( same_state( tr.final_state, initial_state( cfg, grid ) ) );
    }

    TEST_CASE( "sampling does not perturb the integration" )
    {
        RunConfig a = small_config();
        RunConfig b = a;
        b.sample_every = 20;
        const auto ta = run( a ), tb = run( b );
        CHECK( same_state( ta.final_state, tb.final_state ) );
        CHECK( tb.samples.size() == 11 );
        for ( std::size_t k = 0; k < tb.samples.size(); ++k )
            CHECK( tb.samples[k] == ta.samples[2 * k] );
    }

    TEST_CASE( "first-order convergence in dt" )
    {
        auto front = []( double dt ) {
            RunConfig cfg    = small_config();
            cfg.horizon      = 1.0;
            cfg.dt           = dt;
            cfg.sample_every = 1;
            return run( cfg ).final_state.right_front;
        };
        const double h1 = front( 0.01 ), h2 = front( 0.005 ), h4 = front( 0.0025 );
        const double e1 = std::abs( h1 - h2 ), e2 = std::abs( h2 - h4 );
        CHECK( e1 > 0.0 );
        CHECK( e2 / e1 == doctest::Approx( 0.5 ).epsilon( 0.2 ) );
    }

    TEST_CASE( "c1 = 0 decouples u from v" )
    {
        RunConfig cfg = small_config();
        cfg.params.c1 = 0.0;
        const auto full   = run( cfg );
        const auto single = run_single_species_upper( cfg );
        CHECK( full.final_state.u.values == single.final_state.u.values );
        CHECK( full.final_state.right_front == single.final_state.right_front );
        for ( const auto& s : single.samples )
            CHECK( s.sup_v == 0.0 );
    }

    TEST_CASE( "stability bound is enforced" )
    {
        RunConfig cfg = small_config();
        cfg.dt        = 0.03;
        CHECK_THROWS_AS( run( cfg ), StabilityViolation );
        cfg.dt = cfg.stability_bound();
        CHECK_NOTHROW( Stepper( cfg.params, cfg.kernel, build_grid( -1, 1, 0.05 ), cfg.dt, cfg.m0() ) );
    }

    TEST_CASE( "logistic envelope" )
    {
        CHECK( logistic_envelope( 3.0, 1.0, 1.0, 0.0 ) == 0.0 );
        CHECK( logistic_envelope( 0.0, 2.5, 1.0, 0.7 ) == doctest::Approx( 0.7 ).epsilon( 1e-15 ) );
        CHECK( logistic_envelope( 1.0, 1.0, 1.0, 0.5 ) == doctest::Approx( 1.0 / ( 1.0 + std::exp( -1.0 ) ) ).epsilon( 1e-15 ) );
        CHECK( logistic_envelope( 100.0, 2.5, 1.0, 0.1 ) == doctest::Approx( 2.5 ).epsilon( 1e-12 ) );
        CHECK( logistic_envelope( 100.0, 2.5, 1.0, 4.0 ) == doctest::Approx( 2.5 ).epsilon( 1e-12 ) );
    }

    TEST_CASE( "summaries" )
    {
        const RunConfig cfg  = small_config();
        const Grid      grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        const State     s0   = initial_state( cfg, grid );
        const Sample    s    = summarize( s0, grid );
        CHECK( s.sup_u == 1.0 );
        CHECK( s.u_center == 1.0 );
        CHECK( s.v_center == 0.5 );
        CHECK( s.length() == doctest::Approx( 0.3 ) );
        CHECK( field_value_at( s0.u, grid, 0.025 ) == doctest::Approx( 0.5 * ( 1.0 + s0.u.values[grid.nearest( 0.05 )] ) ) );
        CHECK( field_value_at( s0.v, grid, 100.0 ) == 0.5 );
    }

    TEST_CASE( "fingerprint" )
    {
        RunConfig a = small_config(), b = small_config();
        CHECK( config_fingerprint( a ) == config_fingerprint( b ) );
        b.params.mu = 1.0000001;
        CHECK( config_fingerprint( a ) != config_fingerprint( b ) );
    }

    TEST_CASE( "Picard iteration contracts" )
    {
        RunConfig cfg = small_config();
        cfg.dt        = 1e-3;
        cfg.x_min     = -2.0;
        cfg.x_max     = 2.0;
        const double T = 0.02;
        REQUIRE( T <= picard_horizon_bound( cfg ) );
        const auto res = picard_short_horizon( cfg, T, 6 );
        REQUIRE( res.distances.size() == 6 );
        for ( std::size_t k = 1; k < res.distances.size(); ++k )
        {
            if ( res.distances[k - 1] > 1e-14 )
                CHECK( res.distances[k] < res.distances[k - 1] );
        }
        cfg.horizon      = T;
        const auto   tr  = run( cfg );
        const Grid   grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
        const double sup_fixed = summarize( res.final_state, grid ).sup_u;
        CHECK( std::abs( sup_fixed - tr.samples.back().sup_u ) <= 10.0 * cfg.dt );
        CHECK_THROWS_AS( picard_short_horizon( cfg, 1.0, 3 ), UsageError );
    }
}
