#include "frontera/errors.hpp"
#include "frontera/grid.hpp"

#include <doctest.h>

#include <random>

using namespace frontera;

TEST_SUITE( "grid" )
{
    TEST_CASE( "build_grid" )
    {
        CHECK( build_grid( -50.0, 50.0, 0.05 ).size() == 2001 );
        CHECK_THROWS_AS( build_grid( -1.0, 1.0, 0.3 ), NonConformingWindow );
        const Grid unit = build_grid( 0.0, 1.0, 1.0 );
        CHECK( unit.size() == 2 );
        CHECK( unit.node( 0 ) == 0.0 );
        CHECK( unit.node( 1 ) == 1.0 );
    }

    TEST_CASE( "lattice lookup" )
    {
        const Grid g = build_grid( -2.0, 2.0, 0.05 );
        REQUIRE( g.lattice_index( 0.15, 1e-9 * g.dx() ) );
        CHECK( g.node( *g.lattice_index( 0.15, 1e-9 * g.dx() ) ) == doctest::Approx( 0.15 ) );
        CHECK_FALSE( g.lattice_index( 0.151, 1e-9 * g.dx() ) );
        CHECK( g.nearest( 10.0 ) == g.size() - 1 );
        CHECK( g.nearest( -0.024 ) == 40 );
    }

    TEST_CASE( "active range examples" )
    {
        const Grid g = build_grid( -50.0, 50.0, 0.05 );
        const auto r = active_range( g, -2.025, 3.07 );
        CHECK( g.node( r.first ) == doctest::Approx( -2.0 ) );
        CHECK( g.node( r.last - 1 ) == doctest::Approx( 3.05 ) );
        CHECK( g.node( r.first - 1 ) <= -2.025 );
        CHECK( g.node( r.last ) >= 3.07 );
        CHECK( active_range( g, 1.0, 1.0 ).empty() );
        CHECK_THROWS_AS( active_range( g, -1.0, 60.0 ), FrontOutsideWindow );
    }

    TEST_CASE( "nodes on a front are excluded" )
    {
        const Grid g = build_grid( -1.0, 1.0, 0.25 );
        const auto r = active_range( g, -0.5, 0.5 );
        CHECK( r.size() == 3 ); // -0.25, 0, 0.25
        CHECK( g.node( r.first ) == -0.25 );
    }

    TEST_CASE( "active range is monotone under enlargement" )
    {
        const Grid                               g = build_grid( -10.0, 10.0, 0.05 );
        std::mt19937_64                          rng( 3 );
        std::uniform_real_distribution< double > pos( 0.0, 4.0 );
        std::uniform_real_distribution< double > grow( 0.0, 1.0 );
        for ( int trial = 0; trial < 500; ++trial )
        {
            const double l = -pos( rng ), r = pos( rng );
            const auto   a = active_range( g, l, r );
            const auto   b = active_range( g, l - grow( rng ), r + grow( rng ) );
            if ( a.empty() )
                continue;
            CHECK( b.first <= a.first );
            CHECK( b.last >= a.last );
        }
    }
}
