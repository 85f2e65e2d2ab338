#include "frontera/errors.hpp"
#include "frontera/nonlocal_op.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace frontera;

namespace {

Field constant_on( const Grid& g, double left, double right, double c )
{
    Field u   = Field::zeros( g );
    u.support = active_range( g, left, right );
    for ( std::size_t i = u.support.first; i < u.support.last; ++i )
        u.values[i] = c;
    return u;
}

Field from_function( const Grid& g, double left, double right, const std::function< double( double ) >& f )
{
    Field u   = Field::zeros( g );
    u.support = active_range( g, left, right );
    for ( std::size_t i = u.support.first; i < u.support.last; ++i )
        u.values[i] = f( g.node( i ) );
    return u;
}

// Piecewise-linear interpolant of nodal data, ramped to zero at the fronts.
std::function< double( double ) > interpolant( const Grid& g, const Field& u, double left, double right )
{
    return [&g, &u, left, right]( double y ) {
        if ( y <= left || y >= right || u.support.empty() )
            return 0.0;
        const double xf = g.node( u.support.first ), xl = g.node( u.support.last - 1 );
        if ( y <= xf )
            return u.values[u.support.first] * ( y - left ) / ( xf - left );
        if ( y >= xl )
            return u.values[u.support.last - 1] * ( right - y ) / ( right - xl );
        const auto   j = static_cast< std::size_t >( std::floor( ( y - g.x_min() ) / g.dx() ) );
        const double t = ( y - g.node( j ) ) / g.dx();
        return ( 1.0 - t ) * u.values[j] + t * u.values[j + 1];
    };
}

std::vector< double > node_breaks( const Grid& g )
{
    std::vector< double > b;
    for ( std::size_t i = 0; i < g.size(); ++i )
        b.push_back( g.node( i ) );
    return b;
}

} // namespace

TEST_SUITE( "nonlocal_op" )
{
    const Kernel box = Kernel::uniform_box( 1.0 );

    TEST_CASE( "zero field" )
    {
        const Grid  g = build_grid( -5.0, 5.0, 0.05 );
        const Field u = constant_on( g, -2.0, 2.0, 0.0 );
        const Field r = apply_free_boundary_diffusion( u, -2.0, 2.0, box, 1.3, g );
        for ( double x : r.values )
            CHECK( x == 0.0 );
        CHECK( front_flux( u, -2.0, 2.0, box, g, Side::Right ) == 0.0 );
        Field v = Field::zeros( g );
        v.support = { 0, g.size() };
        for ( double x : apply_whole_line_diffusion( v, box, 1.0, g, {} ).values )
            CHECK( x == 0.0 );
    }

    TEST_CASE( "constant field away from the fronts is in the kernel" )
    {
        const Grid  g = build_grid( -5.0, 5.0, 0.05 );
        const Field u = constant_on( g, -3.0, 3.0, 0.7 );
        const Field r = apply_free_boundary_diffusion( u, -3.0, 3.0, box, 2.0, g );
        for ( std::size_t i = u.support.first; i < u.support.last; ++i )
        {
            if ( std::abs( g.node( i ) ) < 2.0 - 1e-9 )
                CHECK( std::abs( r.values[i] ) < 1e-12 );
        }
    }

    TEST_CASE( "constant field near a front loses its tail mass" )
    {
        const double d = 1.5, c = 0.8, dx = 0.05;
        const Grid   g = build_grid( -5.0, 5.0, dx );
        // Front just past the node at 3.0, so the ramp to zero is negligible.
        const double right = 3.0 + 1e-9, left = -3.0 - 1e-9;
        const Field  u     = constant_on( g, left, right, c );
        const Field  r     = apply_free_boundary_diffusion( u, left, right, box, d, g );
        const auto   i     = g.nearest( 2.5 );
        CHECK( std::abs( r.values[i] - ( -d * c * 0.25 ) ) < 2.0 * dx * dx );

        // Off-lattice front: the linear ramp over the last partial cell costs O(dx).
        const double right2 = 3.025;
        const Field  u2     = constant_on( g, left, right2, c );
        const Field  r2     = apply_free_boundary_diffusion( u2, left, right2, box, d, g );
        const auto   i2     = g.nearest( 2.5 );
        const double exact  = -d * c * box.tail_mass( g.node( i2 ), right2, Side::Right );
        CHECK( std::abs( r2.values[i2] - exact ) < d * c * dx );
    }

    TEST_CASE( "flux examples" )
    {
        const double dx    = 0.05;
        const Grid   g     = build_grid( -5.0, 5.0, dx );
        const double right = 3.0 + 1e-9, left = 2.0 - 1e-9;
        const Field  u     = constant_on( g, left, right, 1.0 );
        CHECK( std::abs( front_flux( u, left, right, box, g, Side::Right ) - 0.25 ) < 2.0 * dx * dx );

        // Support farther than sigma from the right front.
        const Field far = from_function( g, -3.0, 3.0, []( double x ) { return x < -1.5 ? 1.0 : 0.0; } );
        CHECK( front_flux( far, -3.0, 3.0, box, g, Side::Right ) == 0.0 );
    }

    TEST_CASE( "free-boundary convolution equals the integral of the interpolant" )
    {
        // With the box kernel the integrand is piecewise linear between the
        // partition points, so the trapezoid rule is exact.
        const Grid   g     = build_grid( -4.0, 4.0, 0.05 );
        const double left  = -1.537, right = 2.013;
        const Field  u     = from_function( g, left, right, []( double x ) { return 1.0 + 0.5 * std::sin( 3.0 * x ); } );
        std::vector< double > out( g.size() );
        NonlocalOperator( box, g ).free_boundary_convolution( u.values, u.support, left, right, out );
        const oracle::Density J{ "box", 1.0 };
        const auto            f = interpolant( g, u, left, right );
        auto                  breaks = node_breaks( g );
        breaks.push_back( left );
        breaks.push_back( right );
        for ( std::size_t i = u.support.first; i < u.support.last; i += 7 )
        {
            const double ref = oracle::convolve( J, f, g.node( i ), left, right, breaks );
            CHECK( std::abs( out[i] - ref ) < 1e-10 );
        }
    }

    TEST_CASE( "whole-line operator" )
    {
        const Grid g = build_grid( -6.0, 6.0, 0.05 );
        Field      v = Field::zeros( g );
        v.support    = { 0, g.size() };
        for ( auto& x : v.values )
            x = 0.37;
        for ( double r : apply_whole_line_diffusion( v, box, 2.0, g, { 0.37, 0.37 } ).values )
            CHECK( std::abs( r ) < 1e-9 );

        // Bump well inside the window: whole-line result equals the
        // free-boundary result with fronts at the window edges.
        for ( std::size_t i = 0; i < g.size(); ++i )
        {
            const double x = g.node( i );
            v.values[i]    = std::abs( x ) < 2.0 ? std::pow( std::cos( 0.25 * M_PI * x ), 2 ) : 0.0;
        }
        const Field whole = apply_whole_line_diffusion( v, box, 1.0, g, {} );
        Field       u     = v;
        const double lf = g.x_min() + 0.5 * g.dx(), rf = g.x_max() - 0.5 * g.dx();
        u.support       = active_range( g, lf, rf );
        const Field fb  = apply_free_boundary_diffusion( u, lf, rf, box, 1.0, g );
        const oracle::Density J{ "box", 1.0 };
        const auto            f = interpolant( g, v, g.x_min(), g.x_max() );
        for ( std::size_t i = 0; i < g.size(); ++i )
        {
            const double x = g.node( i );
            if ( std::abs( x ) < 3.5 )
            {
                CHECK( std::abs( whole.values[i] - fb.values[i] ) < 1e-13 );
                const double ref = oracle::convolve( J, f, x, g.x_min(), g.x_max(), node_breaks( g ) ) - v.values[i];
                CHECK( std::abs( whole.values[i] - ref ) < 1e-10 );
            }
        }
    }

    TEST_CASE( "far-field closure" )
    {
        const Grid g = build_grid( -3.0, 3.0, 0.05 );
        Field      v = Field::zeros( g );
        v.support    = { 0, g.size() };
        const Field r = apply_whole_line_diffusion( v, box, 1.0, g, { 0.4, 0.9 } );
        // At the left edge half the kernel mass sees the left far field.
        CHECK( r.values.front() == doctest::Approx( 0.4 * 0.5 ).epsilon( 1e-12 ) );
        CHECK( r.values.back() == doctest::Approx( 0.9 * 0.5 ).epsilon( 1e-12 ) );
    }

    TEST_CASE( "linearity" )
    {
        const Grid                               g = build_grid( -4.0, 4.0, 0.05 );
        std::mt19937_64                          rng( 5 );
        std::uniform_real_distribution< double > unif( 0.0, 1.0 );
        const double                             left = -2.013, right = 2.271;
        Field                                    u1 = from_function( g, left, right, [&]( double ) { return unif( rng ); } );
        Field                                    u2 = from_function( g, left, right, [&]( double ) { return unif( rng ); } );
        Field                                    mix = u1;
        for ( std::size_t i = 0; i < g.size(); ++i )
            mix.values[i] = 2.0 * u1.values[i] - 0.5 * u2.values[i];
        const auto k  = Kernel::triangular( 1.0 );
        const auto r1 = apply_free_boundary_diffusion( u1, left, right, k, 1.0, g );
        const auto r2 = apply_free_boundary_diffusion( u2, left, right, k, 1.0, g );
        const auto rm = apply_free_boundary_diffusion( mix, left, right, k, 1.0, g );
        for ( std::size_t i = 0; i < g.size(); ++i )
            CHECK( std::abs( rm.values[i] - ( 2.0 * r1.values[i] - 0.5 * r2.values[i] ) ) < 1e-13 );
        const double f1 = front_flux( u1, left, right, k, g, Side::Right );
        const double f2 = front_flux( u2, left, right, k, g, Side::Right );
        const double fm = front_flux( mix, left, right, k, g, Side::Right );
        CHECK( std::abs( fm - ( 2.0 * f1 - 0.5 * f2 ) ) < 1e-13 );
    }

    TEST_CASE( "fluxes are nonnegative for nonnegative u" )
    {
        const Grid                               g = build_grid( -4.0, 4.0, 0.05 );
        std::mt19937_64                          rng( 9 );
        std::uniform_real_distribution< double > unif( 0.0, 1.0 );
        std::uniform_real_distribution< double > front( 0.3, 3.0 );
        for ( int trial = 0; trial < 50; ++trial )
        {
            const double left = -front( rng ), right = front( rng );
            const Field  u    = from_function( g, left, right, [&]( double ) { return unif( rng ); } );
            for ( const auto& k : { box, Kernel::triangular( 0.7 ), Kernel::truncated_gaussian( 1.0, 0.4 ) } )
            {
                CHECK( front_flux( u, left, right, k, g, Side::Right ) >= 0.0 );
                CHECK( front_flux( u, left, right, k, g, Side::Left ) >= 0.0 );
            }
        }
    }

    TEST_CASE( "mirror symmetry of the fluxes" )
    {
        const Grid   g    = build_grid( -4.0, 4.0, 0.05 );
        const double edge = 1.7317;
        const Field  u    = from_function( g, -edge, edge, []( double x ) { return std::exp( -x * x ) * ( 1.2 + std::cos( x ) ); } );
        for ( const auto& k : { box, Kernel::triangular( 1.3 ), Kernel::truncated_gaussian( 1.0, 0.5 ) } )
        {
            const double r = front_flux( u, -edge, edge, k, g, Side::Right );
            const double l = front_flux( u, -edge, edge, k, g, Side::Left );
            CHECK( r > 0.0 );
            CHECK( std::abs( r - l ) < 1e-12 );
        }
    }

    TEST_CASE( "second-order convergence on smooth data" )
    {
        // Smooth u vanishing at the fronts; triangular kernel; exact integral
        // of the smooth function is the reference.
        const oracle::Density J{ "triangle", 1.0 };
        const Kernel          k    = Kernel::triangular( 1.0 );
        const double          edge = 1.5;
        auto smooth = [edge]( double x ) { return std::abs( x ) < edge ? std::pow( std::cos( M_PI * x / ( 2 * edge ) ), 2 ) : 0.0; };
        std::vector< double > errors;
        for ( double dx : { 0.1, 0.05, 0.025 } )
        {
            const Grid  g = build_grid( -3.0, 3.0, dx );
            const Field u = from_function( g, -edge, edge, smooth );
            std::vector< double > out( g.size() );
            NonlocalOperator( k, g ).free_boundary_convolution( u.values, u.support, -edge, edge, out );
            double err = 0.0;
            for ( double x : { -0.5, 0.0, 0.3, 1.0 } )
            {
                const auto i = g.nearest( x );
                err = std::max( err, std::abs( out[i] - oracle::convolve( J, smooth, g.node( i ), -edge, edge ) ) );
            }
            errors.push_back( err );
        }
        CHECK( errors[0] / errors[1] >= 3.0 );
        CHECK( errors[1] / errors[2] >= 3.0 );
    }

    TEST_CASE( "support mismatch" )
    {
        const Grid g = build_grid( -4.0, 4.0, 0.05 );
        Field      u = constant_on( g, -1.0, 1.0, 1.0 );
        CHECK_THROWS_AS( apply_free_boundary_diffusion( u, -1.5, 1.0, box, 1.0, g ), SupportMismatch );
        CHECK_THROWS_AS( front_flux( u, -1.0, 1.5, box, g, Side::Right ), SupportMismatch );
    }
}
