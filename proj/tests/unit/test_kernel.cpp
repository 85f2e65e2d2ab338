#include "frontera/errors.hpp"
#include "frontera/kernel.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace frontera;

namespace {

struct Family
{
    Kernel          kernel;
    oracle::Density density;
};

std::vector< Family > families()
{
    return { { Kernel::uniform_box( 1.0 ), { "box", 1.0 } },
             { Kernel::triangular( 2.0 ), { "triangle", 2.0 } },
             { Kernel::truncated_gaussian( 1.5, 0.6 ), { "gaussian", 1.5, 0.6 } } };
}

} // namespace

TEST_SUITE( "kernel" )
{
    TEST_CASE( "point values" )
    {
        CHECK( Kernel::uniform_box( 1.0 ).eval( 0.0 ) == doctest::Approx( 0.5 ).epsilon( 1e-15 ) );
        CHECK( Kernel::uniform_box( 1.0 ).eval( 1.5 ) == 0.0 );
        CHECK( Kernel::triangular( 2.0 ).eval( 0.0 ) == doctest::Approx( 0.5 ).epsilon( 1e-15 ) );
        for ( const auto& f : families() )
        {
            for ( double z : { 0.0, 0.3, -0.7, 0.99 * f.kernel.sigma() } )
                CHECK( f.kernel.eval( z ) == doctest::Approx( f.density( z ) ).epsilon( 1e-10 ) );
            CHECK( f.kernel.eval( 1.01 * f.kernel.sigma() ) == 0.0 );
        }
    }

    TEST_CASE( "tail mass examples" )
    {
        const Kernel box = Kernel::uniform_box( 1.0 );
        CHECK( box.tail_mass( 0.0, 2.0, Side::Right ) == 0.0 );
        CHECK( box.tail_mass( 0.7, 0.7, Side::Right ) == doctest::Approx( 0.5 ).epsilon( 1e-15 ) );
        CHECK( box.tail_mass( 0.2, 0.7, Side::Right ) == doctest::Approx( 0.25 ).epsilon( 1e-15 ) );
    }

    TEST_CASE( "tail mass matches quadrature oracle" )
    {
        std::mt19937_64                          rng( 7 );
        std::uniform_real_distribution< double > pos( -3.0, 3.0 );
        for ( const auto& f : families() )
        {
            for ( int trial = 0; trial < 40; ++trial )
            {
                const double x = pos( rng ), b = pos( rng );
                CHECK( std::abs( f.kernel.tail_mass( x, b, Side::Right ) - oracle::tail_right( f.density, x, b ) ) < 1e-10 );
            }
        }
    }

    TEST_CASE( "symmetry is exact" )
    {
        std::mt19937_64 rng( 11 );
        for ( const auto& f : families() )
        {
            std::uniform_real_distribution< double > z( -1.2 * f.kernel.sigma(), 1.2 * f.kernel.sigma() );
            for ( int i = 0; i < 1000; ++i )
            {
                const double s = z( rng );
                REQUIRE( f.kernel.eval( s ) == f.kernel.eval( -s ) );
            }
        }
    }

    TEST_CASE( "partition of unity: right + left + interior = 1" )
    {
        std::mt19937_64                          rng( 13 );
        std::uniform_real_distribution< double > pos( -2.0, 2.0 );
        for ( const auto& f : families() )
        {
            for ( int trial = 0; trial < 50; ++trial )
            {
                double lo = pos( rng ), hi = pos( rng ), x = pos( rng );
                if ( lo > hi )
                    std::swap( lo, hi );
                // mass of J(x - y) for y in (lo, hi)
                const double inside = oracle::integrate( f.density, std::max( x - hi, -f.kernel.sigma() ),
                                                         std::min( x - lo, f.kernel.sigma() ), 1e-14,
                                                         f.density.breaks() );
                const double total  = f.kernel.tail_mass( x, hi, Side::Right ) + f.kernel.tail_mass( x, lo, Side::Left )
                                     + std::max( inside, 0.0 );
                CHECK( std::abs( total - 1.0 ) < 1e-9 );
            }
        }
    }

    TEST_CASE( "tail mass monotonicity" )
    {
        for ( const auto& f : families() )
        {
            double prev = 2.0;
            for ( int i = 0; i <= 200; ++i )
            {
                const double b = -2.0 + 0.02 * i;
                const double m = f.kernel.tail_mass( 0.1, b, Side::Right );
                CHECK( m <= prev );
                CHECK( m >= 0.0 );
                prev = m;
            }
            prev = -1.0;
            for ( int i = 0; i <= 200; ++i )
            {
                const double x = -2.0 + 0.02 * i;
                const double m = f.kernel.tail_mass( x, 0.1, Side::Right );
                CHECK( m >= prev );
                CHECK( m <= 1.0 );
                prev = m;
            }
        }
    }

    TEST_CASE( "half first moment" )
    {
        for ( const auto& f : families() )
        {
            const double ref = oracle::integrate( [&]( double z ) { return z * f.density( z ); }, 0.0, f.kernel.sigma() );
            CHECK( f.kernel.half_first_moment() == doctest::Approx( ref ).epsilon( 1e-10 ) );
        }
    }

    TEST_CASE( "cell interaction matches iterated quadrature" )
    {
        for ( const auto& f : families() )
        {
            for ( double h : { 0.05, 0.3 } )
                for ( double c : { 0.0, 0.1, 0.55, 0.95 * f.kernel.sigma(), f.kernel.sigma() + 0.5 * h } )
                    CHECK( std::abs( f.kernel.cell_interaction( c, h ) - oracle::cell_interaction( f.density, c, h ) ) < 1e-11 );
        }
    }

    TEST_CASE( "validation of built-in families" )
    {
        for ( const auto& f : families() )
        {
            const auto report = validate_kernel( f.kernel, 64 );
            CHECK( report.all_passed() );
        }
        CHECK( validate_kernel( Kernel::uniform_box( 1.0 ), 64 ).find( "unit_mass" ).residual < 1e-12 );
    }

    TEST_CASE( "validation flags broken densities" )
    {
        const auto unnormalized = validate_kernel( []( double z ) { return std::abs( z ) <= 1.0 ? 1.0 : 0.0; }, 1.0, 64 );
        CHECK_FALSE( unnormalized.find( "unit_mass" ).passed );
        CHECK( unnormalized.find( "unit_mass" ).measured == doctest::Approx( 2.0 ).epsilon( 1e-12 ) );

        const auto shifted = validate_kernel( []( double z ) { return std::abs( z - 0.2 ) <= 0.8 ? 0.625 : 0.0; }, 1.0, 64 );
        CHECK_FALSE( shifted.find( "symmetry" ).passed );

        CHECK_THROWS_AS( validate_kernel( Kernel::uniform_box( 1.0 ), 8 ), UsageError );
    }

    TEST_CASE( "family names" )
    {
        CHECK( kernel_family_from_string( "triangular" ) == KernelFamily::Triangular );
        CHECK( to_string( KernelFamily::TruncatedGaussian ) == "truncated_gaussian" );
        CHECK_THROWS_AS( kernel_family_from_string( "cauchy" ), UsageError );
        CHECK_THROWS_AS( Kernel::uniform_box( 0.0 ), UsageError );
    }
}
