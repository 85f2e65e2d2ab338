#include "frontera/kernel.hpp"

#include "frontera/errors.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace frontera {

std::string_view to_string( KernelFamily family )
{
    switch ( family )
    {
        case KernelFamily::UniformBox:
            return "uniform_box";
        case KernelFamily::Triangular:
            return "triangular";
        case KernelFamily::TruncatedGaussian:
            return "truncated_gaussian";
    }
    return "unknown";
}

KernelFamily kernel_family_from_string( std::string_view name )
{
    if ( name == "uniform_box" )
        return KernelFamily::UniformBox;
    if ( name == "triangular" )
        return KernelFamily::Triangular;
    if ( name == "truncated_gaussian" )
        return KernelFamily::TruncatedGaussian;
    throw UsageError( "unknown kernel family '" + std::string( name ) + "'" );
}

Kernel::Kernel( KernelFamily family, double sigma, double shape )
: family_( family )
, sigma_( sigma )
, shape_( shape )
{
    if ( !( sigma > 0.0 ) || !std::isfinite( sigma ) )
    {
        throw UsageError( "kernel sigma must be positive and finite" );
    }
    if ( family == KernelFamily::TruncatedGaussian )
    {
        if ( !( shape > 0.0 ) || !std::isfinite( shape ) )
        {
            throw UsageError( "truncated_gaussian shape must be positive and finite" );
        }
        const double a = shape * std::numbers::sqrt2;
        norm_          = std::sqrt( std::numbers::pi ) * a * std::erf( sigma / a );
    }
}

Kernel Kernel::uniform_box( double sigma )
{
    return Kernel( KernelFamily::UniformBox, sigma, 0.0 );
}

Kernel Kernel::triangular( double sigma )
{
    return Kernel( KernelFamily::Triangular, sigma, 0.0 );
}

Kernel Kernel::truncated_gaussian( double sigma, double shape )
{
    return Kernel( KernelFamily::TruncatedGaussian, sigma, shape );
}

double Kernel::eval( double z ) const
{
    const double r = std::abs( z );
    if ( r > sigma_ )
    {
        return 0.0;
    }
    return eval_inside( r );
}

double Kernel::eval_inside( double z ) const
{
    const double r = std::min( std::abs( z ), sigma_ );
    switch ( family_ )
    {
        case KernelFamily::UniformBox:
            return 0.5 / sigma_;
        case KernelFamily::Triangular:
            return ( sigma_ - r ) / ( sigma_ * sigma_ );
        case KernelFamily::TruncatedGaussian:
            return std::exp( -0.5 * ( r / shape_ ) * ( r / shape_ ) ) / norm_;
    }
    return 0.0;
}

double Kernel::cdf( double z ) const
{
    if ( z <= -sigma_ )
        return 0.0;
    if ( z >= sigma_ )
        return 1.0;
    switch ( family_ )
    {
        case KernelFamily::UniformBox:
            return 0.5 * ( z + sigma_ ) / sigma_;
        case KernelFamily::Triangular:
        {
            const double s2 = sigma_ * sigma_;
            if ( z <= 0.0 )
            {
                return 0.5 * ( sigma_ + z ) * ( sigma_ + z ) / s2;
            }
            return 1.0 - 0.5 * ( sigma_ - z ) * ( sigma_ - z ) / s2;
        }
        case KernelFamily::TruncatedGaussian:
        {
            const double a = shape_ * std::numbers::sqrt2;
            const double e = std::erf( sigma_ / a );
            return 0.5 * ( std::erf( z / a ) + e ) / e;
        }
    }
    return 0.0;
}

double Kernel::tail_mass( double x, double b, Side side ) const
{
    // Right: int_b^inf J(x - y) dy = P(x - b).  Left: int_-inf^b = P(b - x).
    const double z = side == Side::Right ? x - b : b - x;
    return cdf( z );
}

double Kernel::half_first_moment() const
{
    switch ( family_ )
    {
        case KernelFamily::UniformBox:
            return 0.25 * sigma_;
        case KernelFamily::Triangular:
            return sigma_ / 6.0;
        case KernelFamily::TruncatedGaussian:
            return shape_ * shape_ * ( 1.0 - std::exp( -0.5 * ( sigma_ / shape_ ) * ( sigma_ / shape_ ) ) )
                   / norm_;
    }
    return 0.0;
}

std::vector< double > Kernel::breakpoints() const
{
    if ( family_ == KernelFamily::Triangular )
    {
        return { -sigma_, 0.0, sigma_ };
    }
    return { -sigma_, sigma_ };
}

double Kernel::cell_interaction( double c, double h ) const
{
    if ( std::abs( c ) >= sigma_ + h )
    {
        return 0.0;
    }
    // Integrand (h - |s|) J(c + s) is polynomial between breakpoints for the
    // box and triangle, so Gauss-Legendre on each piece is exact.
    std::vector< double > cuts = { -h, 0.0, h };
    for ( double bp : breakpoints() )
    {
        const double s = bp - c;
        if ( s > -h && s < h )
        {
            cuts.push_back( s );
        }
    }
    std::sort( cuts.begin(), cuts.end() );

    double total = 0.0;
    for ( std::size_t k = 0; k + 1 < cuts.size(); ++k )
    {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        if ( hi <= lo )
            continue;
        const double mid = 0.5 * ( lo + hi );
        if ( std::abs( c + mid ) > sigma_ )
            continue;
        total += detail::gauss_legendre5(
            [&]( double s ) { return ( h - std::abs( s ) ) * eval_inside( c + s ); }, lo, hi );
    }
    return total / h;
}

bool KernelValidationReport::all_passed() const
{
    return std::all_of( checks.begin(), checks.end(), []( const KernelCheck& c ) { return c.passed; } );
}

const KernelCheck& KernelValidationReport::find( std::string_view name ) const
{
    for ( const auto& c : checks )
    {
        if ( c.name == name )
            return c;
    }
    throw UsageError( "no kernel check named '" + std::string( name ) + "'" );
}

KernelValidationReport validate_kernel( const std::function< double( double ) >& density,
                                        double                                   sigma,
                                        int                                      n_quad )
{
    if ( n_quad < 16 )
    {
        throw UsageError( "validate_kernel needs n_quad >= 16" );
    }

    double sym_residual = 0.0;
    double sup          = 0.0;
    bool   finite       = true;
    for ( int k = 0; k <= n_quad; ++k )
    {
        const double z  = sigma * k / n_quad;
        const double jp = density( z );
        const double jm = density( -z );
        finite          = finite && std::isfinite( jp ) && std::isfinite( jm );
        sym_residual    = std::max( sym_residual, std::abs( jp - jm ) );
        sup             = std::max( { sup, std::abs( jp ), std::abs( jm ) } );
    }

    const double panel = 2.0 * sigma / n_quad;
    double       mass  = 0.0;
    for ( int k = 0; k < n_quad; ++k )
    {
        const double lo = -sigma + k * panel;
        mass += detail::gauss_legendre5( density, lo, lo + panel );
    }

    const double j0 = density( 0.0 );

    KernelValidationReport report;
    const double mass_residual = std::abs( mass - 1.0 );
    report.checks.push_back(
        { "symmetry", finite && sym_residual <= 1e-12 * std::max( sup, 1.0 ), sym_residual, sym_residual } );
    report.checks.push_back( { "unit_mass", mass_residual <= 1e-10, mass_residual, mass } );
    report.checks.push_back( { "positive_at_origin", j0 > 0.0, j0 > 0.0 ? 0.0 : -j0, j0 } );
    report.checks.push_back( { "bounded", finite, finite ? 0.0 : sup, sup } );
    return report;
}

KernelValidationReport validate_kernel( const Kernel& kernel, int n_quad )
{
    return validate_kernel( [&kernel]( double z ) { return kernel.eval( z ); }, kernel.sigma(), n_quad );
}

} // namespace frontera
