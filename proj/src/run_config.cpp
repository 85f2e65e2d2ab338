#include "frontera/run_config.hpp"

#include "frontera/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace frontera {

std::string_view to_string( Regime regime )
{
    switch ( regime )
    {
        case Regime::Superior:
            return "superior";
        case Regime::Inferior:
            return "inferior";
        case Regime::Mixed:
            return "mixed";
    }
    return "unknown";
}

Regime CompetitionParams::regime() const
{
    const double ratio = a1 / a2;
    if ( ratio > std::max( b1 / b2, c1 / c2 ) )
        return Regime::Superior;
    if ( ratio < std::min( b1 / b2, c1 / c2 ) )
        return Regime::Inferior;
    return Regime::Mixed;
}

std::vector< std::string > CompetitionParams::non_positive_fields() const
{
    const std::pair< const char*, double > fields[] = { { "d1", d1 }, { "d2", d2 }, { "a1", a1 }, { "b1", b1 },
                                                        { "c1", c1 }, { "a2", a2 }, { "b2", b2 }, { "c2", c2 },
                                                        { "mu", mu }, { "h0", h0 } };
    std::vector< std::string > bad;
    for ( const auto& [name, value] : fields )
    {
        if ( !( value > 0.0 ) || !std::isfinite( value ) )
            bad.emplace_back( name );
    }
    return bad;
}

double U0Profile::value_at( double x, double h0 ) const
{
    if ( std::abs( x ) >= h0 )
        return 0.0;
    switch ( shape )
    {
        case U0Shape::Cosine:
            return amplitude * std::cos( std::numbers::pi * x / ( 2.0 * h0 ) );
        case U0Shape::Parabolic:
            return amplitude * ( 1.0 - ( x / h0 ) * ( x / h0 ) );
    }
    return 0.0;
}

double V0Profile::value_at( double x ) const
{
    if ( const auto* c = std::get_if< Constant >( &data ) )
        return c->value;
    const auto& table = std::get< Table >( data );
    if ( x <= table.x.front() )
        return table.v.front();
    if ( x >= table.x.back() )
        return table.v.back();
    const auto   it = std::upper_bound( table.x.begin(), table.x.end(), x );
    const auto   j  = static_cast< std::size_t >( it - table.x.begin() ) - 1;
    const double t  = ( x - table.x[j] ) / ( table.x[j + 1] - table.x[j] );
    return ( 1.0 - t ) * table.v[j] + t * table.v[j + 1];
}

double V0Profile::sup() const
{
    if ( const auto* c = std::get_if< Constant >( &data ) )
        return c->value;
    const auto& v = std::get< Table >( data ).v;
    return *std::max_element( v.begin(), v.end() );
}

double V0Profile::inf() const
{
    if ( const auto* c = std::get_if< Constant >( &data ) )
        return c->value;
    const auto& v = std::get< Table >( data ).v;
    return *std::min_element( v.begin(), v.end() );
}

std::size_t RunConfig::steps() const
{
    return static_cast< std::size_t >( std::llround( horizon / dt ) );
}

double RunConfig::m0() const
{
    const double k0 = std::max( params.a1 / params.b1, params.a2 / params.c2 );
    return std::max( { u0_sup(), v0.sup(), k0 } );
}

double RunConfig::stability_bound() const
{
    const auto& p = params;
    return 0.5 / ( p.d1 + p.d2 + p.a1 + p.a2 + ( p.b1 + p.c1 + p.b2 + p.c2 ) * m0() );
}

double RunConfig::required_half_window( double horizon_used ) const
{
    return params.h0 + params.mu * m0() * kernel.half_first_moment() * horizon_used + kernel.sigma();
}

bool kernels_equal( const Kernel& a, const Kernel& b )
{
    return a.family() == b.family() && a.sigma() == b.sigma() && a.shape() == b.shape();
}

} // namespace frontera
