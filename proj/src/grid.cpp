#include "frontera/grid.hpp"

#include "frontera/errors.hpp"

#include <cmath>
#include <sstream>

namespace frontera {

Grid::Grid( double x_min, double x_max, double dx )
: x_min_( x_min )
, x_max_( x_max )
, dx_( dx )
{
    if ( !( x_min < x_max ) || !( dx > 0.0 ) || !std::isfinite( x_min ) || !std::isfinite( x_max ) )
    {
        throw NonConformingWindow( "window needs x_min < x_max and dx > 0" );
    }
    const double ratio = ( x_max - x_min ) / dx;
    const double cells = std::round( ratio );
    if ( cells < 1.0 || std::abs( ratio - cells ) > 1e-12 * cells )
    {
        std::ostringstream msg;
        msg.precision( 17 );
        msg << "window [" << x_min << ", " << x_max << "] is not an integer multiple of dx = " << dx;
        throw NonConformingWindow( msg.str() );
    }
    n_ = static_cast< std::size_t >( cells ) + 1;
}

std::optional< std::size_t > Grid::lattice_index( double x, double tol ) const
{
    const double k = std::round( ( x - x_min_ ) / dx_ );
    if ( k < 0.0 || k > static_cast< double >( n_ - 1 ) )
    {
        return std::nullopt;
    }
    const auto i = static_cast< std::size_t >( k );
    if ( std::abs( node( i ) - x ) > tol )
    {
        return std::nullopt;
    }
    return i;
}

std::size_t Grid::nearest( double x ) const
{
    const double k = std::round( ( x - x_min_ ) / dx_ );
    if ( k <= 0.0 )
        return 0;
    if ( k >= static_cast< double >( n_ - 1 ) )
        return n_ - 1;
    return static_cast< std::size_t >( k );
}

Grid build_grid( double x_min, double x_max, double dx )
{
    return Grid( x_min, x_max, dx );
}

IndexRange active_range( const Grid& grid, double left_front, double right_front )
{
    if ( left_front < grid.x_min() || right_front > grid.x_max() )
    {
        std::ostringstream msg;
        msg.precision( 17 );
        msg << "front left the window: (" << left_front << ", " << right_front << ") not inside ["
            << grid.x_min() << ", " << grid.x_max() << "]";
        throw FrontOutsideWindow( msg.str() );
    }
    if ( !( left_front < right_front ) )
    {
        return {};
    }

    const auto   n   = static_cast< std::ptrdiff_t >( grid.size() );
    const double eps = 1e-9 * grid.dx();

    auto lo = static_cast< std::ptrdiff_t >( std::floor( ( left_front - grid.x_min() ) / grid.dx() ) );
    lo      = std::max< std::ptrdiff_t >( lo - 1, 0 );
    while ( lo < n && !( grid.node( static_cast< std::size_t >( lo ) ) > left_front + eps ) )
        ++lo;

    auto hi = static_cast< std::ptrdiff_t >( std::ceil( ( right_front - grid.x_min() ) / grid.dx() ) );
    hi      = std::min< std::ptrdiff_t >( hi + 1, n - 1 );
    while ( hi >= 0 && !( grid.node( static_cast< std::size_t >( hi ) ) < right_front - eps ) )
        --hi;

    if ( hi < lo )
    {
        return {};
    }
    return { static_cast< std::size_t >( lo ), static_cast< std::size_t >( hi ) + 1 };
}

} // namespace frontera
