#include "frontera/nonlocal_op.hpp"

#include "frontera/errors.hpp"

#include <algorithm>
#include <cmath>

namespace frontera {

namespace {

// Piecewise-linear interpolant through nodal values on [first, last), closed
// either by the nodes themselves (v) or by zero-valued anchors at the fronts (u).
struct Profile
{
    const Grid&               grid;
    std::span< const double > values;
    IndexRange                nodes;
    double                    left_pos;
    double                    right_pos;
    bool                      anchored;

    double value_at( double p ) const
    {
        if ( nodes.empty() )
            return 0.0;
        const std::size_t first = nodes.first;
        const std::size_t last  = nodes.last - 1;
        const double      x_f   = grid.node( first );
        const double      x_l   = grid.node( last );
        if ( p <= x_f )
        {
            if ( !anchored )
                return values[first];
            return values[first] * ( p - left_pos ) / ( x_f - left_pos );
        }
        if ( p >= x_l )
        {
            if ( !anchored )
                return values[last];
            return values[last] * ( right_pos - p ) / ( right_pos - x_l );
        }
        auto j = static_cast< std::size_t >( std::floor( ( p - grid.x_min() ) / grid.dx() ) );
        j      = std::clamp( j, first, last - 1 );
        while ( j + 1 < last && grid.node( j + 1 ) < p )
            ++j;
        while ( j > first && grid.node( j ) > p )
            --j;
        const double t = ( p - grid.node( j ) ) / grid.dx();
        return ( 1.0 - t ) * values[j] + t * values[j + 1];
    }

    // Node indices strictly inside (lo, hi), restricted to `nodes`.
    IndexRange inside( double lo, double hi ) const
    {
        if ( nodes.empty() || !( lo < hi ) )
            return {};
        const auto first = static_cast< std::ptrdiff_t >( nodes.first );
        const auto last  = static_cast< std::ptrdiff_t >( nodes.last );

        auto a = static_cast< std::ptrdiff_t >( std::floor( ( lo - grid.x_min() ) / grid.dx() ) );
        a      = std::max( a, first );
        while ( a < last && grid.node( static_cast< std::size_t >( a ) ) <= lo )
            ++a;

        auto b = static_cast< std::ptrdiff_t >( std::ceil( ( hi - grid.x_min() ) / grid.dx() ) );
        b      = std::min( b, last - 1 );
        while ( b >= first && grid.node( static_cast< std::size_t >( b ) ) >= hi )
            --b;

        if ( b < a )
            return {};
        return { static_cast< std::size_t >( a ), static_cast< std::size_t >( b ) + 1 };
    }
};

} // namespace

NonlocalOperator::NonlocalOperator( const Kernel& kernel, const Grid& grid )
: kernel_( kernel )
, grid_( grid )
{
    const auto reach = static_cast< std::size_t >( std::ceil( kernel.sigma() / grid.dx() ) ) + 1;
    offsets_.resize( reach + 1 );
    for ( std::size_t k = 0; k <= reach; ++k )
    {
        offsets_[k] = kernel.eval_inside( static_cast< double >( k ) * grid.dx() );
    }
}

double NonlocalOperator::kernel_at_offset( std::size_t i, std::size_t j ) const
{
    const std::size_t k = i > j ? i - j : j - i;
    return k < offsets_.size() ? offsets_[k] : 0.0;
}

namespace {

// Trapezoid rule for int_lo^hi J(x_i - y) f(y) dy on the partition
// {lo, data nodes strictly inside, hi}.
template < typename KernelAtNode >
double integrate_against_kernel( const Profile& profile,
                                 const Kernel&  kernel,
                                 std::size_t    i,
                                 double         lo,
                                 double         hi,
                                 KernelAtNode&& kernel_at_node )
{
    if ( !( lo < hi ) )
        return 0.0;
    const double x      = profile.grid.node( i );
    double       prev_p = lo;
    double       prev_f = kernel.eval_inside( x - lo ) * profile.value_at( lo );
    double       sum    = 0.0;

    const IndexRange inner = profile.inside( lo, hi );
    for ( std::size_t j = inner.first; j < inner.last; ++j )
    {
        const double p = profile.grid.node( j );
        const double f = kernel_at_node( j ) * profile.values[j];
        sum += 0.5 * ( p - prev_p ) * ( f + prev_f );
        prev_p = p;
        prev_f = f;
    }
    const double f = kernel.eval_inside( x - hi ) * profile.value_at( hi );
    sum += 0.5 * ( hi - prev_p ) * ( f + prev_f );
    return sum;
}

} // namespace

void NonlocalOperator::free_boundary_convolution( std::span< const double > u,
                                                  IndexRange                support,
                                                  double                    left_front,
                                                  double                    right_front,
                                                  std::span< double >       out ) const
{
    const Profile profile{ grid_, u, support, left_front, right_front, true };
    const double  sigma = kernel_.sigma();
    for ( std::size_t i = support.first; i < support.last; ++i )
    {
        const double x  = grid_.node( i );
        const double lo = std::max( left_front, x - sigma );
        const double hi = std::min( right_front, x + sigma );
        out[i]          = integrate_against_kernel( profile, kernel_, i, lo, hi,
                                                    [&]( std::size_t j ) { return kernel_at_offset( i, j ); } );
    }
}

void NonlocalOperator::whole_line_convolution( std::span< const double > v,
                                               FarField                  far_field,
                                               std::span< double >       out ) const
{
    const IndexRange all{ 0, grid_.size() };
    const Profile    profile{ grid_, v, all, grid_.x_min(), grid_.x_max(), false };
    const double     sigma = kernel_.sigma();
    for ( std::size_t i = 0; i < grid_.size(); ++i )
    {
        const double x  = grid_.node( i );
        const double lo = std::max( grid_.x_min(), x - sigma );
        const double hi = std::min( grid_.x_max(), x + sigma );
        double       s  = integrate_against_kernel( profile, kernel_, i, lo, hi,
                                                    [&]( std::size_t j ) { return kernel_at_offset( i, j ); } );
        if ( x - sigma < grid_.x_min() )
        {
            s += far_field.left_value * kernel_.tail_mass( x, grid_.x_min(), Side::Left );
        }
        if ( x + sigma > grid_.x_max() )
        {
            s += far_field.right_value * kernel_.tail_mass( x, grid_.x_max(), Side::Right );
        }
        out[i] = s;
    }
}

double NonlocalOperator::flux( std::span< const double > u,
                               IndexRange                support,
                               double                    left_front,
                               double                    right_front,
                               Side                      side ) const
{
    if ( support.empty() )
        return 0.0;
    const Profile profile{ grid_, u, support, left_front, right_front, true };
    const double  sigma = kernel_.sigma();
    const double  front = side == Side::Right ? right_front : left_front;

    // Only x within sigma of the front carries tail mass.
    const double lo = side == Side::Right ? std::max( left_front, right_front - sigma ) : left_front;
    const double hi = side == Side::Right ? right_front : std::min( right_front, left_front + sigma );
    if ( !( lo < hi ) )
        return 0.0;

    auto integrand = [&]( double x, double ux ) { return ux * kernel_.tail_mass( x, front, side ); };

    double           prev_p = lo;
    double           prev_f = integrand( lo, profile.value_at( lo ) );
    double           sum    = 0.0;
    const IndexRange inner  = profile.inside( lo, hi );
    for ( std::size_t j = inner.first; j < inner.last; ++j )
    {
        const double p = grid_.node( j );
        const double f = integrand( p, u[j] );
        sum += 0.5 * ( p - prev_p ) * ( f + prev_f );
        prev_p = p;
        prev_f = f;
    }
    const double f = integrand( hi, profile.value_at( hi ) );
    sum += 0.5 * ( hi - prev_p ) * ( f + prev_f );
    return sum;
}

namespace {

void require_support( const Field& u, const Grid& grid, double left_front, double right_front )
{
    if ( u.values.size() != grid.size() )
    {
        throw SupportMismatch( "field length does not match grid" );
    }
    const IndexRange expected = active_range( grid, left_front, right_front );
    if ( !( u.support == expected ) && !( u.support.empty() && expected.empty() ) )
    {
        throw SupportMismatch( "u support is not the active range of its fronts" );
    }
}

} // namespace

Field apply_free_boundary_diffusion( const Field&  u,
                                     double        left_front,
                                     double        right_front,
                                     const Kernel& kernel,
                                     double        d,
                                     const Grid&   grid )
{
    require_support( u, grid, left_front, right_front );
    const NonlocalOperator op( kernel, grid );
    Field                  out = Field::zeros( grid );
    out.support                = u.support;
    op.free_boundary_convolution( u.values, u.support, left_front, right_front, out.values );
    for ( std::size_t i = u.support.first; i < u.support.last; ++i )
    {
        out.values[i] = d * ( out.values[i] - u.values[i] );
    }
    return out;
}

Field apply_whole_line_diffusion( const Field& v, const Kernel& kernel, double d, const Grid& grid, FarField far_field )
{
    if ( v.values.size() != grid.size() )
    {
        throw SupportMismatch( "field length does not match grid" );
    }
    const NonlocalOperator op( kernel, grid );
    Field                  out{ std::vector< double >( grid.size() ), { 0, grid.size() } };
    op.whole_line_convolution( v.values, far_field, out.values );
    for ( std::size_t i = 0; i < grid.size(); ++i )
    {
        out.values[i] = d * ( out.values[i] - v.values[i] );
    }
    return out;
}

double front_flux( const Field& u, double left_front, double right_front, const Kernel& kernel, const Grid& grid, Side side )
{
    require_support( u, grid, left_front, right_front );
    const NonlocalOperator op( kernel, grid );
    return op.flux( u.values, u.support, left_front, right_front, side );
}

} // namespace frontera
