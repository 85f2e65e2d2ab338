#include "frontera/eigen.hpp"

#include "frontera/parallel.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frontera {

std::size_t EigenProblem::cells() const
{
    const double m = std::round( length() / dx );
    return std::max< std::size_t >( 2, static_cast< std::size_t >( std::max( m, 0.0 ) ) );
}

NoConvergence::NoConvergence( std::size_t max_iter, EigenResult best )
: NumericalError( "principal eigenpair did not converge in " + std::to_string( max_iter )
                  + " iterations (best residual " + std::to_string( best.residual ) + ")" )
, best_( std::move( best ) )
{}

namespace {

void check_problem( const EigenProblem& p )
{
    if ( !( p.l1 < p.l2 ) || !std::isfinite( p.l1 ) || !std::isfinite( p.l2 ) )
    {
        throw EmptyInterval( "eigenproblem interval must satisfy l1 < l2" );
    }
    if ( !( p.dx > 0.0 ) )
    {
        throw UsageError( "eigenproblem dx must be positive" );
    }
}

// Toeplitz band of the cell-interaction matrix K: band[k] = K_{i,i+k}.
std::vector< double > interaction_band( const EigenProblem& p )
{
    const std::size_t     m = p.cells();
    const double          h = p.cell_width();
    std::vector< double > band;
    for ( std::size_t k = 0; k < m; ++k )
    {
        const double c = static_cast< double >( k ) * h;
        if ( c >= p.kernel.sigma() + h )
            break;
        band.push_back( p.kernel.cell_interaction( c, h ) );
    }
    return band;
}

void band_multiply( const std::vector< double >& band, const std::vector< double >& x, std::vector< double >& y )
{
    const std::size_t m  = x.size();
    const std::size_t kd = band.size() - 1;
    for ( std::size_t i = 0; i < m; ++i )
    {
        double s = band[0] * x[i];
        for ( std::size_t k = 1; k <= kd; ++k )
        {
            if ( i >= k )
                s += band[k] * x[i - k];
            if ( i + k < m )
                s += band[k] * x[i + k];
        }
        y[i] = s;
    }
}

// Cholesky factor of I - K in LAPACK upper band storage.
class ResolventSolver
{
  public:
    ResolventSolver( const std::vector< double >& band, std::size_t m )
    : m_( m )
    , kd_( band.size() - 1 )
    , ab_( ( kd_ + 1 ) * m, 0.0 )
    {
        const std::size_t ld = kd_ + 1;
        for ( std::size_t j = 0; j < m; ++j )
        {
            for ( std::size_t k = 0; k <= kd_ && k <= j; ++k )
            {
                const double entry           = ( k == 0 ? 1.0 : 0.0 ) - band[k];
                ab_[( kd_ - k ) + j * ld]    = entry; // row j - k, column j
            }
        }
        const lapack_int info = LAPACKE_dpbtrf( LAPACK_COL_MAJOR, 'U', static_cast< lapack_int >( m_ ),
                                                static_cast< lapack_int >( kd_ ), ab_.data(),
                                                static_cast< lapack_int >( ld ) );
        if ( info != 0 )
        {
            throw NumericalError( "I - K is not positive definite (dpbtrf info " + std::to_string( info ) + ")" );
        }
    }

    void solve( std::vector< double >& rhs ) const
    {
        const lapack_int info = LAPACKE_dpbtrs( LAPACK_COL_MAJOR, 'U', static_cast< lapack_int >( m_ ),
                                                static_cast< lapack_int >( kd_ ), 1, ab_.data(),
                                                static_cast< lapack_int >( kd_ + 1 ), rhs.data(),
                                                static_cast< lapack_int >( m_ ) );
        if ( info != 0 )
        {
            throw NumericalError( "banded solve failed (dpbtrs info " + std::to_string( info ) + ")" );
        }
    }

  private:
    std::size_t           m_;
    std::size_t           kd_;
    std::vector< double > ab_;
};

double dot( const std::vector< double >& a, const std::vector< double >& b )
{
    double s = 0.0;
    for ( std::size_t i = 0; i < a.size(); ++i )
        s += a[i] * b[i];
    return s;
}

} // namespace

DenseMatrix assemble_operator( const EigenProblem& problem )
{
    check_problem( problem );
    const std::size_t m    = problem.cells();
    const auto        band = interaction_band( problem );
    DenseMatrix       mat{ m, m, std::vector< double >( m * m, 0.0 ) };
    for ( std::size_t i = 0; i < m; ++i )
    {
        for ( std::size_t j = 0; j < m; ++j )
        {
            const std::size_t k = i > j ? i - j : j - i;
            if ( k < band.size() )
                mat( i, j ) = problem.d * band[k];
        }
        mat( i, i ) += problem.a - problem.d;
    }
    return mat;
}

EigenResult principal_eigenpair( const EigenProblem& problem, double tol, std::size_t max_iter )
{
    check_problem( problem );
    if ( !( tol > 0.0 ) )
    {
        throw UsageError( "eigen tolerance must be positive" );
    }
    const std::size_t     m    = problem.cells();
    const auto            band = interaction_band( problem );
    const ResolventSolver solver( band, m );

    std::vector< double > x( m, 1.0 );
    std::vector< double > kx( m );
    EigenResult           best;
    best.residual   = std::numeric_limits< double >::infinity();
    best.cell_width = problem.cell_width();

    for ( std::size_t it = 1; it <= max_iter; ++it )
    {
        solver.solve( x );
        const double top = *std::max_element( x.begin(), x.end() );
        for ( double& xi : x )
            xi /= top;

        band_multiply( band, x, kx );
        const double xx    = dot( x, x );
        const double rho   = dot( x, kx ) / xx;
        double       worst = 0.0;
        for ( std::size_t i = 0; i < m; ++i )
            worst = std::max( worst, std::abs( kx[i] - rho * x[i] ) );
        const double residual = problem.d * worst;

        if ( residual < best.residual )
        {
            best.lambda1    = problem.d * ( 1.0 - rho ) - problem.a;
            best.phi        = x;
            best.iterations = it;
            best.residual   = residual;
        }
        if ( residual <= tol )
        {
            return best;
        }
    }
    throw NoConvergence( max_iter, std::move( best ) );
}

double rayleigh_quotient( const std::vector< double >& phi, const EigenProblem& problem )
{
    check_problem( problem );
    if ( phi.size() != problem.cells() )
    {
        throw UsageError( "phi has " + std::to_string( phi.size() ) + " cells, problem has "
                          + std::to_string( problem.cells() ) );
    }
    const double norm2 = dot( phi, phi );
    if ( !( norm2 > 0.0 ) )
    {
        throw ZeroField( "rayleigh quotient of the zero field" );
    }
    const auto            band = interaction_band( problem );
    std::vector< double > kphi( phi.size() );
    band_multiply( band, phi, kphi );
    return -( problem.d * dot( phi, kphi ) / norm2 - problem.d + problem.a );
}

namespace {

double lambda_at_length( double d, double a, const Kernel& kernel, double dx, double length )
{
    const EigenProblem p{ d, a, 0.0, length, dx, kernel };
    return principal_eigenpair( p ).lambda1;
}

} // namespace

double critical_length( double d, double a, const Kernel& kernel, double grid_dx, double tol )
{
    if ( !( a > 0.0 ) || !( a < d ) )
    {
        std::ostringstream msg;
        msg << "critical length needs 0 < a < d (got a = " << a << ", d = " << d << ")";
        throw InvalidRegime( msg.str() );
    }
    if ( !( tol > 0.0 ) )
    {
        throw UsageError( "critical length tolerance must be positive" );
    }

    double lo = tol;
    if ( lambda_at_length( d, a, kernel, grid_dx, lo ) <= 0.0 )
    {
        throw BracketFailure( "lambda1 is already non-positive at the smallest length" );
    }

    const double cap = 1e4 * kernel.sigma();
    double       hi  = kernel.sigma();
    while ( lambda_at_length( d, a, kernel, grid_dx, hi ) >= 0.0 )
    {
        lo = hi;
        hi *= 2.0;
        if ( hi > cap )
        {
            throw BracketFailure( "lambda1 stayed non-negative up to length " + std::to_string( cap )
                                  + "; dx may be too coarse" );
        }
    }

    while ( hi - lo > tol )
    {
        const double mid = 0.5 * ( lo + hi );
        if ( lambda_at_length( d, a, kernel, grid_dx, mid ) > 0.0 )
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * ( lo + hi );
}

std::vector< double > eigen_ladder( double d, double a, const Kernel& kernel, double grid_dx, const std::vector< double >& lengths )
{
    return parallel_map< double >( lengths.size(), [&]( std::size_t i ) {
        return lambda_at_length( d, a, kernel, grid_dx, lengths[i] );
    } );
}

} // namespace frontera
