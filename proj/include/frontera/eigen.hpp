#pragma once

#include "frontera/errors.hpp"
#include "frontera/kernel.hpp"

#include <cstddef>
#include <vector>

namespace frontera {

/// d (J * phi~ - phi) + a phi = -lambda1 phi on [l1, l2], phi~ the zero extension.
///
/// The interval is split into m = max(2, round((l2 - l1)/dx)) cells of equal
/// width; unknowns are cell averages (piecewise-constant Galerkin).
struct EigenProblem
{
    double d  = 1.0;
    double a  = 0.0;
    double l1 = 0.0;
    double l2 = 1.0;
    double dx = 0.01;
    Kernel kernel = Kernel::uniform_box( 1.0 );

    double      length() const { return l2 - l1; }
    std::size_t cells() const;
    double      cell_width() const { return length() / static_cast< double >( cells() ); }
    double      centre( std::size_t i ) const { return l1 + ( static_cast< double >( i ) + 0.5 ) * cell_width(); }
};

/// Row-major dense matrix; only used for small problems and test oracles.
struct DenseMatrix
{
    std::size_t           rows = 0;
    std::size_t           cols = 0;
    std::vector< double > data;

    double  operator()( std::size_t i, std::size_t j ) const { return data[i * cols + j]; }
    double& operator()( std::size_t i, std::size_t j ) { return data[i * cols + j]; }
};

struct EigenResult
{
    double                lambda1    = 0.0;
    std::vector< double > phi;              // cell values, positive, max-normalized
    double                cell_width = 0.0;
    std::size_t           iterations = 0;
    double                residual   = 0.0; // ||L phi + lambda1 phi||_inf
};

class NoConvergence : public NumericalError
{
  public:
    NoConvergence( std::size_t max_iter, EigenResult best );

    const EigenResult& best() const { return best_; }

  private:
    EigenResult best_;
};

/// Discretized L = d (K - I) + a I. Symmetric Toeplitz; interior rows of K sum to one.
DenseMatrix assemble_operator( const EigenProblem& problem );

/// Principal eigenpair by Perron iteration on the resolvent (s I - (L + d I))^-1
/// with s = d + a, which is entrywise nonnegative and shares the Perron vector
/// of L + d I. Starts from the all-ones vector.
EigenResult principal_eigenpair( const EigenProblem& problem, double tol = 1e-10, std::size_t max_iter = 20000 );

/// -(d <phi, K phi> - d |phi|^2 + a |phi|^2) / |phi|^2 for cell values phi.
double rayleigh_quotient( const std::vector< double >& phi, const EigenProblem& problem );

/// Interval length at which lambda1(d, a, .) changes sign, by bisection to
/// within tol. Requires 0 < a < d.
double critical_length( double d, double a, const Kernel& kernel, double grid_dx, double tol );

/// lambda1 at each length, evaluated concurrently (results in input order).
std::vector< double > eigen_ladder( double d, double a, const Kernel& kernel, double grid_dx, const std::vector< double >& lengths );

} // namespace frontera
