#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace frontera {

enum class KernelFamily
{
    UniformBox,
    Triangular,
    TruncatedGaussian
};

enum class Side
{
    Right,
    Left
};

std::string_view to_string( KernelFamily family );
KernelFamily kernel_family_from_string( std::string_view name );

/// Symmetric, compactly supported dispersal density with unit mass.
///
/// Every family is supported on [-sigma, sigma]. The truncated Gaussian
/// carries an extra standard-deviation parameter `shape` and is renormalized
/// so that its mass on the support is exactly one.
class Kernel
{
  public:
    static Kernel uniform_box( double sigma );
    static Kernel triangular( double sigma );
    static Kernel truncated_gaussian( double sigma, double shape );

    KernelFamily family() const { return family_; }
    double       sigma() const { return sigma_; }
    double       shape() const { return shape_; }

    /// J(z). Zero outside [-sigma, sigma].
    double eval( double z ) const;

    /// J(z) with |z| clamped to sigma. Used at integration limits that sit on
    /// the support boundary, where roundoff could otherwise push z outside.
    double eval_inside( double z ) const;

    /// Cumulative mass of J on (-inf, z].
    double cdf( double z ) const;

    /// Inner integral of the front-flux formula: the mass of J(x - .) lying to
    /// the right of b (Side::Right) or to the left of b (Side::Left).
    double tail_mass( double x, double b, Side side ) const;

    /// int_0^sigma z J(z) dz: mean outward jump length, bounds front speed.
    double half_first_moment() const;

    /// (1/h) int_{-h}^{h} (h - |s|) J(c + s) ds, the cell-to-cell interaction
    /// of two width-h cells whose centres are c apart.
    double cell_interaction( double c, double h ) const;

    /// Points where J or one of its derivatives jumps.
    std::vector< double > breakpoints() const;

  private:
    Kernel( KernelFamily family, double sigma, double shape );

    KernelFamily family_;
    double       sigma_;
    double       shape_;
    double       norm_ = 1.0;
};

struct KernelCheck
{
    std::string name;
    bool        passed;
    double      residual;
    double      measured;
};

struct KernelValidationReport
{
    std::vector< KernelCheck > checks;

    bool all_passed() const;
    const KernelCheck& find( std::string_view name ) const;
};

/// Checks hypothesis (J) for an arbitrary density on [-sigma, sigma]:
/// sampled symmetry, unit mass, positivity at the origin and boundedness.
/// Mass is integrated with composite 5-point Gauss-Legendre on n_quad panels.
KernelValidationReport validate_kernel( const std::function< double( double ) >& density,
                                        double                                   sigma,
                                        int                                      n_quad );

KernelValidationReport validate_kernel( const Kernel& kernel, int n_quad );

} // namespace frontera
