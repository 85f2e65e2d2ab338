#pragma once

#include "frontera/grid.hpp"
#include "frontera/kernel.hpp"

#include <span>
#include <vector>

namespace frontera {

/// Nodal density aligned with a Grid. `values` always spans the whole grid;
/// for u-fields every entry outside `support` is zero.
struct Field
{
    std::vector< double > values;
    IndexRange            support;

    static Field zeros( const Grid& grid ) { return { std::vector< double >( grid.size(), 0.0 ), {} }; }
};

/// Constant values assumed for v beyond the left and right window edges.
struct FarField
{
    double left_value  = 0.0;
    double right_value = 0.0;
};

/// Quadrature engine for the nonlocal terms of the model on a fixed grid.
///
/// u is represented by its nodal values on the active range plus a linear
/// ramp to zero at the exact (off-lattice) front positions; v by its nodal
/// values on the whole window. Integrals against J(x - .) use the trapezoid
/// rule on the union of data breakpoints and the kernel support limits
/// x +- sigma, so both the front ramps and the kernel's compact support are
/// resolved without snapping to the lattice.
class NonlocalOperator
{
  public:
    NonlocalOperator( const Kernel& kernel, const Grid& grid );

    const Kernel& kernel() const { return kernel_; }
    const Grid&   grid() const { return grid_; }

    /// out_i = int_{left}^{right} J(x_i - y) u(y) dy on the active range;
    /// out is left untouched elsewhere.
    void free_boundary_convolution( std::span< const double > u,
                                    IndexRange                support,
                                    double                    left_front,
                                    double                    right_front,
                                    std::span< double >       out ) const;

    /// out_i = int_R J(x_i - y) v(y) dy with v extended by the far-field
    /// constants outside the window.
    void whole_line_convolution( std::span< const double > v, FarField far_field, std::span< double > out ) const;

    /// int_{left}^{right} u(x) * tail_mass(x, front, side) dx, without mu.
    double flux( std::span< const double > u,
                 IndexRange                support,
                 double                    left_front,
                 double                    right_front,
                 Side                      side ) const;

  private:
    double kernel_at_offset( std::size_t i, std::size_t j ) const;

    Kernel                kernel_;
    Grid                  grid_;
    std::vector< double > offsets_; // J(k dx), k = 0..reach
};

/// d * (int_{g}^{h} J(x - y) u(y) dy - u) on the active range, zero elsewhere.
Field apply_free_boundary_diffusion( const Field&  u,
                                     double        left_front,
                                     double        right_front,
                                     const Kernel& kernel,
                                     double        d,
                                     const Grid&   grid );

/// d * (int_R J(x - y) v(y) dy - v) with constant far-field closure.
Field apply_whole_line_diffusion( const Field& v, const Kernel& kernel, double d, const Grid& grid, FarField far_field );

/// Front flux double integral (Right feeds h', Left feeds g'), before mu.
double front_flux( const Field& u, double left_front, double right_front, const Kernel& kernel, const Grid& grid, Side side );

} // namespace frontera
