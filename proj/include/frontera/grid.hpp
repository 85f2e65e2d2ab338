#pragma once

#include <cstddef>
#include <optional>

namespace frontera {

/// Half-open index interval [first, last).
struct IndexRange
{
    std::size_t first = 0;
    std::size_t last  = 0;

    bool        empty() const { return last <= first; }
    std::size_t size() const { return empty() ? 0 : last - first; }
    bool        contains( std::size_t i ) const { return i >= first && i < last; }

    friend bool operator==( const IndexRange&, const IndexRange& ) = default;
};

/// Uniform lattice x_i = x_min + i dx on the computational window.
///
/// The upper half is measured from x_max, so a symmetric window has exactly
/// mirror-symmetric nodes.
class Grid
{
  public:
    Grid( double x_min, double x_max, double dx );

    double      x_min() const { return x_min_; }
    double      x_max() const { return x_max_; }
    double      dx() const { return dx_; }
    std::size_t size() const { return n_; }
    double      node( std::size_t i ) const
    {
        return 2 * i < n_ ? x_min_ + static_cast< double >( i ) * dx_ : x_max_ - static_cast< double >( n_ - 1 - i ) * dx_;
    }

    /// Node index within tol of x, if any.
    std::optional< std::size_t > lattice_index( double x, double tol ) const;

    /// Index of the node closest to x (clamped to the window).
    std::size_t nearest( double x ) const;

  private:
    double      x_min_;
    double      x_max_;
    double      dx_;
    std::size_t n_;
};

/// Throws NonConformingWindow unless (x_max - x_min)/dx is an integer.
Grid build_grid( double x_min, double x_max, double dx );

/// Nodes strictly inside (left_front, right_front). Nodes that coincide with
/// a front (to within 1e-9 dx) are excluded since u vanishes there.
IndexRange active_range( const Grid& grid, double left_front, double right_front );

} // namespace frontera
