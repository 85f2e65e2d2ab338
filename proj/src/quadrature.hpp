#pragma once

#include <array>

namespace frontera::detail {

// 5-point Gauss-Legendre on [-1, 1]; exact for polynomials of degree <= 9.
inline constexpr std::array< double, 5 > gl5_nodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269 };
inline constexpr std::array< double, 5 > gl5_weights = {
    0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
    0.4786286704993664680412915, 0.2369268850561890875142640 };

template < typename F >
double gauss_legendre5( F&& f, double lo, double hi )
{
    const double half = 0.5 * ( hi - lo );
    const double mid  = 0.5 * ( hi + lo );
    double       sum  = 0.0;
    for ( std::size_t k = 0; k < gl5_nodes.size(); ++k )
    {
        sum += gl5_weights[k] * f( mid + half * gl5_nodes[k] );
    }
    return half * sum;
}

} // namespace frontera::detail
