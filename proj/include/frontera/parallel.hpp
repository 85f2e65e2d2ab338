#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace frontera {

/// Worker cap: FRONTERA_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline std::size_t worker_count()
{
    if ( const char* env = std::getenv( "FRONTERA_THREADS" ) )
    {
        try
        {
            const long n = std::stol( env );
            if ( n > 0 )
                return static_cast< std::size_t >( n );
        }
        catch ( const std::exception& )
        {
        }
    }
    return std::max( 1u, std::thread::hardware_concurrency() );
}

/// Evaluates fn(0..n-1) on up to worker_count() threads. Results are stored
/// by index, so the output does not depend on scheduling. The first exception
/// thrown by any task is rethrown.
template < typename Result, typename Fn >
std::vector< Result > parallel_map( std::size_t n, Fn&& fn )
{
    std::vector< Result > out( n );
    const std::size_t     workers = std::min( worker_count(), n );
    if ( workers <= 1 )
    {
        for ( std::size_t i = 0; i < n; ++i )
            out[i] = fn( i );
        return out;
    }

    std::atomic< std::size_t > next{ 0 };
    std::exception_ptr         error;
    std::mutex                 error_mutex;
    {
        std::vector< std::jthread > pool;
        for ( std::size_t w = 0; w < workers; ++w )
        {
            pool.emplace_back( [&] {
                for ( std::size_t i = next++; i < n; i = next++ )
                {
                    try
                    {
                        out[i] = fn( i );
                    }
                    catch ( ... )
                    {
                        std::lock_guard lock( error_mutex );
                        if ( !error )
                            error = std::current_exception();
                    }
                }
            } );
        }
    }
    if ( error )
        std::rethrow_exception( error );
    return out;
}

} // namespace frontera
