#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace banet
{

/*! \brief Runs body(k) for k in [0, count) on up to `jobs` threads.

  The range is cut into contiguous blocks, one per worker.  The body must
  only write to slots owned by k; callers merge in index order afterwards,
  so results never depend on `jobs`.  The first exception thrown by any
  worker is rethrown on the calling thread.
*/
template<typename Body>
void parallel_for( std::uint64_t count, std::size_t jobs, Body&& body )
{
  jobs = std::max<std::size_t>( 1, std::min<std::uint64_t>( jobs, count ) );
  if ( jobs == 1 )
  {
    for ( std::uint64_t k = 0; k < count; ++k )
    {
      body( k );
    }
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  const auto block = ( count + jobs - 1 ) / jobs;
  for ( std::size_t w = 0; w < jobs; ++w )
  {
    const auto first = w * block, last = std::min<std::uint64_t>( count, first + block );
    workers.emplace_back( [&, first, last] {
      try
      {
        for ( auto k = first; k < last; ++k )
        {
          body( k );
        }
      }
      catch ( ... )
      {
        std::lock_guard lock( error_mutex );
        if ( !error )
        {
          error = std::current_exception();
        }
      }
    } );
  }
  for ( auto& t : workers )
  {
    t.join();
  }
  if ( error )
  {
    std::rethrow_exception( error );
  }
}

} // namespace banet
