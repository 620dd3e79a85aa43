#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include <banet/dynamics.hpp>
#include <banet/network.hpp>

namespace testing_support
{

/// Successor sets built straight from F_W, one update set at a time.
inline std::vector<std::set<std::uint32_t>> definitional_successors( const banet::Network& net, banet::UpdateMode mode )
{
  const auto n = net.size();
  const std::uint32_t count = std::uint32_t{ 1 } << n;
  std::vector<std::uint32_t> sets;
  switch ( mode )
  {
  case banet::UpdateMode::General:
    for ( std::uint32_t w = 1; w < count; ++w ) sets.push_back( w );
    break;
  case banet::UpdateMode::Asynchronous:
    for ( std::size_t i = 0; i < n; ++i ) sets.push_back( std::uint32_t{ 1 } << i );
    break;
  case banet::UpdateMode::Parallel:
    sets.push_back( count - 1 );
    break;
  }
  std::vector<std::set<std::uint32_t>> succ( count );
  for ( std::uint32_t x = 0; x < count; ++x )
  {
    for ( auto w : sets )
    {
      std::uint32_t y = x;
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( ( w >> i ) & 1u )
        {
          y = net.local( i, x ) ? ( y | ( 1u << i ) ) : ( y & ~( 1u << i ) );
        }
      }
      succ[x].insert( y );
    }
  }
  return succ;
}

/// reach[x][y]: y is reachable from x in zero or more steps.
inline std::vector<std::vector<bool>> reachability( const std::vector<std::set<std::uint32_t>>& succ )
{
  const auto count = succ.size();
  std::vector<std::vector<bool>> reach( count, std::vector<bool>( count, false ) );
  for ( std::size_t s = 0; s < count; ++s )
  {
    std::vector<std::uint32_t> stack{ static_cast<std::uint32_t>( s ) };
    reach[s][s] = true;
    while ( !stack.empty() )
    {
      const auto v = stack.back();
      stack.pop_back();
      for ( auto w : succ[v] )
      {
        if ( !reach[s][w] )
        {
          reach[s][w] = true;
          stack.push_back( w );
        }
      }
    }
  }
  return reach;
}

/*! \brief Attractors by the recurrence definition.

  x is recurrent iff every y reachable from x reaches x back; recurrent
  configurations are grouped by mutual reachability.  Each attractor is
  returned as its ascending list of codes, and the list is sorted.
*/
inline std::vector<std::vector<std::uint32_t>> oracle_attractors( const banet::Network& net, banet::UpdateMode mode )
{
  const auto reach = reachability( definitional_successors( net, mode ) );
  const auto count = reach.size();
  std::vector<bool> recurrent( count, true );
  for ( std::size_t x = 0; x < count; ++x )
  {
    for ( std::size_t y = 0; y < count; ++y )
    {
      if ( reach[x][y] && !reach[y][x] )
      {
        recurrent[x] = false;
        break;
      }
    }
  }
  std::vector<bool> placed( count, false );
  std::vector<std::vector<std::uint32_t>> out;
  for ( std::size_t x = 0; x < count; ++x )
  {
    if ( !recurrent[x] || placed[x] )
    {
      continue;
    }
    std::vector<std::uint32_t> members;
    for ( std::size_t y = x; y < count; ++y )
    {
      if ( recurrent[y] && reach[x][y] )
      {
        members.push_back( static_cast<std::uint32_t>( y ) );
        placed[y] = true;
      }
    }
    out.push_back( std::move( members ) );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

/// The library's attractors in the oracle's normal form.
inline std::vector<std::vector<std::uint32_t>> normalised_attractors( const banet::AttractorSet& set )
{
  std::vector<std::vector<std::uint32_t>> out;
  for ( const auto& a : set.attractors )
  {
    std::vector<std::uint32_t> members( a.members.begin(), a.members.end() );
    std::sort( members.begin(), members.end() );
    out.push_back( std::move( members ) );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

} // namespace testing_support
