#pragma once

#include <random>
#include <string>
#include <vector>

#include <banet/network.hpp>
#include <banet/truth_table.hpp>

namespace testing_support
{

inline banet::Network copy_xnor_network()
{
  return banet::Network::from_strings( std::vector<std::string>{ "x1", "(!x0 & !x1) | (x0 & x1)" } );
}

inline banet::Network xor_xnor_network()
{
  return banet::Network::from_strings( std::vector<std::string>{ "x0 ^ x1", "!(x0 ^ x1)" } );
}

/// Uniformly random local functions on n automata.
inline banet::Network random_network( std::mt19937_64& rng, std::size_t n )
{
  std::vector<banet::TruthTable> tables;
  for ( std::size_t i = 0; i < n; ++i )
  {
    banet::TruthTable t( n );
    for ( std::uint64_t code = 0; code < t.num_bits(); ++code )
    {
      t.set( code, rng() & 1u );
    }
    tables.push_back( std::move( t ) );
  }
  return banet::Network( std::move( tables ) );
}

} // namespace testing_support
