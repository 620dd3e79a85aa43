#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "configuration.hpp"
#include "errors.hpp"

namespace banet
{

/*! \brief Boolean function of `arity` inputs stored as 2^arity packed bits.

  Entry `code` holds f(x) for the configuration x with encode(x) = code,
  encode(x) = sum_i x_i * 2^i.
*/
class TruthTable
{
public:
  TruthTable() = default;

  explicit TruthTable( std::size_t arity )
      : arity_( arity )
  {
    require_state_bits( arity, max_state_bits(), "truth table" );
    words_.assign( num_bits() <= 64 ? 1 : num_bits() / 64, 0u );
  }

  /// Table of arity <= 6 built from the low 2^arity bits of `bits`.
  static TruthTable from_word( std::size_t arity, std::uint64_t bits )
  {
    if ( arity > 6 )
    {
      throw std::invalid_argument( "from_word needs arity <= 6" );
    }
    TruthTable t( arity );
    t.words_[0] = bits & t.last_word_mask();
    return t;
  }

  std::size_t arity() const noexcept { return arity_; }
  std::uint64_t num_bits() const noexcept { return std::uint64_t{ 1 } << arity_; }

  bool operator[]( std::uint64_t code ) const noexcept
  {
    return ( words_[code / 64] >> ( code % 64 ) ) & 1u;
  }

  bool get( std::uint64_t code ) const
  {
    if ( code >= num_bits() )
    {
      throw std::out_of_range( "truth table index out of range" );
    }
    return ( *this )[code];
  }

  void set( std::uint64_t code, bool value = true )
  {
    if ( code >= num_bits() )
    {
      throw std::out_of_range( "truth table index out of range" );
    }
    const auto bit = std::uint64_t{ 1 } << ( code % 64 );
    if ( value )
    {
      words_[code / 64] |= bit;
    }
    else
    {
      words_[code / 64] &= ~bit;
    }
  }

  std::uint64_t count_ones() const noexcept
  {
    std::uint64_t c = 0;
    for ( auto w : words_ )
    {
      c += static_cast<std::uint64_t>( std::popcount( w ) );
    }
    return c;
  }

  TruthTable operator~() const
  {
    TruthTable t = *this;
    for ( auto& w : t.words_ )
    {
      w = ~w;
    }
    t.words_.back() &= t.last_word_mask();
    return t;
  }

  /// Low 64 bits of the table; the whole table for arity <= 6.
  std::uint64_t first_word() const noexcept { return words_.empty() ? 0u : words_[0]; }

  /// Bits rendered with index 0 first.
  std::string to_string() const
  {
    std::string s( num_bits(), '0' );
    for ( std::uint64_t c = 0; c < num_bits(); ++c )
    {
      if ( ( *this )[c] )
      {
        s[c] = '1';
      }
    }
    return s;
  }

  friend bool operator==( const TruthTable&, const TruthTable& ) = default;

private:
  std::uint64_t last_word_mask() const noexcept
  {
    return num_bits() >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << num_bits() ) - 1;
  }

  std::size_t arity_ = 0;
  std::vector<std::uint64_t> words_{ 0u };
};

/*! \brief Effective influence: true iff some x has f(x) != f(x with bit j flipped). */
inline bool effectively_influences( const TruthTable& f, std::size_t j )
{
  if ( j >= f.arity() )
  {
    throw std::out_of_range( "input " + std::to_string( j ) + " out of range for arity " + std::to_string( f.arity() ) );
  }
  const std::uint64_t bit = std::uint64_t{ 1 } << j;
  for ( std::uint64_t c = 0; c < f.num_bits(); ++c )
  {
    if ( !( c & bit ) && f[c] != f[c | bit] )
    {
      return true;
    }
  }
  return false;
}

enum class Monotonicity
{
  Increasing,
  Decreasing,
  Independent,
  NonMonotone
};

inline const char* to_string( Monotonicity m )
{
  switch ( m )
  {
  case Monotonicity::Increasing: return "Increasing";
  case Monotonicity::Decreasing: return "Decreasing";
  case Monotonicity::Independent: return "Independent";
  case Monotonicity::NonMonotone: return "NonMonotone";
  }
  return "?";
}

/*! \brief Local monotonicity of f in input j.

  Compares f(..., 0, ...) with f(..., 1, ...) at every position of the other
  inputs.  An input on which f does not depend is Independent rather than
  both Increasing and Decreasing.
*/
inline Monotonicity local_monotonicity( const TruthTable& f, std::size_t j )
{
  if ( j >= f.arity() )
  {
    throw std::out_of_range( "input " + std::to_string( j ) + " out of range for arity " + std::to_string( f.arity() ) );
  }
  const std::uint64_t bit = std::uint64_t{ 1 } << j;
  bool rises = false, falls = false;
  for ( std::uint64_t c = 0; c < f.num_bits() && !( rises && falls ); ++c )
  {
    if ( c & bit )
    {
      continue;
    }
    const bool lo = f[c], hi = f[c | bit];
    rises |= !lo && hi;
    falls |= lo && !hi;
  }
  if ( rises && falls )
  {
    return Monotonicity::NonMonotone;
  }
  if ( rises )
  {
    return Monotonicity::Increasing;
  }
  if ( falls )
  {
    return Monotonicity::Decreasing;
  }
  return Monotonicity::Independent;
}

} // namespace banet
