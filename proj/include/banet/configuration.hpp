#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace banet
{

/*! \brief Compact encoding of a configuration of at most 32 automata.

  Bit i holds the state of automaton i (little-endian), which is also the
  row index into a truth table.
*/
using state_code = std::uint32_t;

/*! \brief A set of automata encoded as a bit mask (bit i set iff i is in the set). */
using automaton_mask = std::uint32_t;

/*! \brief Global state x = (x_0, ..., x_{n-1}) of a network, packed into 64-bit words.

  Bits beyond size() are kept zero so that equality and hashing operate on
  the raw words.  Rendering writes x_0 first.
*/
class Configuration
{
public:
  Configuration() = default;

  explicit Configuration( std::size_t n )
      : size_( n ), words_( ( n + 63 ) / 64, 0u )
  {
  }

  static Configuration from_string( std::string_view bits )
  {
    Configuration x( bits.size() );
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      if ( bits[i] == '1' )
      {
        x.set( i );
      }
      else if ( bits[i] != '0' )
      {
        throw parse_error( "invalid character in configuration", i, { "'0'", "'1'" } );
      }
    }
    return x;
  }

  static Configuration from_code( std::uint64_t code, std::size_t n )
  {
    assert( n <= 64 );
    Configuration x( n );
    if ( n > 0 )
    {
      x.words_[0] = n == 64 ? code : code & ( ( std::uint64_t{ 1 } << n ) - 1 );
    }
    return x;
  }

  /// The configuration with automaton i alone at state 1.
  static Configuration unit( std::size_t n, std::size_t i )
  {
    Configuration x( n );
    x.set( i );
    return x;
  }

  static Configuration ones( std::size_t n )
  {
    Configuration x( n );
    for ( auto& w : x.words_ )
    {
      w = ~std::uint64_t{ 0 };
    }
    x.trim();
    return x;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[]( std::size_t i ) const noexcept
  {
    return ( words_[i / 64] >> ( i % 64 ) ) & 1u;
  }

  bool test( std::size_t i ) const
  {
    check_index( i );
    return ( *this )[i];
  }

  void set( std::size_t i, bool value = true )
  {
    check_index( i );
    const auto bit = std::uint64_t{ 1 } << ( i % 64 );
    if ( value )
    {
      words_[i / 64] |= bit;
    }
    else
    {
      words_[i / 64] &= ~bit;
    }
  }

  void flip( std::size_t i )
  {
    check_index( i );
    words_[i / 64] ^= std::uint64_t{ 1 } << ( i % 64 );
  }

  /// Number of automata at state 1.
  std::size_t weight() const noexcept
  {
    std::size_t w = 0;
    for ( auto word : words_ )
    {
      w += static_cast<std::size_t>( std::popcount( word ) );
    }
    return w;
  }

  bool none() const noexcept
  {
    for ( auto word : words_ )
    {
      if ( word )
      {
        return false;
      }
    }
    return true;
  }

  std::uint64_t code() const
  {
    if ( size_ > 64 )
    {
      throw std::out_of_range( "configuration too large to encode in 64 bits" );
    }
    return words_.empty() ? 0u : words_[0];
  }

  Configuration& operator^=( const Configuration& other )
  {
    check_same_size( other );
    for ( std::size_t w = 0; w < words_.size(); ++w )
    {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }

  friend Configuration operator^( Configuration lhs, const Configuration& rhs )
  {
    lhs ^= rhs;
    return lhs;
  }

  /*! \brief Cyclic rotation with result_i = x_{(i + shift) mod n}.

    Runs on whole words: the result is (x >> shift) | (x << (n - shift)).
  */
  Configuration rotated( std::size_t shift ) const
  {
    if ( size_ == 0 )
    {
      return *this;
    }
    shift %= size_;
    if ( shift == 0 )
    {
      return *this;
    }
    Configuration out( size_ );
    const auto count = words_.size();
    {
      const auto ws = shift / 64, bs = shift % 64;
      for ( std::size_t w = 0; w + ws < count; ++w )
      {
        auto value = words_[w + ws] >> bs;
        if ( bs && w + ws + 1 < count )
        {
          value |= words_[w + ws + 1] << ( 64 - bs );
        }
        out.words_[w] = value;
      }
    }
    {
      const auto up = size_ - shift;
      const auto ws = up / 64, bs = up % 64;
      for ( std::size_t w = ws; w < count; ++w )
      {
        auto value = words_[w - ws] << bs;
        if ( bs && w - ws >= 1 )
        {
          value |= words_[w - ws - 1] >> ( 64 - bs );
        }
        out.words_[w] |= value;
      }
    }
    out.trim();
    return out;
  }

  /// Concatenation (x, y).
  Configuration concat( const Configuration& tail ) const
  {
    Configuration out( size_ + tail.size_ );
    for ( std::size_t i = 0; i < size_; ++i )
    {
      out.set( i, ( *this )[i] );
    }
    for ( std::size_t i = 0; i < tail.size_; ++i )
    {
      out.set( size_ + i, tail[i] );
    }
    return out;
  }

  /// Sub-configuration (x_first, ..., x_{first+length-1}).
  Configuration slice( std::size_t first, std::size_t length ) const
  {
    if ( first + length > size_ )
    {
      throw std::out_of_range( "slice exceeds configuration size" );
    }
    Configuration out( length );
    for ( std::size_t i = 0; i < length; ++i )
    {
      out.set( i, ( *this )[first + i] );
    }
    return out;
  }

  std::vector<std::size_t> support() const
  {
    std::vector<std::size_t> ids;
    for ( std::size_t w = 0; w < words_.size(); ++w )
    {
      for ( auto word = words_[w]; word; word &= word - 1 )
      {
        ids.push_back( w * 64 + static_cast<std::size_t>( std::countr_zero( word ) ) );
      }
    }
    return ids;
  }

  std::string to_string() const
  {
    std::string s( size_, '0' );
    for ( std::size_t i = 0; i < size_; ++i )
    {
      if ( ( *this )[i] )
      {
        s[i] = '1';
      }
    }
    return s;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::size_t hash() const noexcept
  {
    std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
    for ( auto word : words_ )
    {
      h ^= word + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
    }
    return static_cast<std::size_t>( h );
  }

  friend bool operator==( const Configuration&, const Configuration& ) = default;

private:
  void check_index( std::size_t i ) const
  {
    if ( i >= size_ )
    {
      throw std::out_of_range( "automaton " + std::to_string( i ) + " out of range for size " + std::to_string( size_ ) );
    }
  }

  void check_same_size( const Configuration& other ) const
  {
    if ( other.size_ != size_ )
    {
      throw std::invalid_argument( "configuration sizes differ" );
    }
  }

  void trim() noexcept
  {
    if ( size_ % 64 )
    {
      words_.back() &= ( std::uint64_t{ 1 } << ( size_ % 64 ) ) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Renders a code as the binary string x_0 ... x_{n-1}.
inline std::string code_to_string( std::uint64_t code, std::size_t n )
{
  std::string s( n, '0' );
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( ( code >> i ) & 1u )
    {
      s[i] = '1';
    }
  }
  return s;
}

/// Orders codes by their rendered strings (x_0 is the most significant character).
inline bool string_order_less( state_code a, state_code b, std::size_t n ) noexcept
{
  for ( std::size_t i = 0; i < n; ++i )
  {
    const bool ba = ( a >> i ) & 1u, bb = ( b >> i ) & 1u;
    if ( ba != bb )
    {
      return !ba;
    }
  }
  return false;
}

inline std::vector<std::size_t> mask_to_ids( automaton_mask mask )
{
  std::vector<std::size_t> ids;
  for ( ; mask; mask &= mask - 1 )
  {
    ids.push_back( static_cast<std::size_t>( std::countr_zero( mask ) ) );
  }
  return ids;
}

inline automaton_mask ids_to_mask( std::span<const std::size_t> ids, std::size_t n )
{
  automaton_mask mask = 0;
  for ( auto i : ids )
  {
    if ( i >= n )
    {
      throw std::out_of_range( "automaton " + std::to_string( i ) + " out of range for size " + std::to_string( n ) );
    }
    mask |= automaton_mask{ 1 } << i;
  }
  return mask;
}

/*! \brief Renders an update set as `i` for a singleton and `{i,j,...}` otherwise. */
inline std::string format_update_set( automaton_mask mask )
{
  const auto ids = mask_to_ids( mask );
  if ( ids.size() == 1 )
  {
    return std::to_string( ids.front() );
  }
  std::string s = "{";
  for ( std::size_t k = 0; k < ids.size(); ++k )
  {
    s += ( k ? "," : "" ) + std::to_string( ids[k] );
  }
  return s + "}";
}

/// Orders update sets by size, then by their sorted member lists.
inline bool update_set_less( automaton_mask a, automaton_mask b ) noexcept
{
  const auto pa = std::popcount( a ), pb = std::popcount( b );
  if ( pa != pb )
  {
    return pa < pb;
  }
  // same size: the first differing member decides, lower id first
  const auto diff = a ^ b;
  if ( !diff )
  {
    return false;
  }
  const auto lowest = diff & ( ~diff + 1 );
  return ( a & lowest ) != 0;
}

} // namespace banet

template<>
struct std::hash<banet::Configuration>
{
  std::size_t operator()( const banet::Configuration& x ) const noexcept { return x.hash(); }
};
