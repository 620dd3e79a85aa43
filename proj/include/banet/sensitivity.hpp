#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "configuration.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "network.hpp"
#include "parallel.hpp"

namespace banet
{

inline constexpr std::size_t max_sensitivity_bits = 12;
inline constexpr std::size_t max_enumeration_bits = 3;
inline constexpr std::size_t max_isomorphism_bits = 8;

enum class SensitivityLevel
{
  L0,
  L1circ,
  L1bullet,
  L2
};

/// "0", "1circ", "1bullet" or "2".
inline const char* to_string( SensitivityLevel level )
{
  switch ( level )
  {
  case SensitivityLevel::L0: return "0";
  case SensitivityLevel::L1circ: return "1circ";
  case SensitivityLevel::L1bullet: return "1bullet";
  case SensitivityLevel::L2: return "2";
  }
  return "?";
}

/// A synchronous transition (from, to) of the general graph with the update sets (|W| > 1) producing it.
struct SynchronousTransition
{
  state_code from = 0;
  state_code to = 0;
  std::vector<automaton_mask> update_sets;
};

/*! \brief Outcome of comparing the asynchronous graph G_a with the general graph G_g.

  Every flag is kept alongside the single level so that consumers can apply
  a different precedence between 1circ and 1bullet.
*/
struct SensitivityReport
{
  std::size_t n = 0;
  SensitivityLevel level = SensitivityLevel::L0;

  bool lost_recurrence = false;    ///< some G_a-recurrent configuration is transient in G_g
  bool partition_changed = false;  ///< common recurrent configurations are grouped differently
  bool gained_recurrence = false;  ///< some G_a-transient configuration is recurrent in G_g
  bool attractor_growth = false;   ///< some transient configuration reaches more attractors in G_g

  std::vector<SynchronousTransition> witnesses; ///< non-sequentialisable synchronous transitions (truncated)
  std::size_t non_sequentialisable_count = 0;
  std::vector<state_code> lost_recurrent;
  std::vector<state_code> gained_recurrent;
  std::vector<state_code> growth_witnesses;
  std::vector<std::string> anomalies;

  AttractorSet asynchronous;
  AttractorSet general;
};

namespace detail
{

/// Reachability sets of every node, propagated over the condensation as bitsets.
class ReachabilityClosure
{
public:
  explicit ReachabilityClosure( const TransitionGraph& tg )
      : scc_( strongly_connected_components( tg ) ), words_( ( tg.num_configurations() + 63 ) / 64 )
  {
    bits_.assign( scc_.members.size() * words_, 0u );
    for ( std::size_t c = 0; c < scc_.members.size(); ++c )
    {
      auto* row = &bits_[c * words_];
      for ( auto v : scc_.members[c] )
      {
        row[v / 64] |= std::uint64_t{ 1 } << ( v % 64 );
        tg.for_each_successor( v, [&]( state_code w ) {
          const auto cw = scc_.component[w];
          if ( cw != c )
          {
            const auto* other = &bits_[cw * words_];
            for ( std::size_t k = 0; k < words_; ++k )
            {
              row[k] |= other[k];
            }
          }
        } );
      }
    }
  }

  bool reaches( state_code from, state_code to ) const
  {
    const auto* row = &bits_[scc_.component[from] * words_];
    return ( row[to / 64] >> ( to % 64 ) ) & 1u;
  }

private:
  SccDecomposition scc_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

inline bool async_reachable( const TransitionGraph& async, state_code from, state_code to )
{
  std::vector<bool> seen( async.num_configurations(), false );
  std::deque<state_code> queue{ from };
  seen[from] = true;
  while ( !queue.empty() )
  {
    const auto v = queue.front();
    queue.pop_front();
    if ( v == to )
    {
      return true;
    }
    async.for_each_successor( v, [&]( state_code w ) {
      if ( !seen[w] )
      {
        seen[w] = true;
        queue.push_back( w );
      }
    } );
  }
  return false;
}

} // namespace detail

/*! \brief Whether the general-graph transition (x, y) can be replayed by asynchronous steps.

  Throws std::invalid_argument when (x, y) is not a transition of G_g.
*/
inline bool is_sequentialisable( const Network& net, const Configuration& x, const Configuration& y )
{
  check_configuration( net, x );
  check_configuration( net, y );
  require_state_bits( net.size(), max_state_bits(), "sequentialisability check" );
  const auto from = static_cast<state_code>( x.code() ), to = static_cast<state_code>( y.code() );
  const auto s = from ^ to;
  if ( s & ~net.disagreement( from ) || ( s == 0 && net.disagreement( from ) == net.all_automata() ) )
  {
    throw std::invalid_argument( "(" + x.to_string() + ", " + y.to_string() + ") is not a transition of the general graph" );
  }
  return detail::async_reachable( TransitionGraph( net, UpdateMode::Asynchronous ), from, to );
}

struct SensitivityOptions
{
  std::size_t max_witnesses = 1024;
};

/*! \brief Synchronism-sensitivity level of a network.

  Builds G_a and G_g, compares their recurrent sets, their attractor
  partitions over the common recurrent configurations and the attractors
  reachable from transient configurations, then applies the precedence
  L2 > L1bullet > L1circ > L0.
*/
inline SensitivityReport classify_sensitivity( const Network& net, const SensitivityOptions& options = {} )
{
  require_state_bits( net.size(), max_sensitivity_bits, "sensitivity classification" );
  const TransitionGraph ga( net, UpdateMode::Asynchronous ), gg( net, UpdateMode::General );
  const auto async = analyse_attractors( ga );
  const auto general = analyse_attractors( gg );
  const auto count = ga.num_configurations();

  SensitivityReport r;
  r.n = net.size();

  // non-sequentialisable synchronous transitions
  const detail::ReachabilityClosure closure( ga );
  for ( state_code x = 0; x < count; ++x )
  {
    gg.for_each_successor( x, [&]( state_code y ) {
      const auto s = x ^ y;
      if ( std::popcount( s ) <= 1 && ga.has_arc( x, y ) )
      {
        return; // also an asynchronous arc
      }
      if ( closure.reaches( x, y ) )
      {
        return;
      }
      ++r.non_sequentialisable_count;
      if ( r.witnesses.size() < options.max_witnesses )
      {
        SynchronousTransition t{ x, y, {} };
        for ( auto w : gg.labels( x, y ) )
        {
          if ( std::popcount( w ) > 1 )
          {
            t.update_sets.push_back( w );
          }
        }
        r.witnesses.push_back( std::move( t ) );
      }
    } );
  }

  for ( state_code x = 0; x < count; ++x )
  {
    const bool ra = async.set.recurrent( x ), rg = general.set.recurrent( x );
    if ( ra && !rg )
    {
      r.lost_recurrent.push_back( x );
    }
    if ( !ra && rg )
    {
      r.gained_recurrent.push_back( x );
    }
    if ( !ra && !rg && general.reachable( x ).size() > async.reachable( x ).size() )
    {
      r.growth_witnesses.push_back( x );
    }
  }

  // partitions over configurations recurrent in both graphs
  std::vector<state_code> common;
  for ( state_code x = 0; x < count; ++x )
  {
    if ( async.set.recurrent( x ) && general.set.recurrent( x ) )
    {
      common.push_back( x );
    }
  }
  bool merged = false;
  for ( std::size_t a = 0; a < common.size() && !r.partition_changed; ++a )
  {
    for ( std::size_t b = a + 1; b < common.size(); ++b )
    {
      const bool same_a = async.set.attractor_of[common[a]] == async.set.attractor_of[common[b]];
      const bool same_g = general.set.attractor_of[common[a]] == general.set.attractor_of[common[b]];
      if ( same_a != same_g )
      {
        r.partition_changed = true;
        merged = same_g;
        break;
      }
    }
  }

  r.lost_recurrence = !r.lost_recurrent.empty();
  r.gained_recurrence = !r.gained_recurrent.empty();
  r.attractor_growth = !r.growth_witnesses.empty();

  if ( r.partition_changed && !r.lost_recurrence )
  {
    r.anomalies.push_back( merged ? "asynchronous attractors merge in the general graph without loss of recurrence"
                                  : "asynchronous attractor splits in the general graph without loss of recurrence" );
  }

  if ( r.lost_recurrence || r.partition_changed )
  {
    r.level = SensitivityLevel::L2;
  }
  else if ( r.gained_recurrence )
  {
    r.level = SensitivityLevel::L1bullet;
  }
  else if ( r.attractor_growth )
  {
    r.level = SensitivityLevel::L1circ;
  }
  r.asynchronous = async.set;
  r.general = general.set;
  return r;
}

/*! \brief All networks of size n, each n-tuple of arity-n truth tables exactly once.

  Network number k has f_i = the truth table whose bits are base-2^(2^n)
  digit i of k (f_0 least significant).  There are 256
  networks of size 2.
*/
class NetworkEnumeration
{
public:
  explicit NetworkEnumeration( std::size_t n )
      : n_( n )
  {
    if ( n == 0 )
    {
      throw std::invalid_argument( "network size must be at least 1" );
    }
    require_state_bits( n, max_enumeration_bits, "network enumeration" );
  }

  std::size_t network_size() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{ 1 } << ( n_ << n_ ); }

  Network operator[]( std::uint64_t index ) const
  {
    if ( index >= size() )
    {
      throw std::out_of_range( "network index out of range" );
    }
    const std::size_t digit_bits = std::size_t{ 1 } << n_;
    const std::uint64_t digit_mask = ( std::uint64_t{ 1 } << digit_bits ) - 1;
    std::vector<TruthTable> tables;
    for ( std::size_t i = 0; i < n_; ++i )
    {
      tables.push_back( TruthTable::from_word( n_, ( index >> ( i * digit_bits ) ) & digit_mask ) );
    }
    return Network( std::move( tables ) );
  }

  /// Inverse of operator[].
  std::uint64_t index_of( const Network& net ) const
  {
    if ( net.size() != n_ )
    {
      throw std::invalid_argument( "network size mismatch" );
    }
    const std::size_t digit_bits = std::size_t{ 1 } << n_;
    std::uint64_t index = 0;
    for ( std::size_t i = 0; i < n_; ++i )
    {
      index |= net.function( i ).first_word() << ( i * digit_bits );
    }
    return index;
  }

  class iterator
  {
  public:
    using value_type = Network;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator( const NetworkEnumeration* owner, std::uint64_t index ) : owner_( owner ), index_( index ) {}

    Network operator*() const { return ( *owner_ )[index_]; }
    iterator& operator++()
    {
      ++index_;
      return *this;
    }
    iterator operator++( int )
    {
      auto copy = *this;
      ++index_;
      return copy;
    }
    std::uint64_t index() const noexcept { return index_; }
    friend bool operator==( const iterator& a, const iterator& b ) { return a.index_ == b.index_; }

  private:
    const NetworkEnumeration* owner_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return { this, 0 }; }
  iterator end() const { return { this, size() }; }

private:
  std::size_t n_;
};

inline NetworkEnumeration enumerate_networks( std::size_t n )
{
  return NetworkEnumeration( n );
}

struct ClassifiedNetwork
{
  std::uint64_t index = 0;
  Network network;
  SensitivityLevel level = SensitivityLevel::L0;
  NetworkMonotony monotony = NetworkMonotony::Monotone;
};

/// Level and monotony class of every network of size n, indexed like enumerate_networks(n).
struct SweepTable
{
  std::size_t n = 0;
  std::vector<SensitivityLevel> level;
  std::vector<NetworkMonotony> monotony;
};

/*! \brief Classifies every network of size n; results in index order regardless of `jobs`. */
inline SweepTable sweep_table( std::size_t n, std::size_t jobs = 1 )
{
  const auto networks = enumerate_networks( n );
  SweepTable table{ n, std::vector<SensitivityLevel>( networks.size() ), std::vector<NetworkMonotony>( networks.size() ) };
  parallel_for( networks.size(), jobs, [&]( std::uint64_t k ) {
    const auto net = networks[k];
    table.level[k] = classify_sensitivity( net, { 0 } ).level;
    table.monotony[k] = classify_monotony( net );
  } );
  return table;
}

inline std::vector<ClassifiedNetwork> sweep_networks( std::size_t n, std::size_t jobs = 1 )
{
  const auto networks = enumerate_networks( n );
  const auto table = sweep_table( n, jobs );
  std::vector<ClassifiedNetwork> out;
  out.reserve( networks.size() );
  for ( std::uint64_t k = 0; k < networks.size(); ++k )
  {
    out.push_back( { k, networks[k], table.level[k], table.monotony[k] } );
  }
  return out;
}

/*! \brief Level-2 networks of the smallest size n <= max_n that has any. */
inline std::vector<ClassifiedNetwork> find_minimal_level2( std::size_t max_n, std::size_t jobs = 1 )
{
  require_state_bits( max_n, max_enumeration_bits, "minimal level-2 search" );
  for ( std::size_t n = 1; n <= max_n; ++n )
  {
    const auto networks = enumerate_networks( n );
    std::vector<char> level2( networks.size(), 0 );
    parallel_for( networks.size(), jobs, [&]( std::uint64_t k ) {
      level2[k] = classify_sensitivity( networks[k], { 0 } ).level == SensitivityLevel::L2;
    } );
    std::vector<ClassifiedNetwork> found;
    for ( std::uint64_t k = 0; k < networks.size(); ++k )
    {
      if ( level2[k] )
      {
        auto net = networks[k];
        const auto monotony = classify_monotony( net );
        found.push_back( { k, std::move( net ), SensitivityLevel::L2, monotony } );
      }
    }
    if ( !found.empty() )
    {
      return found;
    }
  }
  return {};
}

/*! \brief A relabelling perm with relabel(a, perm) == b, if one exists. */
inline std::optional<std::vector<std::size_t>> find_isomorphism( const Network& a, const Network& b )
{
  if ( a.size() != b.size() )
  {
    throw std::invalid_argument( "networks of different sizes" );
  }
  require_state_bits( a.size(), max_isomorphism_bits, "isomorphism search" );
  std::vector<std::size_t> perm( a.size() );
  for ( std::size_t i = 0; i < perm.size(); ++i )
  {
    perm[i] = i;
  }
  do
  {
    if ( relabel( a, perm ) == b )
    {
      return perm;
    }
  } while ( std::next_permutation( perm.begin(), perm.end() ) );
  return std::nullopt;
}

inline bool networks_isomorphic( const Network& a, const Network& b )
{
  return find_isomorphism( a, b ).has_value();
}

} // namespace banet
