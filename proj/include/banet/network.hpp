#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "configuration.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "truth_table.hpp"

namespace banet
{

/*! \brief Boolean automata network: n automata, each with a local function of arity n.

  The network is immutable once built; all dynamics are derived from the
  local truth tables.
*/
class Network
{
public:
  Network() = default;

  explicit Network( std::vector<TruthTable> functions )
      : functions_( std::move( functions ) )
  {
    if ( functions_.empty() )
    {
      throw std::invalid_argument( "a network needs at least one automaton" );
    }
    require_state_bits( functions_.size(), max_state_bits(), "network" );
    for ( const auto& f : functions_ )
    {
      if ( f.arity() != functions_.size() )
      {
        throw std::invalid_argument( "local function arity " + std::to_string( f.arity() ) +
                                     " does not match network size " + std::to_string( functions_.size() ) );
      }
    }
  }

  /// Builds a network of size formulas.size() by compiling each formula.
  static Network from_formulas( std::span<const Formula> formulas )
  {
    std::vector<TruthTable> tables;
    tables.reserve( formulas.size() );
    for ( const auto& f : formulas )
    {
      tables.push_back( compile( f, formulas.size() ) );
    }
    return Network( std::move( tables ) );
  }

  static Network from_strings( std::span<const std::string> formulas )
  {
    std::vector<Formula> parsed;
    for ( const auto& text : formulas )
    {
      parsed.push_back( parse_formula( text, formulas.size() ) );
    }
    return from_formulas( parsed );
  }

  std::size_t size() const noexcept { return functions_.size(); }
  const TruthTable& function( std::size_t i ) const { return functions_.at( i ); }
  const std::vector<TruthTable>& functions() const noexcept { return functions_; }

  /// f_i at the configuration encoded by `code`.
  bool local( std::size_t i, state_code code ) const noexcept { return functions_[i][code]; }

  /// Mask of automata i with f_i(x) != x_i.
  automaton_mask disagreement( state_code code ) const noexcept
  {
    automaton_mask d = 0;
    for ( std::size_t i = 0; i < functions_.size(); ++i )
    {
      if ( functions_[i][code] != static_cast<bool>( ( code >> i ) & 1u ) )
      {
        d |= automaton_mask{ 1 } << i;
      }
    }
    return d;
  }

  /// F_W on codes: automata in `w` take their local value, the others keep theirs.
  state_code update_code( state_code code, automaton_mask w ) const noexcept
  {
    return code ^ ( disagreement( code ) & w );
  }

  state_code parallel_code( state_code code ) const noexcept { return code ^ disagreement( code ); }

  automaton_mask all_automata() const noexcept
  {
    return functions_.size() >= 32 ? ~automaton_mask{ 0 } : ( automaton_mask{ 1 } << functions_.size() ) - 1;
  }

  state_code num_configurations() const noexcept { return state_code{ 1 } << functions_.size(); }

  friend bool operator==( const Network&, const Network& ) = default;

private:
  std::vector<TruthTable> functions_;
};

/*! \brief x with every automaton in W negated. */
inline Configuration flip( Configuration x, std::span<const std::size_t> w )
{
  for ( auto i : w )
  {
    if ( i >= x.size() )
    {
      throw std::out_of_range( "automaton " + std::to_string( i ) + " out of range for size " + std::to_string( x.size() ) );
    }
  }
  // a set: repeated ids flip once
  std::vector<std::size_t> ids( w.begin(), w.end() );
  std::sort( ids.begin(), ids.end() );
  ids.erase( std::unique( ids.begin(), ids.end() ), ids.end() );
  for ( auto i : ids )
  {
    x.flip( i );
  }
  return x;
}

/// Exact non-negative rational in lowest terms.
struct Rational
{
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make( std::uint64_t num, std::uint64_t den )
  {
    if ( den == 0 )
    {
      throw std::invalid_argument( "zero denominator" );
    }
    const auto g = std::gcd( num, den );
    return g ? Rational{ num / g, den / g } : Rational{ 0, 1 };
  }

  std::string to_string() const { return num == 0 ? "0" : den == 1 ? std::to_string( num ) : std::to_string( num ) + "/" + std::to_string( den ); }

  friend bool operator==( const Rational&, const Rational& ) = default;
};

/// Fraction of automata at state 1.
inline Rational density( const Configuration& x )
{
  if ( x.empty() )
  {
    throw std::invalid_argument( "density of an empty configuration" );
  }
  return Rational::make( x.weight(), x.size() );
}

inline void check_configuration( const Network& net, const Configuration& x )
{
  if ( x.size() != net.size() )
  {
    throw std::invalid_argument( "configuration of size " + std::to_string( x.size() ) + " used with a network of size " +
                                 std::to_string( net.size() ) );
  }
}

/*! \brief F_W(x): automata of W read the pre-state x and take f_i(x); the rest keep x_i. */
inline Configuration update( const Network& net, const Configuration& x, std::span<const std::size_t> w )
{
  check_configuration( net, x );
  const auto mask = ids_to_mask( w, net.size() );
  return Configuration::from_code( net.update_code( static_cast<state_code>( x.code() ), mask ), net.size() );
}

/// F_V(x), every automaton updated at once.
inline Configuration parallel_step( const Network& net, const Configuration& x )
{
  check_configuration( net, x );
  return Configuration::from_code( net.parallel_code( static_cast<state_code>( x.code() ) ), net.size() );
}

/*! \brief Interaction graph G = (V, A) with (j, i) in A iff j effectively influences i. */
struct InteractionGraph
{
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs; ///< (j, i), sorted

  bool has_arc( std::size_t from, std::size_t to ) const
  {
    return std::binary_search( arcs.begin(), arcs.end(), std::make_pair( from, to ) );
  }

  std::vector<std::size_t> in_neighbours( std::size_t i ) const
  {
    std::vector<std::size_t> out;
    for ( const auto& [j, t] : arcs )
    {
      if ( t == i )
      {
        out.push_back( j );
      }
    }
    return out;
  }

  friend bool operator==( const InteractionGraph&, const InteractionGraph& ) = default;
};

inline InteractionGraph interaction_graph( const Network& net )
{
  InteractionGraph g{ net.size(), {} };
  for ( std::size_t j = 0; j < net.size(); ++j )
  {
    for ( std::size_t i = 0; i < net.size(); ++i )
    {
      if ( effectively_influences( net.function( i ), j ) )
      {
        g.arcs.emplace_back( j, i );
      }
    }
  }
  std::sort( g.arcs.begin(), g.arcs.end() );
  return g;
}

enum class NetworkMonotony
{
  Monotone,
  PartiallyNonMonotone,
  TotallyNonMonotone
};

inline const char* to_string( NetworkMonotony m )
{
  switch ( m )
  {
  case NetworkMonotony::Monotone: return "Monotone";
  case NetworkMonotony::PartiallyNonMonotone: return "PartiallyNonMonotone";
  case NetworkMonotony::TotallyNonMonotone: return "TotallyNonMonotone";
  }
  return "?";
}

/*! \brief Per-input monotonicity verdicts of every local function plus the network class. */
struct MonotonicityReport
{
  std::vector<std::vector<Monotonicity>> verdicts; ///< verdicts[i][j]: f_i in input j
  NetworkMonotony network = NetworkMonotony::Monotone;

  bool function_is_monotone( std::size_t i ) const
  {
    return std::none_of( verdicts.at( i ).begin(), verdicts[i].end(), []( auto v ) { return v == Monotonicity::NonMonotone; } );
  }
};

inline MonotonicityReport monotonicity_report( const Network& net )
{
  MonotonicityReport r;
  std::size_t non_monotone = 0;
  for ( std::size_t i = 0; i < net.size(); ++i )
  {
    auto& row = r.verdicts.emplace_back();
    for ( std::size_t j = 0; j < net.size(); ++j )
    {
      row.push_back( local_monotonicity( net.function( i ), j ) );
    }
    if ( !r.function_is_monotone( i ) )
    {
      ++non_monotone;
    }
  }
  r.network = non_monotone == 0             ? NetworkMonotony::Monotone
              : non_monotone == net.size() ? NetworkMonotony::TotallyNonMonotone
                                           : NetworkMonotony::PartiallyNonMonotone;
  return r;
}

inline NetworkMonotony classify_monotony( const Network& net )
{
  return monotonicity_report( net ).network;
}

/*! \brief Relabels automata: automaton i of `net` becomes automaton perm[i].

  The result g satisfies g_{perm[i]}(y) = f_i(x) where y_{perm[i]} = x_i.
*/
inline Network relabel( const Network& net, std::span<const std::size_t> perm )
{
  const auto n = net.size();
  if ( perm.size() != n )
  {
    throw std::invalid_argument( "permutation size does not match network size" );
  }
  std::vector<bool> seen( n, false );
  for ( auto p : perm )
  {
    if ( p >= n || seen[p] )
    {
      throw std::invalid_argument( "not a permutation" );
    }
    seen[p] = true;
  }
  std::vector<TruthTable> tables( n, TruthTable( n ) );
  for ( state_code x = 0; x < net.num_configurations(); ++x )
  {
    state_code y = 0;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( x >> i ) & 1u )
      {
        y |= state_code{ 1 } << perm[i];
      }
    }
    for ( std::size_t i = 0; i < n; ++i )
    {
      tables[perm[i]].set( y, net.local( i, x ) );
    }
  }
  return Network( std::move( tables ) );
}

} // namespace banet
