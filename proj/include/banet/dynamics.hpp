#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "configuration.hpp"
#include "errors.hpp"
#include "network.hpp"

namespace banet
{

enum class UpdateMode
{
  General,
  Asynchronous,
  Parallel
};

inline const char* to_string( UpdateMode mode )
{
  switch ( mode )
  {
  case UpdateMode::General: return "general";
  case UpdateMode::Asynchronous: return "asynchronous";
  case UpdateMode::Parallel: return "parallel";
  }
  return "?";
}

inline constexpr std::size_t max_general_label_bits = 16;

/// One arc of a transition graph with every update set W that produces it.
struct TransitionArc
{
  state_code source = 0;
  state_code target = 0;
  std::vector<automaton_mask> labels;

  friend bool operator==( const TransitionArc&, const TransitionArc& ) = default;
};

/*! \brief Transition graph of a network under one updating mode.

  Stored compactly: for each configuration x only the disagreement mask
  D(x) = {i : f_i(x) != x_i} is kept.  Since F_W(x) = x xor (D(x) & W),
  the general-mode images of x are x xor S for S a subset of D(x), the
  asynchronous images are x xor {i} for i in D(x), and the parallel image is
  x xor D(x).  A self-loop exists whenever some non-empty W misses D(x).
  Arcs and their labels are generated on demand in ascending order.
*/
class TransitionGraph
{
public:
  TransitionGraph( const Network& net, UpdateMode mode )
      : n_( net.size() ), mode_( mode )
  {
    require_state_bits( n_, max_state_bits(), "transition graph" );
    if ( mode == UpdateMode::General )
    {
      require_state_bits( n_, max_general_label_bits, "general transition graph" );
    }
    diff_.resize( net.num_configurations() );
    for ( state_code x = 0; x < net.num_configurations(); ++x )
    {
      diff_[x] = net.disagreement( x );
    }
  }

  UpdateMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return n_; }
  state_code num_configurations() const noexcept { return static_cast<state_code>( diff_.size() ); }
  automaton_mask disagreement( state_code x ) const { return diff_.at( x ); }
  automaton_mask all_automata() const noexcept { return ( automaton_mask{ 1 } << n_ ) - 1; }

  /// Calls fn(target) once per distinct successor of x, targets ascending.
  template<typename Fn>
  void for_each_successor( state_code x, Fn&& fn ) const
  {
    const auto d = diff_[x];
    const bool loop = d != all_automata();
    switch ( mode_ )
    {
    case UpdateMode::Parallel:
      fn( x ^ d );
      return;
    case UpdateMode::Asynchronous:
    {
      std::vector<state_code> targets;
      if ( loop )
      {
        targets.push_back( x );
      }
      for ( auto m = d; m; m &= m - 1 )
      {
        targets.push_back( x ^ ( m & ( ~m + 1 ) ) );
      }
      std::sort( targets.begin(), targets.end() );
      for ( auto t : targets )
      {
        fn( t );
      }
      return;
    }
    case UpdateMode::General:
    {
      std::vector<state_code> targets;
      // submasks of d, including the empty one only when a self-loop exists
      for ( automaton_mask s = d;; s = ( s - 1 ) & d )
      {
        if ( s || loop )
        {
          targets.push_back( x ^ s );
        }
        if ( !s )
        {
          break;
        }
      }
      std::sort( targets.begin(), targets.end() );
      for ( auto t : targets )
      {
        fn( t );
      }
      return;
    }
    }
  }

  std::vector<state_code> successors( state_code x ) const
  {
    std::vector<state_code> out;
    for_each_successor( x, [&]( state_code t ) { out.push_back( t ); } );
    return out;
  }

  /*! \brief Update sets W of this mode with F_W(x) = y, ordered by size then members.

    Empty when (x, y) is not an arc.
  */
  std::vector<automaton_mask> labels( state_code x, state_code y ) const
  {
    const auto d = diff_.at( x );
    const auto s = x ^ y;
    std::vector<automaton_mask> out;
    if ( s & ~d )
    {
      return out;
    }
    switch ( mode_ )
    {
    case UpdateMode::Parallel:
      if ( s == d )
      {
        out.push_back( all_automata() );
      }
      break;
    case UpdateMode::Asynchronous:
      if ( s == 0 )
      {
        for ( auto m = all_automata() & ~d; m; m &= m - 1 )
        {
          out.push_back( m & ( ~m + 1 ) );
        }
      }
      else if ( std::has_single_bit( s ) )
      {
        out.push_back( s );
      }
      break;
    case UpdateMode::General:
    {
      const auto free = all_automata() & ~d;
      for ( automaton_mask t = free;; t = ( t - 1 ) & free )
      {
        if ( s | t )
        {
          out.push_back( s | t );
        }
        if ( !t )
        {
          break;
        }
      }
      std::sort( out.begin(), out.end(), update_set_less );
      break;
    }
    }
    return out;
  }

  bool has_arc( state_code x, state_code y ) const { return !labels( x, y ).empty(); }

  /// Number of labelled transitions leaving x (n in asynchronous mode, 2^n - 1 in general mode).
  std::uint64_t labelled_out_degree( state_code x ) const
  {
    switch ( mode_ )
    {
    case UpdateMode::Parallel: return 1;
    case UpdateMode::Asynchronous: return n_;
    case UpdateMode::General: return ( std::uint64_t{ 1 } << n_ ) - 1;
    }
    (void)x;
    return 0;
  }

  /// All arcs, sources ascending then targets ascending, with their labels.
  std::vector<TransitionArc> arcs() const
  {
    std::vector<TransitionArc> out;
    for ( state_code x = 0; x < num_configurations(); ++x )
    {
      for_each_successor( x, [&]( state_code y ) { out.push_back( { x, y, labels( x, y ) } ); } );
    }
    return out;
  }

private:
  std::size_t n_;
  UpdateMode mode_;
  std::vector<automaton_mask> diff_;
};

inline TransitionGraph build_graph( const Network& net, UpdateMode mode )
{
  return TransitionGraph( net, mode );
}

/*! \brief Strongly connected components of a graph on nodes 0..count-1.

  Components are numbered in the order Tarjan's algorithm completes them,
  which is a reverse topological order of the condensation: every arc leaving
  component c goes to a component with a smaller number.
*/
struct SccDecomposition
{
  std::vector<std::uint32_t> component;           ///< component of each node
  std::vector<std::vector<state_code>> members;   ///< nodes of each component, ascending
  std::vector<bool> terminal;                     ///< no arc leaves the component
};

template<typename Successors>
SccDecomposition strongly_connected_components( std::size_t count, Successors&& successors_of )
{
  constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
  // compressed adjacency
  std::vector<std::size_t> offsets( count + 1, 0 );
  std::vector<state_code> targets;
  for ( std::size_t v = 0; v < count; ++v )
  {
    successors_of( static_cast<state_code>( v ), [&]( state_code t ) { targets.push_back( t ); } );
    offsets[v + 1] = targets.size();
  }

  SccDecomposition scc;
  scc.component.assign( count, unvisited );
  std::vector<std::uint32_t> index( count, unvisited ), low( count, 0 );
  std::vector<bool> on_stack( count, false );
  std::vector<state_code> stack;
  std::vector<std::pair<state_code, std::size_t>> call; // node, next edge
  std::uint32_t next_index = 0;

  for ( std::size_t root = 0; root < count; ++root )
  {
    if ( index[root] != unvisited )
    {
      continue;
    }
    call.emplace_back( static_cast<state_code>( root ), offsets[root] );
    index[root] = low[root] = next_index++;
    stack.push_back( static_cast<state_code>( root ) );
    on_stack[root] = true;
    while ( !call.empty() )
    {
      auto& [v, edge] = call.back();
      if ( edge < offsets[v + 1] )
      {
        const auto w = targets[edge++];
        if ( index[w] == unvisited )
        {
          index[w] = low[w] = next_index++;
          stack.push_back( w );
          on_stack[w] = true;
          call.emplace_back( w, offsets[w] );
        }
        else if ( on_stack[w] )
        {
          low[v] = std::min( low[v], index[w] );
        }
        continue;
      }
      const auto node = v;
      call.pop_back();
      if ( !call.empty() )
      {
        auto parent = call.back().first;
        low[parent] = std::min( low[parent], low[node] );
      }
      if ( low[node] == index[node] )
      {
        const auto id = static_cast<std::uint32_t>( scc.members.size() );
        auto& group = scc.members.emplace_back();
        state_code w;
        do
        {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.component[w] = id;
          group.push_back( w );
        } while ( w != node );
        std::sort( group.begin(), group.end() );
      }
    }
  }

  scc.terminal.assign( scc.members.size(), true );
  for ( std::size_t v = 0; v < count; ++v )
  {
    for ( auto e = offsets[v]; e < offsets[v + 1]; ++e )
    {
      if ( scc.component[targets[e]] != scc.component[v] )
      {
        scc.terminal[scc.component[v]] = false;
      }
    }
  }
  return scc;
}

inline SccDecomposition strongly_connected_components( const TransitionGraph& tg )
{
  return strongly_connected_components( tg.num_configurations(),
                                        [&]( state_code x, auto&& emit ) { tg.for_each_successor( x, emit ); } );
}

enum class AttractorKind
{
  StableConfiguration,
  StableOscillation
};

inline const char* to_string( AttractorKind kind )
{
  return kind == AttractorKind::StableConfiguration ? "StableConfiguration" : "StableOscillation";
}

/*! \brief A terminal strongly connected component.

  Members are listed in rendered-string order; the id is the rendering of the
  first (lexicographically smallest) member.
*/
struct Attractor
{
  std::vector<state_code> members;
  AttractorKind kind = AttractorKind::StableConfiguration;
  std::optional<std::size_t> period; ///< cycle length, parallel mode only

  std::size_t size() const noexcept { return members.size(); }
  bool contains( state_code x ) const { return std::find( members.begin(), members.end(), x ) != members.end(); }
};

struct AttractorSet
{
  UpdateMode mode = UpdateMode::Parallel;
  std::size_t n = 0;
  std::vector<Attractor> attractors;                   ///< ordered by id
  std::vector<std::int32_t> attractor_of;              ///< per configuration, -1 when transient

  std::string id( std::size_t a ) const { return code_to_string( attractors.at( a ).members.front(), n ); }
  bool recurrent( state_code x ) const { return attractor_of.at( x ) >= 0; }
};

namespace detail
{

inline AttractorSet attractors_from_scc( const TransitionGraph& tg, const SccDecomposition& scc )
{
  AttractorSet set;
  set.mode = tg.mode();
  set.n = tg.size();
  const auto n = tg.size();
  for ( std::size_t c = 0; c < scc.members.size(); ++c )
  {
    if ( !scc.terminal[c] )
    {
      continue;
    }
    Attractor a;
    a.members = scc.members[c];
    std::sort( a.members.begin(), a.members.end(), [n]( state_code l, state_code r ) { return string_order_less( l, r, n ); } );
    a.kind = a.members.size() == 1 ? AttractorKind::StableConfiguration : AttractorKind::StableOscillation;
    if ( tg.mode() == UpdateMode::Parallel )
    {
      a.period = a.members.size();
    }
    set.attractors.push_back( std::move( a ) );
  }
  std::sort( set.attractors.begin(), set.attractors.end(), [n]( const Attractor& l, const Attractor& r ) {
    return string_order_less( l.members.front(), r.members.front(), n );
  } );
  set.attractor_of.assign( tg.num_configurations(), -1 );
  for ( std::size_t a = 0; a < set.attractors.size(); ++a )
  {
    for ( auto x : set.attractors[a].members )
    {
      set.attractor_of[x] = static_cast<std::int32_t>( a );
    }
  }
  return set;
}

} // namespace detail

/// All attractors (terminal SCCs) of the graph.
inline AttractorSet attractors( const TransitionGraph& tg )
{
  return detail::attractors_from_scc( tg, strongly_connected_components( tg ) );
}

/// Configurations that belong to some attractor, ascending by code.
inline std::vector<state_code> recurrent_set( const AttractorSet& set )
{
  std::vector<state_code> out;
  for ( state_code x = 0; x < set.attractor_of.size(); ++x )
  {
    if ( set.attractor_of[x] >= 0 )
    {
      out.push_back( x );
    }
  }
  return out;
}

inline std::vector<state_code> recurrent_set( const TransitionGraph& tg )
{
  return recurrent_set( attractors( tg ) );
}

/// Indices (into set.attractors) of the attractors reachable from x, ascending.
inline std::vector<std::size_t> reachable_attractors( const TransitionGraph& tg, const AttractorSet& set, state_code x )
{
  if ( x >= tg.num_configurations() )
  {
    throw std::out_of_range( "configuration code out of range" );
  }
  std::vector<bool> seen( tg.num_configurations(), false );
  std::vector<bool> found( set.attractors.size(), false );
  std::deque<state_code> queue{ x };
  seen[x] = true;
  while ( !queue.empty() )
  {
    const auto v = queue.front();
    queue.pop_front();
    if ( set.attractor_of[v] >= 0 )
    {
      found[static_cast<std::size_t>( set.attractor_of[v] )] = true;
      continue; // attractors are closed
    }
    tg.for_each_successor( v, [&]( state_code w ) {
      if ( !seen[w] )
      {
        seen[w] = true;
        queue.push_back( w );
      }
    } );
  }
  std::vector<std::size_t> out;
  for ( std::size_t a = 0; a < found.size(); ++a )
  {
    if ( found[a] )
    {
      out.push_back( a );
    }
  }
  return out;
}

inline std::vector<std::size_t> reachable_attractors( const TransitionGraph& tg, const Configuration& x )
{
  if ( x.size() != tg.size() )
  {
    throw std::invalid_argument( "configuration size does not match the transition graph" );
  }
  return reachable_attractors( tg, attractors( tg ), static_cast<state_code>( x.code() ) );
}

/*! \brief Attractors and, for every configuration, the attractors it leads to.

  Reachable sets are propagated over the condensation in one pass.
*/
struct AttractorAnalysis
{
  SccDecomposition scc;
  AttractorSet set;
  std::vector<std::vector<std::uint32_t>> reach_by_component;

  const std::vector<std::uint32_t>& reachable( state_code x ) const { return reach_by_component[scc.component.at( x )]; }
};

inline AttractorAnalysis analyse_attractors( const TransitionGraph& tg )
{
  AttractorAnalysis out;
  out.scc = strongly_connected_components( tg );
  out.set = detail::attractors_from_scc( tg, out.scc );
  const auto& scc = out.scc;
  out.reach_by_component.resize( scc.members.size() );
  // components are numbered sinks-first, so successors are complete before their predecessors
  for ( std::size_t c = 0; c < scc.members.size(); ++c )
  {
    auto& reach = out.reach_by_component[c];
    if ( scc.terminal[c] )
    {
      reach.push_back( static_cast<std::uint32_t>( out.set.attractor_of[scc.members[c].front()] ) );
      continue;
    }
    for ( auto v : scc.members[c] )
    {
      tg.for_each_successor( v, [&]( state_code w ) {
        const auto cw = scc.component[w];
        if ( cw != c )
        {
          const auto& other = out.reach_by_component[cw];
          reach.insert( reach.end(), other.begin(), other.end() );
        }
      } );
    }
    std::sort( reach.begin(), reach.end() );
    reach.erase( std::unique( reach.begin(), reach.end() ), reach.end() );
  }
  return out;
}

/*! \brief Deterministic orbit summary under parallel updating.

  x(transient) is the first configuration that recurs; x(t) = x(t + period)
  for all t >= transient, with both quantities minimal.
*/
struct TrajectoryStats
{
  std::size_t transient = 0;
  std::size_t period = 0;
  std::vector<Configuration> orbit; ///< x(0) ... x(transient + period - 1), when kept
};

struct TrajectoryOptions
{
  std::uint64_t step_cap = std::uint64_t{ 1 } << 20;
  bool keep_orbit = true;
};

/*! \brief Iterates `step` from x0, recording first-visit times in a hash map.

  On the first revisit at time t2 of a configuration first seen at t1,
  transient = t1 and period = t2 - t1.  Throws step_budget_exceeded when no
  revisit happens within options.step_cap steps.
*/
template<typename Step>
TrajectoryStats trajectory_of( Step&& step, Configuration x0, const TrajectoryOptions& options = {} )
{
  std::unordered_map<Configuration, std::size_t> first_seen;
  TrajectoryStats stats;
  auto x = std::move( x0 );
  for ( std::size_t t = 0;; ++t )
  {
    if ( auto it = first_seen.find( x ); it != first_seen.end() )
    {
      stats.transient = it->second;
      stats.period = t - it->second;
      return stats;
    }
    if ( t > options.step_cap )
    {
      throw step_budget_exceeded( "no configuration repeated within " + std::to_string( options.step_cap ) + " steps" );
    }
    if ( options.keep_orbit )
    {
      stats.orbit.push_back( x );
    }
    auto next = step( x );
    first_seen.emplace( std::move( x ), t );
    x = std::move( next );
  }
}

/// Parallel-mode trajectory of x in a truth-table network.
inline TrajectoryStats trajectory( const Network& net, const Configuration& x, const TrajectoryOptions& options = {} )
{
  check_configuration( net, x );
  return trajectory_of( [&]( const Configuration& c ) { return parallel_step( net, c ); }, x, options );
}

/*! \brief Transient length and period of every node of a functional graph.

  image[v] is the unique successor of v.  Linear time; each node is walked
  once and labelled on the way back.
*/
struct FunctionalGraphStats
{
  std::vector<std::uint32_t> transient;
  std::vector<std::uint32_t> period;
};

inline FunctionalGraphStats functional_graph_stats( const std::vector<state_code>& image )
{
  const auto count = image.size();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  FunctionalGraphStats s;
  s.transient.assign( count, unset );
  s.period.assign( count, unset );
  std::vector<std::uint32_t> position( count, unset ); // index on the current walk
  std::vector<state_code> path;
  for ( std::size_t start = 0; start < count; ++start )
  {
    if ( s.transient[start] != unset )
    {
      continue;
    }
    path.clear();
    auto v = static_cast<state_code>( start );
    while ( s.transient[v] == unset && position[v] == unset )
    {
      position[v] = static_cast<std::uint32_t>( path.size() );
      path.push_back( v );
      v = image[v];
    }
    std::size_t tail_end = path.size();
    if ( s.transient[v] == unset )
    {
      // closed a new cycle starting at path[position[v]]
      const auto first = position[v];
      const auto p = static_cast<std::uint32_t>( path.size() - first );
      for ( std::size_t k = first; k < path.size(); ++k )
      {
        s.transient[path[k]] = 0;
        s.period[path[k]] = p;
      }
      tail_end = first;
    }
    for ( std::size_t k = tail_end; k-- > 0; )
    {
      const auto next = image[path[k]];
      s.transient[path[k]] = s.transient[next] + 1;
      s.period[path[k]] = s.period[next];
    }
    for ( auto u : path )
    {
      position[u] = unset;
    }
  }
  return s;
}

} // namespace banet
