#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include <banet/circulant.hpp>
#include <banet/dynamics.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace banet;
using testing_support::copy_xnor_network;
using testing_support::random_network;
using testing_support::xor_xnor_network;

namespace
{

state_code code( const char* bits ) { return static_cast<state_code>( Configuration::from_string( bits ).code() ); }

std::vector<std::string> rendered_arcs( const TransitionGraph& tg )
{
  std::vector<std::string> out;
  for ( const auto& arc : tg.arcs() )
  {
    std::string labels;
    for ( auto w : arc.labels )
    {
      labels += ( labels.empty() ? "" : " " ) + format_update_set( w );
    }
    out.push_back( code_to_string( arc.source, tg.size() ) + ">" + code_to_string( arc.target, tg.size() ) + ":" + labels );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

std::vector<std::string> attractor_strings( const AttractorSet& set )
{
  std::vector<std::string> out;
  for ( const auto& a : set.attractors )
  {
    std::string s;
    for ( auto x : a.members )
    {
      s += ( s.empty() ? "" : "," ) + code_to_string( x, set.n );
    }
    out.push_back( s );
  }
  return out;
}

} // namespace

TEST_CASE( "copy/XNOR asynchronous graph", "[dynamics]" )
{
  const auto tg = build_graph( copy_xnor_network(), UpdateMode::Asynchronous );
  CHECK( rendered_arcs( tg ) ==
         std::vector<std::string>{ "00>00:0", "00>01:1", "01>00:1", "01>11:0", "10>00:0", "10>10:1", "11>11:0 1" } );
  std::uint64_t total = 0;
  for ( state_code x = 0; x < 4; ++x )
  {
    CHECK( tg.labelled_out_degree( x ) == 2u );
    total += tg.labelled_out_degree( x );
  }
  CHECK( total == 8u );
}

TEST_CASE( "copy/XNOR parallel and general graphs", "[dynamics]" )
{
  const auto net = copy_xnor_network();
  CHECK( rendered_arcs( build_graph( net, UpdateMode::Parallel ) ) ==
         std::vector<std::string>{ "00>01:{0,1}", "01>10:{0,1}", "10>00:{0,1}", "11>11:{0,1}" } );
  const auto g = build_graph( net, UpdateMode::General );
  CHECK( rendered_arcs( g ) == std::vector<std::string>{ "00>00:0", "00>01:1 {0,1}", "01>00:1", "01>10:{0,1}", "01>11:0",
                                                         "10>00:0 {0,1}", "10>10:1", "11>11:0 1 {0,1}" } );
  CHECK( g.labels( code( "01" ), code( "10" ) ) == std::vector<automaton_mask>{ 0b11 } );
  for ( state_code x = 0; x < 4; ++x )
  {
    CHECK( g.labelled_out_degree( x ) == 3u );
  }
}

TEST_CASE( "copy/XNOR attractors per mode", "[dynamics]" )
{
  const auto net = copy_xnor_network();
  const auto par = attractors( build_graph( net, UpdateMode::Parallel ) );
  CHECK( attractor_strings( par ) == std::vector<std::string>{ "00,01,10", "11" } );
  REQUIRE( par.attractors.size() == 2u );
  CHECK( par.attractors[0].kind == AttractorKind::StableOscillation );
  CHECK( par.attractors[0].period == std::optional<std::size_t>{ 3 } );
  CHECK( par.attractors[1].kind == AttractorKind::StableConfiguration );
  CHECK( par.attractors[1].period == std::optional<std::size_t>{ 1 } );

  const auto async = build_graph( net, UpdateMode::Asynchronous );
  const auto aset = attractors( async );
  CHECK( attractor_strings( aset ) == std::vector<std::string>{ "11" } );
  CHECK( recurrent_set( aset ) == std::vector<state_code>{ code( "11" ) } );
  CHECK( recurrent_set( build_graph( net, UpdateMode::Parallel ) ).size() == 4u );
  CHECK( reachable_attractors( async, Configuration::from_string( "01" ) ) == std::vector<std::size_t>{ 0 } );
}

TEST_CASE( "the general graph of the XOR/XNOR network keeps one fixed point", "[dynamics]" )
{
  const auto net = xor_xnor_network();
  const auto g = build_graph( net, UpdateMode::General );
  const auto set = attractors( g );
  CHECK( attractor_strings( set ) == std::vector<std::string>{ "10" } );
  for ( state_code x = 0; x < 4; ++x )
  {
    CHECK( reachable_attractors( g, set, x ) == std::vector<std::size_t>{ 0 } );
  }
  CHECK( attractor_strings( attractors( build_graph( net, UpdateMode::Asynchronous ) ) ) ==
         std::vector<std::string>{ "00,01,11", "10" } );
}

TEST_CASE( "size guards on graph construction", "[dynamics]" )
{
  std::vector<TruthTable> tables;
  for ( std::size_t i = 0; i < 17; ++i )
  {
    tables.emplace_back( 17 );
  }
  const Network net( std::move( tables ) );
  CHECK_THROWS_AS( build_graph( net, UpdateMode::General ), resource_guard_error );
  CHECK_NOTHROW( build_graph( net, UpdateMode::Parallel ) );
}

TEST_CASE( "trajectories", "[dynamics]" )
{
  const auto net = copy_xnor_network();
  const auto a = trajectory( net, Configuration::from_string( "00" ) );
  CHECK( a.transient == 0u );
  CHECK( a.period == 3u );
  const auto b = trajectory( net, Configuration::from_string( "11" ) );
  CHECK( b.transient == 0u );
  CHECK( b.period == 1u );
  const auto c = trajectory( to_network( make_circulant( 4, "1001" ) ), Configuration::from_string( "1000" ) );
  CHECK( c.transient == 4u );
  CHECK( c.period == 1u );
  REQUIRE( c.orbit.size() == 5u );
  CHECK( c.orbit[3].to_string() == "1111" );
  TrajectoryOptions tight;
  tight.step_cap = 1;
  CHECK_THROWS_AS( trajectory( net, Configuration::from_string( "00" ), tight ), step_budget_exceeded );
}

TEST_CASE( "attractors agree with the definitional oracle", "[dynamics][property]" )
{
  std::mt19937_64 rng( 0 );
  for ( int trial = 0; trial < 40; ++trial )
  {
    const std::size_t n = 1 + rng() % 7;
    const auto net = random_network( rng, n );
    for ( auto mode : { UpdateMode::General, UpdateMode::Asynchronous, UpdateMode::Parallel } )
    {
      REQUIRE( testing_support::normalised_attractors( attractors( build_graph( net, mode ) ) ) ==
               testing_support::oracle_attractors( net, mode ) );
    }
  }
}

TEST_CASE( "arc containment between modes and mode-independent fixed points", "[dynamics][property]" )
{
  std::mt19937_64 rng( 1 );
  for ( int trial = 0; trial < 40; ++trial )
  {
    const std::size_t n = 1 + rng() % 8;
    const auto net = random_network( rng, n );
    const auto g = build_graph( net, UpdateMode::General );
    const auto a = build_graph( net, UpdateMode::Asynchronous );
    const auto p = build_graph( net, UpdateMode::Parallel );
    for ( const auto& arc : a.arcs() )
    {
      for ( auto w : arc.labels )
      {
        REQUIRE( std::popcount( w ) == 1 );
        const auto gl = g.labels( arc.source, arc.target );
        REQUIRE( std::find( gl.begin(), gl.end(), w ) != gl.end() );
      }
    }
    for ( const auto& arc : p.arcs() )
    {
      const auto gl = g.labels( arc.source, arc.target );
      REQUIRE( std::find( gl.begin(), gl.end(), net.all_automata() ) != gl.end() );
    }
    std::set<std::vector<state_code>> fixed[3];
    int k = 0;
    for ( const auto* tg : { &g, &a, &p } )
    {
      for ( const auto& att : attractors( *tg ).attractors )
      {
        if ( att.kind == AttractorKind::StableConfiguration )
        {
          fixed[k].insert( att.members );
        }
      }
      ++k;
    }
    REQUIRE( fixed[0] == fixed[1] );
    REQUIRE( fixed[1] == fixed[2] );
  }
}

TEST_CASE( "parallel trajectories agree with the parallel attractors", "[dynamics][property]" )
{
  std::mt19937_64 rng( 2 );
  for ( int trial = 0; trial < 10; ++trial )
  {
    const std::size_t n = 1 + rng() % 12;
    const auto net = random_network( rng, n );
    const auto p = build_graph( net, UpdateMode::Parallel );
    const auto set = attractors( p );
    std::vector<state_code> image( net.num_configurations() );
    for ( state_code x = 0; x < net.num_configurations(); ++x )
    {
      image[x] = net.parallel_code( x );
    }
    const auto fg = functional_graph_stats( image );
    for ( state_code x = 0; x < net.num_configurations(); ++x )
    {
      REQUIRE( ( fg.transient[x] == 0 ) == set.recurrent( x ) );
      if ( x % 37 == 0 )
      {
        TrajectoryOptions opts;
        opts.keep_orbit = false;
        const auto t = trajectory( net, Configuration::from_code( x, n ), opts );
        REQUIRE( t.transient == fg.transient[x] );
        REQUIRE( t.period == fg.period[x] );
        if ( t.transient == 0 )
        {
          REQUIRE( set.attractors[set.attractor_of[x]].period == std::optional<std::size_t>{ t.period } );
        }
      }
    }
  }
}

TEST_CASE( "strongly connected components of a hand-built digraph", "[dynamics]" )
{
  // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 -> 4
  const std::vector<std::vector<state_code>> adj{ { 1 }, { 2 }, { 0, 3 }, { 3 }, { 4 } };
  const auto scc = strongly_connected_components( 5, [&]( state_code v, auto&& emit ) {
    for ( auto w : adj[v] ) emit( w );
  } );
  CHECK( scc.members.size() == 3u );
  CHECK( scc.component[0] == scc.component[1] );
  CHECK( scc.component[1] == scc.component[2] );
  CHECK_FALSE( scc.terminal[scc.component[0]] );
  CHECK( scc.terminal[scc.component[3]] );
  CHECK( scc.terminal[scc.component[4]] );
}
