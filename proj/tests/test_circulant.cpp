#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include <banet/circulant.hpp>

using namespace banet;

namespace
{

Configuration cfg( const char* bits ) { return Configuration::from_string( bits ); }

/// Row t of Pascal's triangle mod 2, by the additive recurrence.
std::vector<std::vector<bool>> pascal_mod2( std::size_t rows )
{
  std::vector<std::vector<bool>> p( rows );
  for ( std::size_t t = 0; t < rows; ++t )
  {
    p[t].assign( t + 1, true );
    for ( std::size_t j = 1; j < t; ++j )
    {
      p[t][j] = p[t - 1][j - 1] != p[t - 1][j];
    }
  }
  return p;
}

/// Step computed from the matrix entries, independent of the rotation stepper.
Configuration matrix_step( const CirculantSpec& spec, const Configuration& x )
{
  Configuration y( spec.n );
  for ( std::size_t i = 0; i < spec.n; ++i )
  {
    bool acc = false;
    for ( std::size_t j = 0; j < spec.n; ++j )
    {
      acc ^= spec.matrix( i, j ) && x[j];
    }
    y.set( i, acc );
  }
  return y;
}

CirculantSpec random_spec( std::mt19937_64& rng, std::size_t max_n )
{
  const std::size_t n = 2 + rng() % ( max_n - 1 );
  Configuration row = random_configuration( n, rng );
  row.set( n - 1 );
  if ( row.weight() < 2 )
  {
    row.set( rng() % ( n - 1 ) );
  }
  return make_circulant( n, row );
}

} // namespace

TEST_CASE( "circulant construction and validation", "[circulant]" )
{
  const auto spec = make_circulant( 4, "1001" );
  CHECK( spec.k() == 2u );
  CHECK_FALSE( spec.reflected );
  const auto net = to_network( spec );
  for ( state_code x = 0; x < 16; ++x )
  {
    for ( std::size_t i = 0; i < 4; ++i )
    {
      const bool expected = ( ( x >> ( ( i + 3 ) % 4 ) ) & 1u ) != ( ( x >> i ) & 1u );
      REQUIRE( net.local( i, x ) == expected );
    }
  }
  CHECK_THROWS_AS( make_circulant( 6, "011011", 3 ), std::invalid_argument );
  CHECK_THROWS_AS( make_circulant( 4, "1000" ), std::invalid_argument );
  CHECK_THROWS_AS( make_circulant( 4, "0001" ), std::invalid_argument );
  CHECK_THROWS_AS( make_circulant( 4, "101" ), std::invalid_argument );
  CHECK_THROWS_AS( make_circulant( 1, "1" ), std::invalid_argument );
}

TEST_CASE( "circulant counts match first-row enumeration", "[circulant]" )
{
  CHECK( count_circulant( 4, 2 ) == 3u );
  CHECK( count_circulant( 6, 3 ) == 10u );
  CHECK( count_circulant( 7, 7 ) == 1u );
  for ( std::size_t n = 2; n <= 10; ++n )
  {
    for ( std::size_t k = 2; k <= n; ++k )
    {
      const auto rows = enumerate_first_rows( n, k );
      REQUIRE( rows.size() == count_circulant( n, k ) );
      std::set<std::string> distinct;
      for ( const auto& r : rows )
      {
        REQUIRE( r.weight() == k );
        REQUIRE( r[n - 1] );
        distinct.insert( r.to_string() );
      }
      REQUIRE( distinct.size() == rows.size() );
    }
  }
  CHECK_THROWS( count_circulant( 4, 5 ) );
  CHECK_THROWS( count_circulant( 4, 1 ) );
}

TEST_CASE( "reflection of networks and configurations", "[circulant]" )
{
  const auto spec = make_circulant( 4, "1001" );
  const auto r = reflect_network( spec );
  CHECK( r.row.to_string() == "1100" );
  CHECK( r.reflected );
  CHECK( reflect_network( r ) == spec );
  const auto symmetric = make_circulant( 5, "01001" );
  CHECK( reflect_network( symmetric ).row == symmetric.row );
  CHECK( reflect_config( cfg( "1011" ), 0 ).to_string() == "1110" );
  CHECK( reflect_config( cfg( "1100" ), 0 ).to_string() == "1001" );
  CHECK( reflect_config( Configuration::unit( 6, 2 ), 2 ) == Configuration::unit( 6, 2 ) );
  std::mt19937_64 rng( 0 );
  for ( int trial = 0; trial < 50; ++trial )
  {
    const auto x = random_configuration( 1 + rng() % 20, rng );
    const auto i = rng() % x.size();
    REQUIRE( reflect_config( reflect_config( x, i ), i ) == x );
  }
}

TEST_CASE( "masks and reconstruction", "[circulant]" )
{
  const auto spec = make_circulant( 4, "1001" );
  CHECK( mask( spec, 2, 0 ) == std::vector<std::size_t>{ 2 } );
  CHECK( mask( spec, 0, 1 ) == std::vector<std::size_t>{ 0, 3 } );
  CHECK( mask( spec, 0, 4 ).empty() );
  CHECK( mask_reconstruct( spec, cfg( "1000" ), 0, 1 ) );
  CHECK( mask_reconstruct( spec, cfg( "0110" ), 2, 0 ) );
}

TEST_CASE( "space-time diagrams and traces", "[circulant]" )
{
  const auto spec = make_circulant( 4, "1001" );
  const auto d = space_time( spec, cfg( "1000" ), 4 );
  std::vector<std::string> rows;
  for ( const auto& r : d.rows )
  {
    rows.push_back( r.to_string() );
  }
  CHECK( rows == std::vector<std::string>{ "1000", "1100", "1010", "1111", "0000" } );
  CHECK( trace( d, 0 ) == std::vector<bool>{ true, true, true, true, false } );
  const auto z = space_time( spec, Configuration( 4 ), 6 );
  CHECK( z.rows.size() == 7u );
  for ( const auto& r : z.rows )
  {
    CHECK( r.none() );
  }
}

TEST_CASE( "interaction step and repetition degree", "[circulant]" )
{
  CHECK( interaction_step( make_circulant( 4, "1001" ) ) == 0u );
  Configuration row27( 27 );
  row27.set( 23 );
  row27.set( 26 );
  CHECK( interaction_step( make_circulant( 27, row27 ) ) == 4u );
  CHECK( interaction_step( make_circulant( 5, "00101" ) ) == 3u );
  CHECK_THROWS_AS( interaction_step( make_circulant( 4, "1011" ) ), std::invalid_argument );
  for ( std::size_t n : { 5u, 8u, 27u } )
  {
    for ( std::size_t s = 0; s < n; ++s )
    {
      if ( s != 1 )
      {
        REQUIRE( interaction_step( two_xor( n, s ) ) == s );
      }
    }
  }
  CHECK( repetition_degree( cfg( "0101" ) ) == 1u );
  CHECK( repetition_degree( cfg( "0000" ) ) == 2u );
  CHECK( repetition_degree( cfg( "0110" ) ) == 0u );
  CHECK( repetition_degree( cfg( "011" ) ) == 0u );
  CHECK( repetition_degree( cfg( "1" ) ) == 0u );
}

TEST_CASE( "convergence of small circulant networks", "[circulant]" )
{
  const auto spec = make_circulant( 4, "1001" );
  const auto a = convergence( spec, cfg( "1000" ) );
  CHECK( a.transient == 4u );
  CHECK( a.period == 1u );
  const auto b = convergence( spec, cfg( "0101" ) );
  CHECK( b.transient == 2u );
  CHECK( b.period == 1u );
  const auto c = convergence( make_circulant( 6, "100101" ), Configuration( 6 ) );
  CHECK( c.transient == 0u );
  CHECK( c.period == 1u );

  const auto s4 = max_convergence_stats( spec, true );
  CHECK( s4.t_star == 4u );
  CHECK( s4.p_star == 1u );
  CHECK( s4.holds );
  CHECK( s4.configurations == 16u );
  const auto s6 = max_convergence_stats( make_circulant( 6, "100101" ), true );
  CHECK( s6.holds );
  CHECK( s6.configurations == 64u );
  CHECK_THROWS_AS( max_convergence_stats( two_xor( 17, 0 ), true ), resource_guard_error );
}

TEST_CASE( "rotation stepper agrees with the matrix definition", "[circulant][property]" )
{
  std::mt19937_64 rng( 1 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    const auto spec = random_spec( rng, 70 );
    const auto x = random_configuration( spec.n, rng );
    REQUIRE( step( spec, x ) == matrix_step( spec, x ) );
  }
}

TEST_CASE( "the parallel step is linear over GF(2)", "[circulant][property]" )
{
  std::mt19937_64 rng( 2 );
  for ( int trial = 0; trial < 500; ++trial )
  {
    const auto spec = random_spec( rng, 64 );
    const auto x = random_configuration( spec.n, rng );
    const auto y = random_configuration( spec.n, rng );
    REQUIRE( step( spec, x ^ y ) == ( step( spec, x ) ^ step( spec, y ) ) );
  }
}

TEST_CASE( "Sierpinski rows from a unit configuration", "[circulant][property]" )
{
  const auto pascal = pascal_mod2( 64 );
  for ( std::size_t n : { 8u, 16u, 32u, 64u } )
  {
    for ( std::size_t i0 : { std::size_t{ 0 }, n / 2 + 1 } )
    {
      const auto d = space_time( two_xor( n, 0 ), Configuration::unit( n, i0 ), n - 1 );
      for ( std::size_t t = 0; t < n; ++t )
      {
        for ( std::size_t j = 0; j < n; ++j )
        {
          const bool expected = j <= t && pascal[t][j];
          REQUIRE( d.rows[t][( i0 + j ) % n] == expected );
        }
      }
    }
  }
}

TEST_CASE( "laws on their reference instances", "[circulant]" )
{
  LawOptions exhaustive;
  exhaustive.exhaustive = true;
  CHECK( verify_law( Law::Nilpotent, two_xor( 16, 0 ), exhaustive ).passed );
  CHECK( verify_law( Law::ExactOdd, make_circulant( 8, "10000001" ), exhaustive ).passed );
  CHECK( verify_law( Law::AllOnes, make_circulant( 4, "1001" ) ).passed );
  CHECK( verify_law( Law::AllOnes, make_circulant( 5, "10101" ) ).passed );
  CHECK( verify_law( Law::RepeatedHalf, two_xor( 16, 0 ) ).passed );
  CHECK( verify_law( Law::Repeated, two_xor( 32, 5 ) ).passed );
  CHECK( verify_law( Law::UnitDensity, make_circulant( 6, "100101" ), exhaustive ).passed );
  CHECK_THROWS_AS( verify_law( Law::Nilpotent, two_xor( 12, 0 ) ), law_precondition_error );
  CHECK_THROWS_AS( verify_law( Law::Nilpotent, two_xor( 16, 3 ) ), law_precondition_error );
  CHECK_THROWS_AS( parse_law( "thm3" ), std::invalid_argument );
  for ( const auto& info : law_table )
  {
    CHECK( parse_law( info.id ) == info.law );
  }
}

TEST_CASE( "a failing law reports a counterexample", "[circulant]" )
{
  // thm1 is false without the power-of-two hypothesis: n = 6, s = 0 has a non-trivial cycle
  const auto spec = two_xor( 6, 0 );
  const auto s = max_convergence_stats( spec, true );
  CHECK( s.holds );
  bool nilpotent = true;
  for ( std::uint64_t x = 0; x < 64 && nilpotent; ++x )
  {
    nilpotent = iterate( spec, Configuration::from_code( x, 6 ), 6 ).none();
  }
  CHECK_FALSE( nilpotent );
  LawOptions options;
  options.samples = 20;
  const auto r = verify_law( Law::Local, two_xor( 16, 0 ), options );
  CHECK( r.passed );
  CHECK( r.checked == 20u );
}
