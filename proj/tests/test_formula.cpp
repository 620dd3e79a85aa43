#include <catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include <banet/formula.hpp>
#include <banet/network.hpp>

using namespace banet;
using Kind = Formula::Kind;

namespace
{

Formula random_formula( std::mt19937_64& rng, std::size_t arity, int depth )
{
  std::uniform_int_distribution<int> pick( 0, depth > 0 ? 5 : 1 );
  switch ( pick( rng ) )
  {
  case 0: return Formula::variable( rng() % arity );
  case 1: return ( rng() % 4 == 0 ) ? Formula::constant( rng() & 1u ) : Formula::variable( rng() % arity );
  case 2: return Formula::negation( random_formula( rng, arity, depth - 1 ) );
  default:
  {
    const Kind kinds[] = { Kind::And, Kind::Or, Kind::Xor };
    std::vector<Formula> ops;
    const auto count = 2 + rng() % 2;
    for ( std::size_t k = 0; k < count; ++k )
    {
      ops.push_back( random_formula( rng, arity, depth - 1 ) );
    }
    return Formula::nary( kinds[rng() % 3], std::move( ops ) );
  }
  }
}

} // namespace

TEST_CASE( "parse the copy/XNOR local functions", "[formula]" )
{
  CHECK( parse_formula( "x1", 2 ) == Formula::variable( 1 ) );
  const auto xnor = parse_formula( "(!x0 & !x1) | (x0 & x1)", 2 );
  const auto expected = Formula::disjunction(
      { Formula::conjunction( { Formula::negation( Formula::variable( 0 ) ), Formula::negation( Formula::variable( 1 ) ) } ),
        Formula::conjunction( { Formula::variable( 0 ), Formula::variable( 1 ) } ) } );
  CHECK( xnor == expected );
}

TEST_CASE( "parse errors carry positions and expectations", "[formula]" )
{
  try
  {
    (void)parse_formula( "x0 ^ x2", 2 );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.position() == 5u );
    CHECK( std::string( e.what() ).find( "out of range" ) != std::string::npos );
  }
  try
  {
    (void)parse_formula( "x0 & (x1 | ", 2 );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.position() == 11u );
    CHECK_FALSE( e.expected().empty() );
  }
  CHECK_THROWS_AS( parse_formula( "x0 x1", 2 ), parse_error );
  CHECK_THROWS_AS( parse_formula( "x", 2 ), parse_error );
  CHECK_THROWS_AS( parse_formula( "x0", 0 ), std::invalid_argument );
}

TEST_CASE( "precedence is ! then & then ^ then |", "[formula]" )
{
  const auto f = parse_formula( "x0 | x1 ^ x2 & !x0", 3 );
  REQUIRE( f.kind == Kind::Or );
  REQUIRE( f.children[1].kind == Kind::Xor );
  REQUIRE( f.children[1].children[1].kind == Kind::And );
  CHECK( f.children[1].children[1].children[1].kind == Kind::Not );
  CHECK( parse_formula( "x0 & x1 & x2", 3 ).children.size() == 3u );
}

TEST_CASE( "compile produces little-endian truth tables", "[formula]" )
{
  const auto proj = compile( Formula::variable( 1 ), 2 );
  CHECK( proj.to_string() == "0011" );
  const auto x = compile( parse_formula( "x0 ^ x1", 2 ), 2 );
  CHECK( x.to_string() == "0110" );
  const auto zero = compile( Formula::constant( false ), 3 );
  CHECK( zero.num_bits() == 8u );
  CHECK( zero.count_ones() == 0u );
}

TEST_CASE( "compiled tables agree with direct evaluation", "[formula][property]" )
{
  std::mt19937_64 rng( 0 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    const std::size_t n = 1 + rng() % 8;
    const auto f = random_formula( rng, n, 4 );
    const auto t = compile( f, n );
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << n ); ++code )
    {
      REQUIRE( t[code] == evaluate( f, code ) );
    }
  }
}

TEST_CASE( "render then parse round-trips to the same truth table", "[formula][property]" )
{
  std::mt19937_64 rng( 1 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    const std::size_t n = 1 + rng() % 8;
    const auto f = random_formula( rng, n, 4 );
    const auto text = render( f );
    INFO( text );
    REQUIRE( compile( parse_formula( text, n ), n ) == compile( f, n ) );
  }
}

TEST_CASE( "xor equals its and-or expansion", "[formula][property]" )
{
  std::mt19937_64 rng( 2 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    const std::size_t n = 1 + rng() % 6;
    const auto a = random_formula( rng, n, 3 );
    const auto b = random_formula( rng, n, 3 );
    const auto lhs = Formula::exclusive_or( { a, b } );
    const auto rhs = Formula::disjunction( { Formula::conjunction( { a, Formula::negation( b ) } ),
                                             Formula::conjunction( { Formula::negation( a ), b } ) } );
    REQUIRE( compile( lhs, n ) == compile( rhs, n ) );
  }
}

TEST_CASE( "effective influence and monotonicity verdicts", "[formula]" )
{
  const auto x1 = compile( Formula::variable( 1 ), 2 );
  const auto x = compile( parse_formula( "x0 ^ x1", 2 ), 2 );
  const auto xnor = compile( parse_formula( "(!x0 & !x1) | (x0 & x1)", 2 ), 2 );
  CHECK_FALSE( effectively_influences( x1, 0 ) );
  CHECK( effectively_influences( x, 1 ) );
  CHECK_FALSE( effectively_influences( compile( Formula::constant( false ), 2 ), 1 ) );
  CHECK( local_monotonicity( x1, 1 ) == Monotonicity::Increasing );
  CHECK( local_monotonicity( x, 0 ) == Monotonicity::NonMonotone );
  CHECK( local_monotonicity( xnor, 0 ) == Monotonicity::NonMonotone );
}

TEST_CASE( "independent iff not effectively influencing", "[formula][property]" )
{
  std::mt19937_64 rng( 3 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    const std::size_t n = 1 + rng() % 6;
    const auto t = compile( random_formula( rng, n, 3 ), n );
    for ( std::size_t j = 0; j < n; ++j )
    {
      REQUIRE( ( local_monotonicity( t, j ) == Monotonicity::Independent ) == !effectively_influences( t, j ) );
    }
  }
}
