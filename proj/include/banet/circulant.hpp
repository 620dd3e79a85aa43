#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "configuration.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "network.hpp"
#include "parallel.hpp"

namespace banet
{

/*! \brief First row c = (c_0, ..., c_{n-1}) of a circulant interaction matrix over GF(2).

  The matrix is C_{i,j} = c_{(j - i) mod n}: row i is row 0 shifted right by
  i.  Automaton i computes f_i(x) = XOR_j C_{i,j} x_j, i.e. the XOR of
  x_{(i + m) mod n} over every m with c_m = 1.  Unless the spec is the
  reflection of another one, c_{n-1} = 1, so (i, i + 1) is an arc for all i.
*/
struct CirculantSpec
{
  std::size_t n = 0;
  Configuration row;
  bool reflected = false;

  std::size_t k() const noexcept { return row.weight(); }
  bool coefficient( std::size_t m ) const { return row.test( m % n ); }
  bool matrix( std::size_t i, std::size_t j ) const { return row.test( ( j + n - i % n ) % n ); }

  friend bool operator==( const CirculantSpec&, const CirculantSpec& ) = default;
};

/*! \brief Validates and builds a k-XOR circulant spec.

  Requires n >= 2, a row of length n with weight >= 2 (and equal to
  `expected_k` when given) and c_{n-1} = 1 unless `reflected`.
*/
inline CirculantSpec make_circulant( std::size_t n, const Configuration& row, std::optional<std::size_t> expected_k = std::nullopt,
                                     bool reflected = false )
{
  if ( n < 2 )
  {
    throw std::invalid_argument( "circulant networks need n >= 2" );
  }
  if ( row.size() != n )
  {
    throw std::invalid_argument( "first row has length " + std::to_string( row.size() ) + ", expected " + std::to_string( n ) );
  }
  const auto k = row.weight();
  if ( k < 2 )
  {
    throw std::invalid_argument( "first row must contain at least 2 ones (found " + std::to_string( k ) + ")" );
  }
  if ( expected_k && *expected_k != k )
  {
    throw std::invalid_argument( "first row has weight " + std::to_string( k ) + " but k = " + std::to_string( *expected_k ) +
                                 " was requested" );
  }
  if ( expected_k && *expected_k > n )
  {
    throw std::invalid_argument( "k exceeds n" );
  }
  if ( !reflected && !row[n - 1] )
  {
    throw std::invalid_argument( "c_{n-1} must be 1" );
  }
  return { n, row, reflected };
}

inline CirculantSpec make_circulant( std::size_t n, std::string_view row_bits, std::optional<std::size_t> expected_k = std::nullopt )
{
  return make_circulant( n, Configuration::from_string( row_bits ), expected_k );
}

/*! \brief The 2-XOR circulant network of size n and interaction-step s.

  Its first row has ones at n - 1 and (n - s) mod n, so that
  f_i(x) = x_{i-1} xor x_{i-s}.
*/
inline CirculantSpec two_xor( std::size_t n, std::size_t s )
{
  if ( n < 2 || s >= n || s == 1 )
  {
    throw std::invalid_argument( "interaction-step must satisfy s != 1 and s < n" );
  }
  Configuration row( n );
  row.set( n - 1 );
  row.set( ( n - s ) % n );
  return make_circulant( n, row, 2 );
}

/// One parallel step: XOR of the rotations of x selected by the first row.
inline Configuration step( const CirculantSpec& spec, const Configuration& x )
{
  if ( x.size() != spec.n )
  {
    throw std::invalid_argument( "configuration size does not match the circulant network" );
  }
  Configuration out( spec.n );
  for ( auto m : spec.row.support() )
  {
    out ^= x.rotated( m );
  }
  return out;
}

inline Configuration iterate( const CirculantSpec& spec, Configuration x, std::size_t t )
{
  for ( std::size_t s = 0; s < t; ++s )
  {
    x = step( spec, x );
  }
  return x;
}

/// Truth-table network with the same dynamics (n within the state-space guard).
inline Network to_network( const CirculantSpec& spec )
{
  const auto n = spec.n;
  require_state_bits( n, max_state_bits(), "circulant truth tables" );
  std::vector<TruthTable> tables;
  for ( std::size_t i = 0; i < n; ++i )
  {
    state_code inputs = 0;
    for ( auto m : spec.row.support() )
    {
      inputs |= state_code{ 1 } << ( ( i + m ) % n );
    }
    TruthTable t( n );
    for ( state_code x = 0; x < t.num_bits(); ++x )
    {
      if ( std::popcount( x & inputs ) & 1 )
      {
        t.set( x );
      }
    }
    tables.push_back( std::move( t ) );
  }
  return Network( std::move( tables ) );
}

inline std::uint64_t binomial( std::uint64_t n, std::uint64_t k )
{
  if ( k > n )
  {
    return 0;
  }
  k = std::min( k, n - k );
  unsigned __int128 r = 1;
  for ( std::uint64_t i = 1; i <= k; ++i )
  {
    r = r * ( n - k + i ) / i;
    if ( r > std::numeric_limits<std::uint64_t>::max() )
    {
      throw std::overflow_error( "binomial coefficient exceeds 64 bits" );
    }
  }
  return static_cast<std::uint64_t>( r );
}

/// Number of k-XOR circulant networks of size n: C(n-1, k-1).
inline std::uint64_t count_circulant( std::size_t n, std::size_t k )
{
  if ( k < 2 || k > n )
  {
    throw std::invalid_argument( "count_circulant needs 2 <= k <= n" );
  }
  return binomial( n - 1, k - 1 );
}

/// Every valid first row of weight k and length n (c_{n-1} = 1), in ascending code order.
inline std::vector<Configuration> enumerate_first_rows( std::size_t n, std::size_t k )
{
  if ( k < 2 || k > n )
  {
    throw std::invalid_argument( "enumerate_first_rows needs 2 <= k <= n" );
  }
  require_state_bits( n, max_state_bits(), "first-row enumeration" );
  std::vector<Configuration> rows;
  for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << n ); ++code )
  {
    if ( static_cast<std::size_t>( std::popcount( code ) ) == k && ( ( code >> ( n - 1 ) ) & 1u ) )
    {
      rows.push_back( Configuration::from_code( code, n ) );
    }
  }
  return rows;
}

/*! \brief Network whose interaction matrix is the transpose: c~_j = c_{(n - j) mod n}. */
inline CirculantSpec reflect_network( const CirculantSpec& spec )
{
  Configuration row( spec.n );
  for ( std::size_t j = 0; j < spec.n; ++j )
  {
    row.set( j, spec.row[( spec.n - j ) % spec.n] );
  }
  // the flag only records the exemption from c_{n-1} = 1
  return { spec.n, row, !row[spec.n - 1] };
}

/// R_i(x)_j = x_{(2i - j) mod n}.
inline Configuration reflect_config( const Configuration& x, std::size_t i )
{
  const auto n = x.size();
  if ( i >= n )
  {
    throw std::out_of_range( "reflection centre out of range" );
  }
  Configuration out( n );
  for ( std::size_t j = 0; j < n; ++j )
  {
    out.set( j, x[( 2 * i + n - j ) % n] );
  }
  return out;
}

/*! \brief M_i(t): support of the reflected network's t-step image of the unit configuration at i.

  x_i(t) is the XOR of x(0) over M_i(t).
*/
inline std::vector<std::size_t> mask( const CirculantSpec& spec, std::size_t i, std::size_t t )
{
  if ( i >= spec.n )
  {
    throw std::out_of_range( "automaton out of range" );
  }
  return iterate( reflect_network( spec ), Configuration::unit( spec.n, i ), t ).support();
}

inline bool mask_reconstruct( const CirculantSpec& spec, const Configuration& x0, std::size_t i, std::size_t t )
{
  bool acc = false;
  for ( auto j : mask( spec, i, t ) )
  {
    acc ^= x0.test( j );
  }
  return acc;
}

/// Rows x(0) ... x(t_max) of the parallel orbit.
struct SpaceTimeDiagram
{
  std::size_t n = 0;
  std::vector<Configuration> rows;
};

inline SpaceTimeDiagram space_time( const CirculantSpec& spec, const Configuration& x0, std::size_t t_max )
{
  SpaceTimeDiagram d{ spec.n, { x0 } };
  d.rows.reserve( t_max + 1 );
  for ( std::size_t t = 0; t < t_max; ++t )
  {
    d.rows.push_back( step( spec, d.rows.back() ) );
  }
  return d;
}

/// Column i of the diagram: x_i(0), ..., x_i(t_max).
inline std::vector<bool> trace( const SpaceTimeDiagram& diagram, std::size_t i )
{
  if ( i >= diagram.n )
  {
    throw std::out_of_range( "automaton out of range" );
  }
  std::vector<bool> column;
  for ( const auto& row : diagram.rows )
  {
    column.push_back( row[i] );
  }
  return column;
}

/*! \brief Smallest s != 1 with (i, i + s) an arc for every i, for 2-XOR networks.

  (i, i + s) is an arc iff C_{i+s,i} = c_{(n - s) mod n} = 1.
*/
inline std::size_t interaction_step( const CirculantSpec& spec )
{
  if ( spec.k() != 2 )
  {
    throw std::invalid_argument( "interaction-step is defined for 2-XOR networks only (k = " + std::to_string( spec.k() ) + ")" );
  }
  for ( std::size_t s = 0; s < spec.n; ++s )
  {
    if ( s != 1 && spec.row[( spec.n - s ) % spec.n] )
    {
      return s;
    }
  }
  throw std::invalid_argument( "network has no interaction-step other than 1" );
}

/*! \brief Number of times x splits into two equal halves.

  Odd lengths (including 1) have degree 0.  Each level compares the current
  prefix's halves, so the total work is n + n/2 + ... = O(n).
*/
inline std::size_t repetition_degree( const Configuration& x )
{
  std::size_t degree = 0;
  for ( auto len = x.size(); len >= 2 && len % 2 == 0; len /= 2 )
  {
    const auto half = len / 2;
    for ( std::size_t j = 0; j < half; ++j )
    {
      if ( x[j] != x[half + j] )
      {
        return degree;
      }
    }
    ++degree;
  }
  return degree;
}

/// Parallel-mode transient and period of x0.
inline TrajectoryStats convergence( const CirculantSpec& spec, const Configuration& x0, const TrajectoryOptions& options = {} )
{
  if ( x0.size() != spec.n )
  {
    throw std::invalid_argument( "configuration size does not match the circulant network" );
  }
  return trajectory_of( [&]( const Configuration& x ) { return step( spec, x ); }, x0, options );
}

inline constexpr std::size_t max_exhaustive_bits = 16;

/*! \brief (t*, p*) of the unit configuration, optionally checked against every configuration.

  With `exhaustive`, all 2^n configurations are swept through the
  functional graph; `holds` is false and a counterexample is recorded when
  some transient exceeds t* or some period does not divide p*.
*/
struct ConvergenceSummary
{
  std::size_t t_star = 0;
  std::size_t p_star = 0;
  bool exhaustive = false;
  std::size_t max_transient = 0;
  std::size_t configurations = 0;
  bool holds = true;
  std::optional<Configuration> counterexample;
  std::string violation;
};

/// Image of every configuration code under one parallel step (n within the exhaustive guard).
inline std::vector<state_code> step_table( const CirculantSpec& spec )
{
  require_state_bits( spec.n, max_exhaustive_bits, "exhaustive circulant sweep" );
  std::vector<state_code> image( std::size_t{ 1 } << spec.n );
  for ( state_code x = 0; x < image.size(); ++x )
  {
    image[x] = static_cast<state_code>( step( spec, Configuration::from_code( x, spec.n ) ).code() );
  }
  return image;
}

inline ConvergenceSummary max_convergence_stats( const CirculantSpec& spec, bool exhaustive )
{
  if ( exhaustive )
  {
    require_state_bits( spec.n, max_exhaustive_bits, "exhaustive circulant sweep" );
  }
  ConvergenceSummary s;
  const auto unit = convergence( spec, Configuration::unit( spec.n, 0 ), { .keep_orbit = false } );
  s.t_star = unit.transient;
  s.p_star = unit.period;
  s.max_transient = unit.transient;
  s.configurations = 1;
  if ( !exhaustive )
  {
    return s;
  }
  s.exhaustive = true;
  const auto stats = functional_graph_stats( step_table( spec ) );
  s.configurations = stats.transient.size();
  s.max_transient = 0;
  for ( state_code x = 0; x < stats.transient.size(); ++x )
  {
    s.max_transient = std::max<std::size_t>( s.max_transient, stats.transient[x] );
    if ( s.holds && stats.transient[x] > s.t_star )
    {
      s.holds = false;
      s.counterexample = Configuration::from_code( x, spec.n );
      s.violation = "transient " + std::to_string( stats.transient[x] ) + " exceeds t* = " + std::to_string( s.t_star );
    }
    if ( s.holds && s.p_star % stats.period[x] != 0 )
    {
      s.holds = false;
      s.counterexample = Configuration::from_code( x, spec.n );
      s.violation = "period " + std::to_string( stats.period[x] ) + " does not divide p* = " + std::to_string( s.p_star );
    }
  }
  if ( s.holds && s.max_transient != s.t_star )
  {
    s.holds = false;
    s.violation = "maximum transient " + std::to_string( s.max_transient ) + " differs from t* = " + std::to_string( s.t_star );
  }
  return s;
}

/// Convergence laws and structural identities of XOR circulant networks.
enum class Law
{
  AllZero,           ///< (0, ..., 0) is a fixed point
  AllOnes,           ///< (1, ..., 1) is fixed for odd k and maps to 0 for even k
  Rotation,          ///< rotated configurations share transient and period
  Mask,              ///< x_i(t) is the XOR of x(0) over M_i(t)
  Reflection,        ///< F~(R_i(x)) = R_i(F(x))
  ReflectedDiagram,  ///< F~^t(unit_i) = R_i(x(t)) from x(0) = unit_i
  UnitDensity,       ///< unit configurations have maximal transient; periods divide p*
  Local,             ///< s = 0: x_i(2^q) = x_{i-2^q}(0) xor x_i(0)
  Repeated,          ///< n = 2^p: configurations of repetition degree >= p - 1 die within 2 steps
  Nilpotent,         ///< n = 2^p, s = 0: every configuration reaches 0 within n steps
  RepeatedHalf,      ///< n = 2^(p+1), s = 0: (x', x') evolves as (x'(t), x'(t))
  ExactOdd           ///< n = 2^p, s = 0: odd weight converges in exactly n steps, even weight in fewer
};

struct LawInfo
{
  Law law;
  const char* id;
  const char* description;
};

inline constexpr LawInfo law_table[] = {
    { Law::AllZero, "all-zero", "(0,...,0) is a stable configuration" },
    { Law::AllOnes, "all-ones", "(1,...,1) is stable for odd k and a predecessor of (0,...,0) for even k" },
    { Law::Rotation, "rotation", "rotations of a configuration share transient length and period" },
    { Law::Mask, "lem_mask", "x_i(t) equals the XOR of x(0) over the mask M_i(t)" },
    { Law::Reflection, "lem_reflect", "reflected step commutes with configuration reflection" },
    { Law::ReflectedDiagram, "prop_reflect_diagram", "reflected network orbit of unit_i is the mirror of the orbit of unit_i" },
    { Law::UnitDensity, "prop_density", "unit configurations reach the maximal transient and their period is a multiple of all periods" },
    { Law::Local, "lem_local", "for s = 0, x_i(2^q) = x_{i-2^q}(0) xor x_i(0)" },
    { Law::Repeated, "prop_repeated", "for n = 2^p, configurations of repetition degree >= p-1 reach 0 within 2 steps" },
    { Law::Nilpotent, "thm1", "for n = 2^p and s = 0, every configuration reaches 0 within n steps" },
    { Law::RepeatedHalf, "lem_repeated", "for n = 2^(p+1) and s = 0, (x',x') evolves as (x'(t),x'(t))" },
    { Law::ExactOdd, "thm2", "for n = 2^p and s = 0, odd-weight configurations converge in exactly n steps" },
};

inline const char* law_id( Law law )
{
  for ( const auto& info : law_table )
  {
    if ( info.law == law )
    {
      return info.id;
    }
  }
  return "?";
}

inline Law parse_law( std::string_view id )
{
  for ( const auto& info : law_table )
  {
    if ( id == info.id )
    {
      return info.law;
    }
  }
  throw std::invalid_argument( "unknown law id '" + std::string( id ) + "'" );
}

struct LawOptions
{
  bool exhaustive = false;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t max_time = 32;  ///< time horizon for mask and reflection identities
  std::size_t max_q = 6;      ///< largest q for the s = 0 doubling identity
  std::size_t jobs = 1;
};

struct LawReport
{
  Law law = Law::AllZero;
  bool passed = true;
  std::uint64_t checked = 0;
  std::string counterexample;
};

inline Configuration random_configuration( std::size_t n, std::mt19937_64& rng )
{
  Configuration x( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( rng() & 1u )
    {
      x.set( i );
    }
  }
  return x;
}

namespace detail
{

inline bool is_power_of_two( std::size_t n ) { return n >= 2 && std::has_single_bit( n ); }

inline void require_power_of_two_s0( const CirculantSpec& spec, Law law )
{
  if ( !is_power_of_two( spec.n ) || spec.k() != 2 || interaction_step( spec ) != 0 )
  {
    throw law_precondition_error( std::string( law_id( law ) ) + " needs a 2-XOR network of size 2^p with interaction-step 0" );
  }
}

/// Exhaustive (when requested and n <= 16) or seeded random sample of configurations.
inline std::vector<Configuration> sample_domain( std::size_t n, const LawOptions& options )
{
  std::vector<Configuration> domain;
  if ( options.exhaustive )
  {
    require_state_bits( n, max_exhaustive_bits, "exhaustive law check" );
    for ( std::uint64_t x = 0; x < ( std::uint64_t{ 1 } << n ); ++x )
    {
      domain.push_back( Configuration::from_code( x, n ) );
    }
    return domain;
  }
  std::mt19937_64 rng( options.seed );
  for ( std::size_t s = 0; s < options.samples; ++s )
  {
    domain.push_back( random_configuration( n, rng ) );
  }
  return domain;
}

/// Checks `holds(x)` on every configuration of the domain; the first failure in domain order is reported.
template<typename Check>
LawReport check_each( Law law, const std::vector<Configuration>& domain, std::size_t jobs, Check&& check )
{
  std::vector<std::string> failures( domain.size() );
  parallel_for( domain.size(), jobs, [&]( std::uint64_t k ) { failures[k] = check( domain[k] ); } );
  LawReport r{ law, true, domain.size(), {} };
  for ( auto& f : failures )
  {
    if ( !f.empty() )
    {
      r.passed = false;
      r.counterexample = std::move( f );
      break;
    }
  }
  return r;
}

} // namespace detail

/*! \brief Runs one law on a spec.

  Throws law_precondition_error when the spec is outside the law's
  hypotheses.  A failing check never throws: the report carries the first
  counterexample.
*/
inline LawReport verify_law( Law law, const CirculantSpec& spec, const LawOptions& options = {} )
{
  const auto n = spec.n;
  const auto reflected = reflect_network( spec );
  switch ( law )
  {
  case Law::AllZero:
  {
    const Configuration zero( n );
    const bool ok = step( spec, zero ) == zero;
    return { law, ok, 1, ok ? "" : "x=" + zero.to_string() };
  }
  case Law::AllOnes:
  {
    const auto ones = Configuration::ones( n );
    const auto image = step( spec, ones );
    const bool ok = spec.k() % 2 ? image == ones : image.none();
    return { law, ok, 1, ok ? "" : "x=" + ones.to_string() + " image=" + image.to_string() };
  }
  case Law::Rotation:
  {
    std::mt19937_64 rng( options.seed ^ 0x5bd1e995u );
    const auto domain = detail::sample_domain( n, options );
    std::vector<std::size_t> shift_of( domain.size() );
    for ( auto& s : shift_of )
    {
      s = 1 + rng() % ( n - 1 );
    }
    std::vector<std::string> failures( domain.size() );
    parallel_for( domain.size(), options.jobs, [&]( std::uint64_t k ) {
      const auto a = convergence( spec, domain[k], { .keep_orbit = false } );
      const auto rotated = domain[k].rotated( shift_of[k] );
      const auto b = convergence( spec, rotated, { .keep_orbit = false } );
      if ( a.transient != b.transient || a.period != b.period )
      {
        failures[k] = "x=" + domain[k].to_string() + " rotation=" + rotated.to_string();
      }
    } );
    LawReport r{ law, true, domain.size(), {} };
    for ( auto& f : failures )
    {
      if ( !f.empty() )
      {
        r.passed = false;
        r.counterexample = f;
        break;
      }
    }
    return r;
  }
  case Law::Mask:
  {
    // masks depend on (i, t) only
    std::vector<std::vector<Configuration>> masks( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
      auto m = Configuration::unit( n, i );
      for ( std::size_t t = 0; t <= options.max_time; ++t )
      {
        masks[i].push_back( m );
        m = step( reflected, m );
      }
    }
    return detail::check_each( law, detail::sample_domain( n, options ), options.jobs, [&]( const Configuration& x0 ) -> std::string {
      auto x = x0;
      for ( std::size_t t = 0; t <= options.max_time; ++t )
      {
        for ( std::size_t i = 0; i < n; ++i )
        {
          bool acc = false;
          for ( auto j : masks[i][t].support() )
          {
            acc ^= x0[j];
          }
          if ( acc != x[i] )
          {
            return "x0=" + x0.to_string() + " i=" + std::to_string( i ) + " t=" + std::to_string( t );
          }
        }
        x = step( spec, x );
      }
      return {};
    } );
  }
  case Law::Reflection:
    return detail::check_each( law, detail::sample_domain( n, options ), options.jobs, [&]( const Configuration& x ) -> std::string {
      const auto fx = step( spec, x );
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( step( reflected, reflect_config( x, i ) ) != reflect_config( fx, i ) )
        {
          return "x=" + x.to_string() + " i=" + std::to_string( i );
        }
      }
      return {};
    } );
  case Law::ReflectedDiagram:
  {
    LawReport r{ law, true, 0, {} };
    for ( std::size_t i = 0; i < n && r.passed; ++i )
    {
      auto x = Configuration::unit( n, i ), y = x;
      for ( std::size_t t = 0; t <= options.max_time; ++t, ++r.checked )
      {
        if ( y != reflect_config( x, i ) )
        {
          r.passed = false;
          r.counterexample = "i=" + std::to_string( i ) + " t=" + std::to_string( t );
          break;
        }
        x = step( spec, x );
        y = step( reflected, y );
      }
    }
    return r;
  }
  case Law::UnitDensity:
  {
    if ( options.exhaustive )
    {
      const auto s = max_convergence_stats( spec, true );
      return { law, s.holds, s.configurations,
               s.holds ? "" : ( s.counterexample ? "x=" + s.counterexample->to_string() + " " : "" ) + s.violation };
    }
    const auto s = max_convergence_stats( spec, false );
    return detail::check_each( law, detail::sample_domain( n, options ), options.jobs, [&]( const Configuration& x ) -> std::string {
      const auto c = convergence( spec, x, { .keep_orbit = false } );
      if ( c.transient > s.t_star || s.p_star % c.period != 0 )
      {
        return "x=" + x.to_string() + " transient=" + std::to_string( c.transient ) + " period=" + std::to_string( c.period );
      }
      return {};
    } );
  }
  case Law::Local:
  {
    if ( spec.k() != 2 || interaction_step( spec ) != 0 )
    {
      throw law_precondition_error( "lem_local needs a 2-XOR network with interaction-step 0" );
    }
    return detail::check_each( law, detail::sample_domain( n, options ), options.jobs, [&]( const Configuration& x0 ) -> std::string {
      auto x = x0;
      std::size_t t = 0;
      for ( std::size_t q = 0; q <= options.max_q; ++q )
      {
        const std::size_t target = std::size_t{ 1 } << q;
        for ( ; t < target; ++t )
        {
          x = step( spec, x );
        }
        for ( std::size_t i = 0; i < n; ++i )
        {
          const auto back = ( i + n - target % n ) % n;
          if ( x[i] != ( x0[back] != x0[i] ) )
          {
            return "x0=" + x0.to_string() + " i=" + std::to_string( i ) + " q=" + std::to_string( q );
          }
        }
      }
      return {};
    } );
  }
  case Law::Repeated:
  {
    if ( !detail::is_power_of_two( n ) || spec.k() != 2 )
    {
      throw law_precondition_error( "prop_repeated needs a 2-XOR network of size 2^p" );
    }
    const auto p = static_cast<std::size_t>( std::countr_zero( n ) );
    std::vector<Configuration> domain;
    if ( n <= max_exhaustive_bits )
    {
      for ( std::uint64_t x = 0; x < ( std::uint64_t{ 1 } << n ); ++x )
      {
        auto c = Configuration::from_code( x, n );
        if ( repetition_degree( c ) + 1 >= p )
        {
          domain.push_back( std::move( c ) );
        }
      }
    }
    else
    {
      // the four configurations of degree >= p - 1 are the period-2 words and the constants
      Configuration alt( n );
      for ( std::size_t i = 1; i < n; i += 2 )
      {
        alt.set( i );
      }
      domain = { Configuration( n ), Configuration::ones( n ), alt, alt.rotated( 1 ) };
    }
    return detail::check_each( law, domain, options.jobs, [&]( const Configuration& x ) -> std::string {
      if ( !iterate( spec, x, 2 ).none() )
      {
        return "x=" + x.to_string();
      }
      return {};
    } );
  }
  case Law::Nilpotent:
  case Law::ExactOdd:
  {
    detail::require_power_of_two_s0( spec, law );
    return detail::check_each( law, detail::sample_domain( n, options ), options.jobs, [&]( const Configuration& x ) -> std::string {
      const auto c = convergence( spec, x, { .step_cap = 4 * n + 4, .keep_orbit = true } );
      const bool reaches_zero = c.period == 1 && c.orbit[c.transient].none();
      if ( !reaches_zero || c.transient > n )
      {
        return "x=" + x.to_string() + " transient=" + std::to_string( c.transient ) + " period=" + std::to_string( c.period );
      }
      if ( law == Law::ExactOdd )
      {
        const bool odd = x.weight() % 2 == 1;
        if ( odd ? c.transient != n : c.transient >= n )
        {
          return "x=" + x.to_string() + " weight=" + std::to_string( x.weight() ) + " transient=" + std::to_string( c.transient );
        }
      }
      return {};
    } );
  }
  case Law::RepeatedHalf:
  {
    detail::require_power_of_two_s0( spec, law );
    if ( n < 4 )
    {
      throw law_precondition_error( "lem_repeated needs n = 2^(p+1) with p >= 1" );
    }
    const auto half_spec = two_xor( n / 2, 0 );
    return detail::check_each( law, detail::sample_domain( n / 2, options ), options.jobs, [&]( const Configuration& half ) -> std::string {
      auto x = half.concat( half );
      auto y = half;
      for ( std::size_t t = 0; t <= n; ++t )
      {
        if ( x != y.concat( y ) )
        {
          return "x'=" + half.to_string() + " t=" + std::to_string( t );
        }
        x = step( spec, x );
        y = step( half_spec, y );
      }
      return {};
    } );
  }
  }
  throw std::invalid_argument( "unknown law" );
}

} // namespace banet
