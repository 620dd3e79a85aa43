#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace banet
{

/*! \brief Malformed formula, network file or configuration string.

  Carries the byte offset of the offending token and the tokens that would
  have been accepted there.
*/
class parse_error : public std::runtime_error
{
public:
  parse_error( std::string message, std::size_t position, std::vector<std::string> expected = {} )
      : std::runtime_error( format( message, position, expected ) ),
        message_( std::move( message ) ),
        position_( position ),
        expected_( std::move( expected ) )
  {
  }

  const std::string& message() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  static std::string format( const std::string& message, std::size_t position, const std::vector<std::string>& expected )
  {
    std::string out = "parse error at position " + std::to_string( position ) + ": " + message;
    if ( !expected.empty() )
    {
      out += " (expected ";
      for ( std::size_t i = 0; i < expected.size(); ++i )
      {
        out += ( i ? ", " : "" ) + expected[i];
      }
      out += ")";
    }
    return out;
  }

  std::string message_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// An operation refused to run because its input exceeds a state-space or step budget.
class resource_guard_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Trajectory iteration hit its step cap before any configuration repeated.
class step_budget_exceeded : public resource_guard_error
{
public:
  using resource_guard_error::resource_guard_error;
};

/// A law was asked to run on a network outside its hypotheses.
class law_precondition_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t default_max_state_bits = 24;

/*! \brief Largest n accepted by operations that enumerate all 2^n configurations.

  Defaults to 24; the environment variable `BAN_MAX_STATE_BITS` overrides it
  (clamped to 30 so that configuration codes fit in 32 bits).
*/
inline std::size_t max_state_bits()
{
  if ( const char* env = std::getenv( "BAN_MAX_STATE_BITS" ); env && *env )
  {
    char* end = nullptr;
    const auto value = std::strtoul( env, &end, 10 );
    if ( end && *end == '\0' && value > 0 )
    {
      return value > 30 ? 30 : static_cast<std::size_t>( value );
    }
  }
  return default_max_state_bits;
}

inline void require_state_bits( std::size_t n, std::size_t limit, const char* what )
{
  if ( n > limit )
  {
    throw resource_guard_error( std::string( what ) + ": network size " + std::to_string( n ) +
                                " exceeds the limit of " + std::to_string( limit ) + " automata" );
  }
}

} // namespace banet
