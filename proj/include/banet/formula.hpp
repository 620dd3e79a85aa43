#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "truth_table.hpp"

namespace banet
{

/*! \brief Abstract syntax tree of a Boolean formula over x_0 ... x_{n-1}.

  Nodes are values; children are owned directly.  And, Or and Xor nodes
  hold at least two children.
*/
struct Formula
{
  enum class Kind
  {
    Var,
    Const,
    Not,
    And,
    Or,
    Xor
  };

  Kind kind = Kind::Const;
  std::size_t var = 0;
  bool value = false;
  std::vector<Formula> children;

  static Formula variable( std::size_t index ) { return { Kind::Var, index, false, {} }; }
  static Formula constant( bool v ) { return { Kind::Const, 0, v, {} }; }
  static Formula negation( Formula child ) { return { Kind::Not, 0, false, { std::move( child ) } }; }

  static Formula nary( Kind kind, std::vector<Formula> operands )
  {
    if ( operands.size() < 2 )
    {
      throw std::invalid_argument( "n-ary connective needs at least two operands" );
    }
    return { kind, 0, false, std::move( operands ) };
  }

  static Formula conjunction( std::vector<Formula> operands ) { return nary( Kind::And, std::move( operands ) ); }
  static Formula disjunction( std::vector<Formula> operands ) { return nary( Kind::Or, std::move( operands ) ); }
  static Formula exclusive_or( std::vector<Formula> operands ) { return nary( Kind::Xor, std::move( operands ) ); }

  friend bool operator==( const Formula&, const Formula& ) = default;
};

/// Largest variable index plus one (0 for variable-free formulas).
inline std::size_t min_arity( const Formula& f )
{
  if ( f.kind == Formula::Kind::Var )
  {
    return f.var + 1;
  }
  std::size_t m = 0;
  for ( const auto& c : f.children )
  {
    m = std::max( m, min_arity( c ) );
  }
  return m;
}

/// Evaluates f at the configuration whose code is `code`.
inline bool evaluate( const Formula& f, std::uint64_t code )
{
  switch ( f.kind )
  {
  case Formula::Kind::Var:
    return ( code >> f.var ) & 1u;
  case Formula::Kind::Const:
    return f.value;
  case Formula::Kind::Not:
    return !evaluate( f.children.front(), code );
  case Formula::Kind::And:
    for ( const auto& c : f.children )
    {
      if ( !evaluate( c, code ) )
      {
        return false;
      }
    }
    return true;
  case Formula::Kind::Or:
    for ( const auto& c : f.children )
    {
      if ( evaluate( c, code ) )
      {
        return true;
      }
    }
    return false;
  case Formula::Kind::Xor:
  {
    bool acc = false;
    for ( const auto& c : f.children )
    {
      acc ^= evaluate( c, code );
    }
    return acc;
  }
  }
  return false;
}

namespace detail
{

/*! \brief Recursive-descent parser for the formula grammar

      expr  := or
      or    := xor ('|' xor)*
      xor   := and ('^' and)*
      and   := unary ('&' unary)*
      unary := '!' unary | '(' expr ')' | 'x' DIGITS | '0' | '1'
*/
class FormulaParser
{
public:
  FormulaParser( std::string_view text, std::size_t arity, std::size_t offset )
      : text_( text ), arity_( arity ), offset_( offset )
  {
  }

  Formula parse()
  {
    auto f = parse_binary( 0 );
    skip_space();
    if ( pos_ != text_.size() )
    {
      fail( std::string( "unexpected '" ) + text_[pos_] + "'", { "'|'", "'^'", "'&'", "end of input" } );
    }
    return f;
  }

private:
  static constexpr char operators[] = { '|', '^', '&' };
  static constexpr Formula::Kind kinds[] = { Formula::Kind::Or, Formula::Kind::Xor, Formula::Kind::And };

  Formula parse_binary( std::size_t level )
  {
    if ( level == 3 )
    {
      return parse_unary();
    }
    std::vector<Formula> operands;
    operands.push_back( parse_binary( level + 1 ) );
    while ( accept( operators[level] ) )
    {
      operands.push_back( parse_binary( level + 1 ) );
    }
    if ( operands.size() == 1 )
    {
      return std::move( operands.front() );
    }
    return Formula::nary( kinds[level], std::move( operands ) );
  }

  Formula parse_unary()
  {
    skip_space();
    if ( pos_ == text_.size() )
    {
      fail( "unexpected end of input", { "'!'", "'('", "variable", "'0'", "'1'" } );
    }
    const char c = text_[pos_];
    if ( c == '!' )
    {
      ++pos_;
      return Formula::negation( parse_unary() );
    }
    if ( c == '(' )
    {
      ++pos_;
      auto inner = parse_binary( 0 );
      if ( !accept( ')' ) )
      {
        fail( pos_ < text_.size() ? std::string( "unexpected '" ) + text_[pos_] + "'" : "unexpected end of input",
              { "')'", "'|'", "'^'", "'&'" } );
      }
      return inner;
    }
    if ( c == '0' || c == '1' )
    {
      ++pos_;
      return Formula::constant( c == '1' );
    }
    if ( c == 'x' )
    {
      const auto start = pos_++;
      if ( pos_ == text_.size() || !std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
      {
        fail( "variable name needs an index", { "digit" } );
      }
      std::size_t index = 0;
      while ( pos_ < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
      {
        index = index * 10 + static_cast<std::size_t>( text_[pos_++] - '0' );
        if ( index > 1'000'000 )
        {
          throw parse_error( "variable index too large", offset_ + start );
        }
      }
      if ( index >= arity_ )
      {
        throw parse_error( "variable index out of range: x" + std::to_string( index ) + " with arity " + std::to_string( arity_ ),
                           offset_ + start );
      }
      return Formula::variable( index );
    }
    fail( std::string( "unexpected '" ) + c + "'", { "'!'", "'('", "variable", "'0'", "'1'" } );
  }

  bool accept( char c )
  {
    skip_space();
    if ( pos_ < text_.size() && text_[pos_] == c )
    {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
    {
      ++pos_;
    }
  }

  [[noreturn]] void fail( std::string message, std::vector<std::string> expected ) const
  {
    throw parse_error( std::move( message ), offset_ + pos_, std::move( expected ) );
  }

  std::string_view text_;
  std::size_t arity_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

inline int precedence( Formula::Kind kind )
{
  switch ( kind )
  {
  case Formula::Kind::Or: return 1;
  case Formula::Kind::Xor: return 2;
  case Formula::Kind::And: return 3;
  default: return 4;
  }
}

inline void render_into( const Formula& f, std::string& out )
{
  switch ( f.kind )
  {
  case Formula::Kind::Var:
    out += "x" + std::to_string( f.var );
    return;
  case Formula::Kind::Const:
    out += f.value ? '1' : '0';
    return;
  case Formula::Kind::Not:
  {
    const auto& c = f.children.front();
    out += '!';
    const bool wrap = precedence( c.kind ) < 4;
    if ( wrap ) out += '(';
    render_into( c, out );
    if ( wrap ) out += ')';
    return;
  }
  default:
  {
    const char* sep = f.kind == Formula::Kind::Or ? " | " : f.kind == Formula::Kind::Xor ? " ^ " : " & ";
    for ( std::size_t i = 0; i < f.children.size(); ++i )
    {
      const auto& c = f.children[i];
      if ( i )
      {
        out += sep;
      }
      // same-kind children are parenthesised too, so the tree shape survives a re-parse
      const bool wrap = precedence( c.kind ) <= precedence( f.kind );
      if ( wrap ) out += '(';
      render_into( c, out );
      if ( wrap ) out += ')';
    }
  }
  }
}

} // namespace detail

/*! \brief Parses `text` as a formula over x_0 ... x_{arity-1}.

  Throws parse_error with the offending position (plus `offset`, for callers
  that embed formulas in larger documents) and the expected tokens.
*/
inline Formula parse_formula( std::string_view text, std::size_t arity, std::size_t offset = 0 )
{
  if ( arity == 0 )
  {
    throw std::invalid_argument( "formula arity must be at least 1" );
  }
  return detail::FormulaParser( text, arity, offset ).parse();
}

/// Renders f in the same grammar parse_formula accepts.
inline std::string render( const Formula& f )
{
  std::string out;
  detail::render_into( f, out );
  return out;
}

/// Truth table of f as a function of n inputs.
inline TruthTable compile( const Formula& f, std::size_t n )
{
  if ( min_arity( f ) > n )
  {
    throw std::invalid_argument( "formula references a variable beyond arity " + std::to_string( n ) );
  }
  TruthTable t( n );
  for ( std::uint64_t c = 0; c < t.num_bits(); ++c )
  {
    if ( evaluate( f, c ) )
    {
      t.set( c );
    }
  }
  return t;
}

} // namespace banet
