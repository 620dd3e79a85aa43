#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "circulant.hpp"
#include "configuration.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "network.hpp"
#include "sensitivity.hpp"

namespace banet
{

/*! \brief A parsed network file.

  Either `net <n>` followed by one `<i>: <formula>` line per automaton, or
  the shorthand `circulant <n> <c_0...c_{n-1}>`.  Blank lines and lines
  starting with `#` are ignored.  `network` is absent for circulant files
  whose size exceeds the truth-table guard.
*/
struct NetworkDocument
{
  std::size_t n = 0;
  std::vector<Formula> formulas;
  std::optional<CirculantSpec> circulant;
  std::optional<Network> network;
};

namespace detail
{

struct Line
{
  std::string_view text;
  std::size_t offset;
  std::size_t number;
};

inline std::vector<Line> content_lines( std::string_view text )
{
  std::vector<Line> lines;
  std::size_t start = 0, number = 1;
  while ( start <= text.size() )
  {
    auto end = text.find( '\n', start );
    if ( end == std::string_view::npos )
    {
      end = text.size();
    }
    auto line = text.substr( start, end - start );
    if ( !line.empty() && line.back() == '\r' )
    {
      line.remove_suffix( 1 );
    }
    std::size_t first = 0;
    while ( first < line.size() && std::isspace( static_cast<unsigned char>( line[first] ) ) )
    {
      ++first;
    }
    if ( first < line.size() && line[first] != '#' )
    {
      lines.push_back( { line, start, number } );
    }
    start = end + 1;
    ++number;
  }
  return lines;
}

/// Splits on whitespace, remembering each token's offset within the line.
inline std::vector<std::pair<std::string_view, std::size_t>> tokens( std::string_view line )
{
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && std::isspace( static_cast<unsigned char>( line[i] ) ) ) ++i;
    const auto start = i;
    while ( i < line.size() && !std::isspace( static_cast<unsigned char>( line[i] ) ) ) ++i;
    if ( i > start )
    {
      out.emplace_back( line.substr( start, i - start ), start );
    }
  }
  return out;
}

inline std::size_t parse_count( std::string_view token, std::size_t position, const char* what )
{
  if ( token.empty() || token.size() > 9 )
  {
    throw parse_error( std::string( "invalid " ) + what, position, { "positive integer" } );
  }
  std::size_t value = 0;
  for ( std::size_t k = 0; k < token.size(); ++k )
  {
    if ( !std::isdigit( static_cast<unsigned char>( token[k] ) ) )
    {
      throw parse_error( std::string( "invalid " ) + what, position + k, { "digit" } );
    }
    value = value * 10 + static_cast<std::size_t>( token[k] - '0' );
  }
  return value;
}

} // namespace detail

inline NetworkDocument parse_network_file( std::string_view text )
{
  const auto lines = detail::content_lines( text );
  if ( lines.empty() )
  {
    throw parse_error( "empty network file", 0, { "'net'", "'circulant'" } );
  }
  const auto& header = lines.front();
  const auto head = detail::tokens( header.text );
  NetworkDocument doc;

  if ( head[0].first == "circulant" )
  {
    if ( head.size() != 3 )
    {
      throw parse_error( "line " + std::to_string( header.number ) + ": expected 'circulant <n> <row-bits>'",
                         header.offset + ( head.size() > 1 ? head.back().second : head[0].second ), { "<n> <row-bits>" } );
    }
    doc.n = detail::parse_count( head[1].first, header.offset + head[1].second, "network size" );
    const auto row_pos = header.offset + head[2].second;
    Configuration row;
    try
    {
      row = Configuration::from_string( head[2].first );
    }
    catch ( const parse_error& e )
    {
      throw parse_error( "line " + std::to_string( header.number ) + ": invalid first row", row_pos + e.position(), e.expected() );
    }
    try
    {
      doc.circulant = make_circulant( doc.n, row );
    }
    catch ( const std::invalid_argument& e )
    {
      throw parse_error( "line " + std::to_string( header.number ) + ": " + e.what(), row_pos );
    }
    if ( lines.size() > 1 )
    {
      throw parse_error( "unexpected content after circulant header", lines[1].offset, { "end of file" } );
    }
    if ( doc.n <= max_state_bits() )
    {
      doc.network = to_network( *doc.circulant );
    }
    return doc;
  }

  if ( head[0].first != "net" || head.size() != 2 )
  {
    throw parse_error( "line " + std::to_string( header.number ) + ": expected 'net <n>' or 'circulant <n> <row-bits>'",
                       header.offset + head[0].second, { "'net'", "'circulant'" } );
  }
  doc.n = detail::parse_count( head[1].first, header.offset + head[1].second, "network size" );
  if ( doc.n == 0 )
  {
    throw parse_error( "network size must be at least 1", header.offset + head[1].second );
  }
  require_state_bits( doc.n, max_state_bits(), "network file" );

  std::vector<std::optional<Formula>> formulas( doc.n );
  for ( std::size_t k = 1; k < lines.size(); ++k )
  {
    const auto& line = lines[k];
    const auto colon = line.text.find( ':' );
    if ( colon == std::string_view::npos )
    {
      throw parse_error( "line " + std::to_string( line.number ) + ": expected '<i>: <formula>'", line.offset, { "':'" } );
    }
    auto id_text = line.text.substr( 0, colon );
    std::size_t lead = 0;
    while ( lead < id_text.size() && std::isspace( static_cast<unsigned char>( id_text[lead] ) ) ) ++lead;
    while ( !id_text.empty() && std::isspace( static_cast<unsigned char>( id_text.back() ) ) ) id_text.remove_suffix( 1 );
    id_text.remove_prefix( lead );
    const auto id = detail::parse_count( id_text, line.offset + lead, "automaton id" );
    if ( id >= doc.n )
    {
      throw parse_error( "line " + std::to_string( line.number ) + ": automaton " + std::to_string( id ) + " out of range", line.offset + lead );
    }
    if ( formulas[id] )
    {
      throw parse_error( "line " + std::to_string( line.number ) + ": automaton " + std::to_string( id ) + " defined twice", line.offset + lead );
    }
    try
    {
      formulas[id] = parse_formula( line.text.substr( colon + 1 ), doc.n, line.offset + colon + 1 );
    }
    catch ( const parse_error& e )
    {
      throw parse_error( "line " + std::to_string( line.number ) + ": " + e.message(), e.position(), e.expected() );
    }
  }
  for ( std::size_t i = 0; i < doc.n; ++i )
  {
    if ( !formulas[i] )
    {
      throw parse_error( "automaton " + std::to_string( i ) + " has no local function", text.size(), { std::to_string( i ) + ": <formula>" } );
    }
    doc.formulas.push_back( std::move( *formulas[i] ) );
  }
  doc.network = Network::from_formulas( doc.formulas );
  return doc;
}

inline std::string read_text_file( const std::filesystem::path& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( "cannot open " + path.string() );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file( const std::filesystem::path& path, std::string_view content )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot write " + path.string() );
  }
  out << content;
}

inline std::string render_network_file( std::span<const Formula> formulas )
{
  std::string out = "net " + std::to_string( formulas.size() ) + "\n";
  for ( std::size_t i = 0; i < formulas.size(); ++i )
  {
    out += std::to_string( i ) + ": " + render( formulas[i] ) + "\n";
  }
  return out;
}

/// Comma-separated update sets, e.g. `1, {0,1}`.
inline std::string format_labels( std::span<const automaton_mask> labels )
{
  std::string s;
  for ( std::size_t k = 0; k < labels.size(); ++k )
  {
    s += ( k ? ", " : "" ) + format_update_set( labels[k] );
  }
  return s;
}

/*! \brief Graphviz rendering of a transition graph.

  One node per configuration, one edge per (source, target) labelled with
  its update sets; attractor members get a double border.
*/
inline std::string to_dot( const TransitionGraph& tg, const AttractorSet& set )
{
  const auto n = tg.size();
  std::string out = "digraph \"" + std::string( to_string( tg.mode() ) ) + "\" {\n";
  for ( state_code x = 0; x < tg.num_configurations(); ++x )
  {
    const auto name = code_to_string( x, n );
    out += "  \"" + name + "\" [label=\"" + name + "\"";
    if ( set.recurrent( x ) )
    {
      out += ", peripheries=2";
    }
    out += "];\n";
  }
  for ( const auto& arc : tg.arcs() )
  {
    out += "  \"" + code_to_string( arc.source, n ) + "\" -> \"" + code_to_string( arc.target, n ) + "\" [label=\"" +
           format_labels( arc.labels ) + "\"];\n";
  }
  out += "}\n";
  return out;
}

inline std::string attractor_csv_header() { return "mode,attractor_id,size,kind,period\n"; }

/// Rows of the attractor table; period is empty outside the parallel mode.
inline std::string attractor_csv_rows( const AttractorSet& set )
{
  std::string out;
  for ( std::size_t a = 0; a < set.attractors.size(); ++a )
  {
    const auto& att = set.attractors[a];
    out += std::string( to_string( set.mode ) ) + "," + set.id( a ) + "," + std::to_string( att.size() ) + "," + to_string( att.kind ) + "," +
           ( att.period ? std::to_string( *att.period ) : "" ) + "\n";
  }
  return out;
}

inline std::string attractor_csv( const AttractorSet& set ) { return attractor_csv_header() + attractor_csv_rows( set ); }

/// Plain PBM (P1): one text row per time step, cells separated by single spaces.
inline std::string to_pbm( const SpaceTimeDiagram& diagram )
{
  std::string out = "P1\n" + std::to_string( diagram.n ) + " " + std::to_string( diagram.rows.size() ) + "\n";
  for ( const auto& row : diagram.rows )
  {
    for ( std::size_t i = 0; i < diagram.n; ++i )
    {
      if ( i )
      {
        out += ' ';
      }
      out += row[i] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

inline std::string to_ascii( const SpaceTimeDiagram& diagram )
{
  std::string out;
  for ( const auto& row : diagram.rows )
  {
    for ( std::size_t i = 0; i < diagram.n; ++i )
    {
      out += row[i] ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json attractors_json( const AttractorSet& set )
{
  auto list = nlohmann::json::array();
  for ( std::size_t a = 0; a < set.attractors.size(); ++a )
  {
    const auto& att = set.attractors[a];
    auto members = nlohmann::json::array();
    for ( auto x : att.members )
    {
      members.push_back( code_to_string( x, set.n ) );
    }
    nlohmann::json entry{ { "id", set.id( a ) }, { "size", att.size() }, { "kind", to_string( att.kind ) }, { "members", members } };
    if ( att.period )
    {
      entry["period"] = *att.period;
    }
    list.push_back( std::move( entry ) );
  }
  return list;
}

inline nlohmann::json to_json( const SensitivityReport& r )
{
  auto configs = [&]( const std::vector<state_code>& codes ) {
    auto a = nlohmann::json::array();
    for ( auto x : codes )
    {
      a.push_back( code_to_string( x, r.n ) );
    }
    return a;
  };
  auto witnesses = nlohmann::json::array();
  for ( const auto& w : r.witnesses )
  {
    auto sets = nlohmann::json::array();
    for ( auto m : w.update_sets )
    {
      sets.push_back( mask_to_ids( m ) );
    }
    witnesses.push_back( { { "from", code_to_string( w.from, r.n ) }, { "to", code_to_string( w.to, r.n ) }, { "W", sets } } );
  }
  return {
      { "level", to_string( r.level ) },
      { "flags",
        { { "lost_recurrence", r.lost_recurrence },
          { "partition_changed", r.partition_changed },
          { "gained_recurrence", r.gained_recurrence },
          { "attractor_growth", r.attractor_growth } } },
      { "non_sequentialisable_count", r.non_sequentialisable_count },
      { "witnesses", witnesses },
      { "lost_recurrent", configs( r.lost_recurrent ) },
      { "gained_recurrent", configs( r.gained_recurrent ) },
      { "growth_witnesses", configs( r.growth_witnesses ) },
      { "anomalies", r.anomalies },
      { "attractors", { { "asynchronous", attractors_json( r.asynchronous ) }, { "general", attractors_json( r.general ) } } },
  };
}

inline std::string sweep_csv_header() { return "size,network_id,level,monotony\n"; }

inline std::string sweep_csv_row( std::size_t size, std::uint64_t id, SensitivityLevel level, NetworkMonotony monotony )
{
  return std::to_string( size ) + "," + std::to_string( id ) + "," + to_string( level ) + "," + to_string( monotony ) + "\n";
}

} // namespace banet
