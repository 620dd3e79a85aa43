// banet: command-line front end for Boolean automata network analyses.
//
// Exit codes: 0 success, 1 law violation, 2 parse or usage error, 3 resource guard.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <banet/banet.hpp>

using namespace banet;
using nlohmann::json;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_guard = 3;

std::string sha256_hex( std::string_view data )
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest( data.data(), data.size(), digest, &length, EVP_sha256(), nullptr );
  std::string hex;
  char byte[3];
  for ( unsigned int k = 0; k < length; ++k )
  {
    std::snprintf( byte, sizeof byte, "%02x", digest[k] );
    hex += byte;
  }
  return hex;
}

/// The RunReport: what ran, on which inputs, what it wrote, and law outcomes.
struct RunReport
{
  std::string command;
  json inputs = json::array();
  json outputs = json::array();
  json laws = json::array();

  void input_file( const std::string& path, const std::string& content )
  {
    inputs.push_back( { { "path", path }, { "sha256", sha256_hex( content ) } } );
  }

  void input_value( const std::string& name, const std::string& value )
  {
    inputs.push_back( { { "name", name }, { "sha256", sha256_hex( value ) } } );
  }

  void write( const std::string& path, std::string_view content )
  {
    write_text_file( path, content );
    outputs.push_back( path );
  }
};

NetworkDocument load( const std::string& path, RunReport& report )
{
  const auto text = read_text_file( path );
  report.input_file( path, text );
  return parse_network_file( text );
}

const Network& require_network( const NetworkDocument& doc )
{
  if ( !doc.network )
  {
    throw resource_guard_error( "network of size " + std::to_string( doc.n ) + " exceeds the state-space guard of " +
                                std::to_string( max_state_bits() ) + " automata" );
  }
  return *doc.network;
}

void emit( const std::string& path, const std::string& content, RunReport& report )
{
  if ( path == "-" )
  {
    std::cout << content;
  }
  else
  {
    report.write( path, content );
  }
}

// analyze ------------------------------------------------------------------

int cmd_analyze( const std::string& file, RunReport& report )
{
  const auto doc = load( file, report );
  std::cout << "size: " << doc.n << "\n";
  if ( doc.circulant )
  {
    std::cout << "circulant first row: " << doc.circulant->row.to_string() << " (k = " << doc.circulant->k() << ")\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  NetworkMonotony monotony = NetworkMonotony::TotallyNonMonotone;
  std::optional<MonotonicityReport> verdicts;
  if ( doc.network )
  {
    arcs = interaction_graph( *doc.network ).arcs;
    verdicts = monotonicity_report( *doc.network );
    monotony = verdicts->network;
  }
  else
  {
    // XOR of k >= 2 distinct inputs is non-monotone in each of them
    const auto& spec = *doc.circulant;
    for ( std::size_t j = 0; j < spec.n; ++j )
    {
      for ( std::size_t i = 0; i < spec.n; ++i )
      {
        if ( spec.matrix( i, j ) )
        {
          arcs.emplace_back( j, i );
        }
      }
    }
  }
  std::cout << "interaction graph: " << arcs.size() << " arcs\n";
  for ( const auto& [j, i] : arcs )
  {
    std::cout << "  " << j << " -> " << i << "\n";
  }
  std::cout << "monotony: " << to_string( monotony ) << "\n";
  if ( verdicts )
  {
    for ( std::size_t i = 0; i < doc.n; ++i )
    {
      std::cout << "  f" << i << ":";
      for ( std::size_t j = 0; j < doc.n; ++j )
      {
        std::cout << " x" << j << "=" << to_string( verdicts->verdicts[i][j] );
      }
      std::cout << "\n";
    }
  }
  return exit_ok;
}

// graph --------------------------------------------------------------------

UpdateMode parse_mode( const std::string& m )
{
  return m == "g" ? UpdateMode::General : m == "a" ? UpdateMode::Asynchronous : UpdateMode::Parallel;
}

int cmd_graph( const std::string& file, const std::string& mode_flag, const std::string& dot, const std::string& csv, RunReport& report )
{
  const auto doc = load( file, report );
  const auto& net = require_network( doc );
  const auto mode = parse_mode( mode_flag );
  const auto tg = build_graph( net, mode );
  const auto set = attractors( tg );
  std::uint64_t arcs = 0, labelled = 0;
  for ( state_code x = 0; x < tg.num_configurations(); ++x )
  {
    tg.for_each_successor( x, [&]( state_code ) { ++arcs; } );
    labelled += tg.labelled_out_degree( x );
  }
  std::cout << "mode: " << to_string( mode ) << "\n"
            << "configurations: " << tg.num_configurations() << "\n"
            << "arcs: " << arcs << "\n"
            << "labelled transitions: " << labelled << "\n"
            << "attractors: " << set.attractors.size() << "\n";
  for ( std::size_t a = 0; a < set.attractors.size(); ++a )
  {
    std::cout << "  " << set.id( a ) << ": " << to_string( set.attractors[a].kind ) << ", size " << set.attractors[a].size() << "\n";
  }
  if ( !dot.empty() )
  {
    emit( dot, to_dot( tg, set ), report );
  }
  if ( !csv.empty() )
  {
    emit( csv, attractor_csv( set ), report );
  }
  return exit_ok;
}

// classify -----------------------------------------------------------------

int cmd_classify( const std::string& file, bool parallel_only, const std::string& json_path, RunReport& report )
{
  if ( parallel_only )
  {
    throw std::invalid_argument( "classification compares the asynchronous and general graphs; it is undefined under --parallel-only" );
  }
  const auto doc = load( file, report );
  const auto r = classify_sensitivity( require_network( doc ) );
  std::cout << "level: " << to_string( r.level ) << "\n"
            << "lost_recurrence: " << r.lost_recurrence << "\n"
            << "partition_changed: " << r.partition_changed << "\n"
            << "gained_recurrence: " << r.gained_recurrence << "\n"
            << "attractor_growth: " << r.attractor_growth << "\n"
            << "non-sequentialisable transitions: " << r.non_sequentialisable_count << "\n"
            << "asynchronous attractors: " << r.asynchronous.attractors.size() << "\n"
            << "general attractors: " << r.general.attractors.size() << "\n";
  for ( const auto& a : r.anomalies )
  {
    std::cout << "anomaly: " << a << "\n";
  }
  if ( !json_path.empty() )
  {
    emit( json_path, to_json( r ).dump( 2 ) + "\n", report );
  }
  return exit_ok;
}

// enumerate-minimal --------------------------------------------------------

int cmd_enumerate_minimal( std::size_t max_size, std::size_t jobs, const std::string& csv, RunReport& report )
{
  report.input_value( "max-size", std::to_string( max_size ) );
  const auto found = find_minimal_level2( max_size, jobs );
  for ( std::size_t a = 0; a < found.size(); ++a )
  {
    const auto& c = found[a];
    json tables = json::array();
    for ( const auto& f : c.network.functions() )
    {
      tables.push_back( f.to_string() );
    }
    json isomorphic = json::array();
    for ( std::size_t b = 0; b < found.size(); ++b )
    {
      if ( b != a && networks_isomorphic( c.network, found[b].network ) )
      {
        isomorphic.push_back( found[b].index );
      }
    }
    json line{ { "size", c.network.size() },    { "network_id", c.index },          { "truth_tables", tables },
               { "level", to_string( c.level ) }, { "monotony", to_string( c.monotony ) }, { "isomorphic_to", isomorphic } };
    std::cout << line.dump() << "\n";
  }
  json summary{ { "max_size", max_size }, { "found", found.size() } };
  summary["minimal_size"] = found.empty() ? json( nullptr ) : json( found.front().network.size() );
  std::cout << summary.dump() << "\n";
  if ( !csv.empty() )
  {
    const auto last = found.empty() ? max_size : found.front().network.size();
    std::string out = sweep_csv_header();
    for ( std::size_t n = 1; n <= last; ++n )
    {
      const auto table = sweep_table( n, jobs );
      for ( std::uint64_t k = 0; k < table.level.size(); ++k )
      {
        out += sweep_csv_row( n, k, table.level[k], table.monotony[k] );
      }
    }
    emit( csv, out, report );
  }
  return exit_ok;
}

// xor ----------------------------------------------------------------------

struct XorFlags
{
  std::size_t n = 0;
  std::string row;
  std::vector<std::size_t> ones;
  std::string x0;
  std::size_t steps = 0;
  std::string pbm;
  bool ascii = false;
  std::string law = "all";
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::size_t jobs = 1;
};

constexpr std::size_t max_circulant_size = 4096;

CirculantSpec xor_spec( const XorFlags& f, RunReport& report )
{
  if ( f.n < 2 || f.n > max_circulant_size )
  {
    if ( f.n > max_circulant_size )
    {
      throw resource_guard_error( "circulant size " + std::to_string( f.n ) + " exceeds " + std::to_string( max_circulant_size ) );
    }
    throw std::invalid_argument( "--n must be at least 2" );
  }
  CirculantSpec spec;
  if ( !f.row.empty() )
  {
    spec = make_circulant( f.n, f.row );
  }
  else if ( !f.ones.empty() )
  {
    Configuration row( f.n );
    for ( auto i : f.ones )
    {
      if ( i >= f.n )
      {
        throw std::out_of_range( "--ones position " + std::to_string( i ) + " out of range" );
      }
      row.set( i );
    }
    spec = make_circulant( f.n, row );
  }
  else
  {
    spec = two_xor( f.n, 0 );
  }
  report.input_value( "row", std::to_string( f.n ) + ":" + spec.row.to_string() );
  return spec;
}

Configuration xor_start( const XorFlags& f )
{
  if ( f.x0.empty() )
  {
    return Configuration::unit( f.n, 0 );
  }
  auto x = Configuration::from_string( f.x0 );
  if ( x.size() != f.n )
  {
    throw std::invalid_argument( "--x0 has " + std::to_string( x.size() ) + " cells, expected " + std::to_string( f.n ) );
  }
  return x;
}

int cmd_xor_diagram( const XorFlags& f, RunReport& report )
{
  const auto spec = xor_spec( f, report );
  const auto d = space_time( spec, xor_start( f ), f.steps );
  if ( !f.pbm.empty() )
  {
    emit( f.pbm, to_pbm( d ), report );
  }
  if ( f.ascii || f.pbm.empty() )
  {
    std::cout << to_ascii( d );
  }
  return exit_ok;
}

int cmd_xor_stats( const XorFlags& f, RunReport& report )
{
  const auto spec = xor_spec( f, report );
  std::cout << "n: " << spec.n << "\n"
            << "k: " << spec.k() << "\n"
            << "first row: " << spec.row.to_string() << "\n"
            << "reflected first row: " << reflect_network( spec ).row.to_string() << "\n";
  if ( spec.k() == 2 )
  {
    std::cout << "interaction-step: " << interaction_step( spec ) << "\n";
  }
  const auto x0 = xor_start( f );
  const auto c = convergence( spec, x0, { .keep_orbit = false } );
  std::cout << "x0: " << x0.to_string() << "\n"
            << "repetition degree: " << repetition_degree( x0 ) << "\n"
            << "density: " << density( x0 ).to_string() << "\n"
            << "transient: " << c.transient << "\n"
            << "period: " << c.period << "\n";
  if ( f.exhaustive )
  {
    const auto s = max_convergence_stats( spec, true );
    std::cout << "t*: " << s.t_star << "\n"
              << "p*: " << s.p_star << "\n"
              << "max transient: " << s.max_transient << " over " << s.configurations << " configurations\n"
              << "unit configuration maximal: " << ( s.holds ? "yes" : "no" ) << "\n";
    report.laws.push_back( { { "law", "prop_density" },
                             { "passed", s.holds },
                             { "checked", s.configurations },
                             { "counterexample", s.holds ? "" : ( s.counterexample ? s.counterexample->to_string() + " " : "" ) + s.violation } } );
    if ( !s.holds )
    {
      std::cout << "violation: " << s.violation << "\n";
      return exit_violation;
    }
  }
  return exit_ok;
}

int cmd_xor_verify( const XorFlags& f, RunReport& report )
{
  const auto spec = xor_spec( f, report );
  LawOptions options;
  options.exhaustive = f.exhaustive;
  options.seed = f.seed;
  options.samples = f.samples;
  options.jobs = f.jobs;
  std::vector<Law> laws;
  const bool all = f.law == "all";
  if ( all )
  {
    for ( const auto& info : law_table )
    {
      laws.push_back( info.law );
    }
  }
  else
  {
    laws.push_back( parse_law( f.law ) );
  }
  bool failed = false;
  for ( auto law : laws )
  {
    LawReport r;
    try
    {
      r = verify_law( law, spec, options );
    }
    catch ( const law_precondition_error& e )
    {
      if ( !all )
      {
        throw;
      }
      std::cout << law_id( law ) << ": SKIP (" << e.what() << ")\n";
      report.laws.push_back( { { "law", law_id( law ) }, { "skipped", e.what() } } );
      continue;
    }
    failed |= !r.passed;
    std::cout << law_id( law ) << ": " << ( r.passed ? "PASS" : "FAIL" ) << " (" << r.checked << " checked)";
    if ( !r.passed )
    {
      std::cout << " counterexample: " << r.counterexample;
    }
    std::cout << "\n";
    report.laws.push_back( { { "law", law_id( law ) }, { "passed", r.passed }, { "checked", r.checked }, { "counterexample", r.counterexample } } );
  }
  return failed ? exit_violation : exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Boolean automata networks: transition graphs, synchronism sensitivity and XOR circulant dynamics" };
  app.require_subcommand( 1 );
  std::string report_path;
  app.add_option( "--report", report_path, "Write a JSON run report to this file" );

  std::string file, mode = "a", dot, csv, json_path;
  bool parallel_only = false;
  std::size_t max_size = 2, jobs = 1;

  auto* analyze = app.add_subcommand( "analyze", "Size, interaction graph and monotony class of a network file" );
  analyze->add_option( "file", file, "Network file" )->required();

  auto* graph = app.add_subcommand( "graph", "Transition graph and attractors under one updating mode" );
  graph->add_option( "file", file, "Network file" )->required();
  graph->add_option( "--mode", mode, "g (general), a (asynchronous) or p (parallel)" )->check( CLI::IsMember( { "g", "a", "p" } ) );
  graph->add_option( "--dot", dot, "Write the graph in DOT format ('-' for stdout)" );
  graph->add_option( "--csv", csv, "Write the attractor table as CSV ('-' for stdout)" );

  auto* classify = app.add_subcommand( "classify", "Synchronism-sensitivity level of a network file" );
  classify->add_option( "file", file, "Network file" )->required();
  classify->add_option( "--json", json_path, "Write the JSON report ('-' for stdout)" );
  classify->add_flag( "--parallel-only", parallel_only, "Restrict to the parallel mode (classification is then undefined)" );

  auto* minimal = app.add_subcommand( "enumerate-minimal", "Smallest networks of sensitivity level 2" );
  minimal->add_option( "--max-size", max_size, "Largest network size to enumerate (at most 3)" );
  minimal->add_option( "--jobs", jobs, "Worker threads" )->check( CLI::PositiveNumber );
  minimal->add_option( "--csv", csv, "Write the per-network sweep as CSV ('-' for stdout)" );

  XorFlags xf;
  auto* xor_cmd = app.add_subcommand( "xor", "XOR circulant networks" );
  xor_cmd->require_subcommand( 1 );
  const auto add_spec_flags = [&]( CLI::App* sub ) {
    sub->add_option( "--n", xf.n, "Network size" )->required();
    auto* row = sub->add_option( "--row", xf.row, "First row c_0...c_{n-1} (default: interaction-step 0)" );
    sub->add_option( "--ones", xf.ones, "Positions of the ones of the first row" )->delimiter( ',' )->excludes( row );
  };
  auto* diagram = xor_cmd->add_subcommand( "diagram", "Space-time diagram" );
  add_spec_flags( diagram );
  diagram->add_option( "--x0", xf.x0, "Initial configuration (default: 10...0)" );
  diagram->add_option( "--steps", xf.steps, "Last time step" )->required();
  diagram->add_option( "--pbm", xf.pbm, "Write the diagram as plain PBM ('-' for stdout)" );
  diagram->add_flag( "--ascii", xf.ascii, "Print the ASCII preview even when writing PBM" );
  auto* stats = xor_cmd->add_subcommand( "stats", "Interaction-step, convergence and maximal transient" );
  add_spec_flags( stats );
  stats->add_option( "--x0", xf.x0, "Configuration to iterate (default: 10...0)" );
  stats->add_flag( "--exhaustive", xf.exhaustive, "Sweep all 2^n configurations (n <= 16)" );
  auto* verify = xor_cmd->add_subcommand( "verify", "Check convergence laws" );
  add_spec_flags( verify );
  std::string law_help = "Law id or 'all':";
  for ( const auto& info : law_table )
  {
    law_help += std::string( " " ) + info.id;
  }
  verify->add_option( "--law", xf.law, law_help );
  verify->add_flag( "--exhaustive", xf.exhaustive, "Check every configuration (n <= 16)" );
  verify->add_option( "--seed", xf.seed, "Seed for sampled checks" );
  verify->add_option( "--samples", xf.samples, "Number of sampled configurations" );
  verify->add_option( "--jobs", xf.jobs, "Worker threads" )->check( CLI::PositiveNumber );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  int code = exit_ok;
  try
  {
    if ( *analyze )
    {
      report.command = "analyze";
      code = cmd_analyze( file, report );
    }
    else if ( *graph )
    {
      report.command = "graph";
      code = cmd_graph( file, mode, dot, csv, report );
    }
    else if ( *classify )
    {
      report.command = "classify";
      code = cmd_classify( file, parallel_only, json_path, report );
    }
    else if ( *minimal )
    {
      report.command = "enumerate-minimal";
      code = cmd_enumerate_minimal( max_size, jobs, csv, report );
    }
    else if ( *diagram )
    {
      report.command = "xor diagram";
      code = cmd_xor_diagram( xf, report );
    }
    else if ( *stats )
    {
      report.command = "xor stats";
      code = cmd_xor_stats( xf, report );
    }
    else if ( *verify )
    {
      report.command = "xor verify";
      code = cmd_xor_verify( xf, report );
    }
  }
  catch ( const resource_guard_error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    code = exit_guard;
  }
  catch ( const parse_error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    code = exit_usage;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    code = exit_usage;
  }

  if ( !report_path.empty() )
  {
    const double seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    const json r{ { "command", report.command }, { "inputs", report.inputs }, { "outputs", report.outputs },
                  { "laws", report.laws },       { "exit_code", code },         { "timing_seconds", seconds } };
    try
    {
      write_text_file( report_path, r.dump( 2 ) + "\n" );
    }
    catch ( const std::exception& e )
    {
      std::cerr << "error: " << e.what() << "\n";
      return exit_usage;
    }
  }
  return code;
}
