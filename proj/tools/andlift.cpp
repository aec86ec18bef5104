// andlift: command-line front end.
// Exit codes: 0 ok, 1 parse/usage error, 2 capacity guard, 3 internal invariant failure,
// and for `verify`, 4 when an asserting check has violations.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <andlift/function_io.hpp>
#include <andlift/report.hpp>
#include <andlift/verify.hpp>

using namespace andlift;

namespace
{

std::ifstream open_input( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw parse_error( "cannot open '" + path + "'" );
  return in;
}

// A point is a set "{1,3}" or the little-endian table index of z.
mask_t parse_point( std::string const& text, uint32_t n )
{
  if ( !text.empty() && text.front() == '{' )
    return parse_set( text, n );
  std::size_t used = 0;
  unsigned long long value = 0;
  try
  {
    value = std::stoull( text, &used );
  }
  catch ( std::logic_error const& )
  {
    throw parse_error( "bad point '" + text + "'" );
  }
  if ( used != text.size() || ( value & ~full_mask( n ) ) != 0 )
    throw parse_error( "bad point '" + text + "'" );
  return value;
}

void print_measures_text( measure_report const& r )
{
  std::cout << "point " << ( r.point ? format_set( *r.point ) : "global" ) << '\n'
            << "mbs   " << r.mbs << '\n'
            << "fmbs  " << to_fraction_string( r.fmbs ) << '\n'
            << "fhsc  " << to_fraction_string( r.fhsc ) << '\n'
            << "hsc   " << r.hsc << '\n';
  std::cout << "packing";
  for ( auto b : r.packing.blocks )
    std::cout << ' ' << format_set( b );
  std::cout << "\nhitting_set " << format_set( r.hitting.elements ) << '\n';
  if ( !r.point )
    std::cout << "argmax mbs=" << format_set( r.argmax.mbs ) << " fmbs=" << format_set( r.argmax.fmbs )
              << " hsc=" << format_set( r.argmax.hsc ) << '\n';
}

struct options
{
  std::string file;
  std::string point;
  bool global = false;
  bool json_out = false;
  std::string kind = "and";
  std::string x, y;
  std::size_t m = 2;
  std::string family;
  uint32_t param = 0;
  std::string emit = "poly";
  uint32_t max_n = 3;
  bool exhaustive = false;
  std::size_t samples = 100;
  uint64_t seed = 1;
  bool progress = false;
};

int cmd_measures( options const& o )
{
  auto in = open_input( o.file );
  auto const f = parse_function( in );
  if ( o.global && !o.point.empty() )
    throw parse_error( "--point and --global are exclusive" );
  auto const r = o.global ? global_measures( f ) : local_measures( f, o.point.empty() ? 0 : parse_point( o.point, f.num_vars() ) );
  if ( o.json_out )
    std::cout << to_json( r ).dump( 2 ) << '\n';
  else
    print_measures_text( r );
  return 0;
}

int cmd_tree( options const& o )
{
  auto in = open_input( o.file );
  auto const f = parse_function( in );
  auto const zdt = build_zero_dt( f );
  json j;
  if ( o.kind == "zero" )
    j = tree_json( zdt );
  else if ( o.kind == "and" )
  {
    auto const adt = zero_dt_to_adt( zdt );
    ensure( adt_verify( adt, f ), "AND-tree does not compute f" );
    j = tree_json( adt );
    j["zero_depth_of_source"] = zdt.zero_depth();
  }
  else
    throw parse_error( "--kind must be zero or and" );
  if ( o.json_out )
    std::cout << j.dump( 2 ) << '\n';
  else
  {
    std::cout << "depth " << j["depth"] << '\n' << "zero_depth " << j["zero_depth"] << '\n';
    std::cout << j["tree"].get<std::string>() << '\n';
  }
  return 0;
}

int cmd_protocol( options const& o )
{
  auto in = open_input( o.file );
  auto const f = parse_function( in );
  auto const adt = zero_dt_to_adt( build_zero_dt( f ) );
  if ( !o.x.empty() || !o.y.empty() )
  {
    auto const n = f.num_vars();
    auto const t = simulate_protocol( adt, o.x.empty() ? 0 : parse_point( o.x, n ), o.y.empty() ? 0 : parse_point( o.y, n ) );
    if ( o.json_out )
      std::cout << to_json( t ).dump( 2 ) << '\n';
    else
      std::cout << t.format() << '\n';
    return 0;
  }
  auto const c = check_protocol( adt, f );
  json j = { { "pairs", c.pairs }, { "wrong", c.wrong }, { "max_cost", c.max_cost }, { "adt_depth", adt.depth() },
             { "bound", 2 * adt.depth() } };
  if ( o.json_out )
    std::cout << j.dump( 2 ) << '\n';
  else
    std::cout << "pairs " << c.pairs << "\nwrong " << c.wrong << "\nmax_cost " << c.max_cost << "\nbound " << 2 * adt.depth() << '\n';
  return c.wrong == 0 && c.max_cost <= 2 * adt.depth() ? 0 : 3;
}

int cmd_rank( options const& o )
{
  auto in = open_input( o.file );
  auto const f = parse_function( in );
  auto const rank = comm_rank( f );
  if ( o.json_out )
    std::cout << json{ { "rank", rank }, { "spar", f.sparsity() } }.dump( 2 ) << '\n';
  else
    std::cout << rank << '\n';
  return 0;
}

int cmd_zoo( options const& o )
{
  family_spec const spec{ parse_family_kind( o.family ), o.param };
  auto const f = generate( spec );
  if ( o.emit == "poly" )
    std::cout << format_poly( f );
  else if ( o.emit == "table" )
    std::cout << format_table( to_truth_table( f ) );
  else
    throw parse_error( "--emit must be poly or table" );
  return 0;
}

int cmd_dichotomy( options const& o )
{
  auto in = open_input( o.file );
  auto const s = parse_set_system( in );
  auto const r = dichotomy( s, o.m );
  auto const j = to_json( r, s );
  if ( o.json_out )
    std::cout << j.dump( 2 ) << '\n';
  else if ( r.hitting )
    std::cout << "hitting_set " << j["hitting_set"].get<std::string>() << " size " << j["size"] << " bound " << j["bound"]
              << " (mbs " << r.mbs << " < m)\n";
  else
  {
    std::cout << "disjoint_sets T=" << format_set( r.t ) << " (mbs " << r.mbs << " >= m)\n";
    for ( auto const& e : j["sets"] )
      std::cout << "  #" << e["index"] << ' ' << e["set"].get<std::string>() << " minus T = " << e["minus_T"].get<std::string>() << '\n';
  }
  return 0;
}

int cmd_verify( options const& o )
{
  harness_options h{ o.max_n, o.exhaustive, o.samples, o.seed };
  std::function<void( std::size_t, std::size_t )> progress;
  if ( o.progress )
    progress = []( std::size_t done, std::size_t total ) {
      if ( done % 1024 == 0 || done == total )
        std::cerr << "\r" << done << "/" << total << std::flush;
    };
  auto const r = run_verification( h, progress );
  if ( o.progress )
    std::cerr << '\n';
  if ( o.json_out )
    std::cout << to_json( r ).dump( 2 ) << '\n';
  else
    std::cout << format_report( r );
  return r.ok() ? 0 : 4;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Exact measures, AND-decision trees and protocols for AND-functions" };
  app.require_subcommand( 1 );
  options o;

  auto* measures = app.add_subcommand( "measures", "MBS, FMBS, FHSC and HSC with witnesses" );
  measures->add_option( "file", o.file, "function file" )->required();
  measures->add_option( "--point", o.point, "base point z as {i,...} or table index (default 0)" );
  measures->add_flag( "--global", o.global, "maximize over all points" );

  auto* tree = app.add_subcommand( "tree", "greedy zero-decision tree or the AND-tree built from it" );
  tree->add_option( "file", o.file, "function file" )->required();
  tree->add_option( "--kind", o.kind, "zero or and" )->check( CLI::IsMember( { "zero", "and" } ) );

  auto* protocol = app.add_subcommand( "protocol", "check the AND-tree protocol on every (x,y), or print one transcript" );
  protocol->add_option( "file", o.file, "function file" )->required();
  protocol->add_option( "--x", o.x, "Alice's input" );
  protocol->add_option( "--y", o.y, "Bob's input" );

  auto* rank = app.add_subcommand( "rank", "exact rank of the matrix f(x & y)" );
  rank->add_option( "file", o.file, "function file" )->required();

  auto* zoo = app.add_subcommand( "zoo", "emit a named function as a function file" );
  std::string family_help = "one of:";
  for ( auto const& [name, kind] : family_names )
    family_help += " " + std::string( name );
  zoo->add_option( "family", o.family, family_help )->required();
  zoo->add_option( "param", o.param, "m (projective_plane), n, clause count (and_or) or k (redundant_indexing)" )->required();
  zoo->add_option( "--emit", o.emit, "poly or table" )->check( CLI::IsMember( { "poly", "table" } ) );

  auto* dich = app.add_subcommand( "dichotomy", "m disjoint sets off a small T, or a small hitting set" );
  dich->add_option( "file", o.file, "set system file" )->required();
  dich->add_option( "--m", o.m, "number of disjoint sets sought" )->check( CLI::PositiveNumber );

  auto* verify = app.add_subcommand( "verify", "run the verification harness" );
  verify->add_option( "--max-n", o.max_n, "variables per function (exhaustive <= 4, sampled <= 10)" );
  verify->add_flag( "--exhaustive", o.exhaustive, "every boolean function on max-n variables" );
  verify->add_option( "--samples", o.samples, "sampled mode: number of functions" );
  verify->add_option( "--seed", o.seed, "sampled mode seed" );
  verify->add_flag( "--progress", o.progress, "progress on stderr" );

  for ( auto* sub : { measures, tree, protocol, rank, zoo, dich, verify } )
    sub->add_flag( "--json", o.json_out, "JSON output" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? 0 : 1;
  }

  try
  {
    if ( *measures )
      return cmd_measures( o );
    if ( *tree )
      return cmd_tree( o );
    if ( *protocol )
      return cmd_protocol( o );
    if ( *rank )
      return cmd_rank( o );
    if ( *zoo )
      return cmd_zoo( o );
    if ( *dich )
      return cmd_dichotomy( o );
    if ( *verify )
      return cmd_verify( o );
  }
  catch ( parse_error const& e )
  {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  }
  catch ( capacity_error const& e )
  {
    std::cerr << "capacity: " << e.what() << '\n';
    return 2;
  }
  catch ( invariant_error const& e )
  {
    std::cerr << "internal: " << e.what() << '\n';
    return 3;
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "internal: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
