/*!
  \file report.hpp
  \brief JSON forms of reports; rationals are "num/den" strings, sets are "{i,j}" strings
*/

#pragma once

#include <string>

#include <json.hpp>

#include "comm.hpp"
#include "measures.hpp"
#include "trees.hpp"
#include "zoo.hpp"

namespace andlift
{

using json = nlohmann::ordered_json;

namespace detail
{

inline json rational_json( rational const& q ) { return to_fraction_string( q ); }

inline rational rational_from_json( json const& j )
{
  if ( !j.is_string() )
    throw parse_error( "expected a rational string" );
  return parse_rational( j.get<std::string>() );
}

inline json sets_json( std::vector<mask_t> const& sets )
{
  json out = json::array();
  for ( auto s : sets )
    out.push_back( format_set( s ) );
  return out;
}

inline std::vector<mask_t> sets_from_json( json const& j, uint32_t n )
{
  std::vector<mask_t> out;
  for ( auto const& s : j )
    out.push_back( parse_set( s.get<std::string>(), n ) );
  return out;
}

} // namespace detail

/*! \brief {point, mbs, fmbs, fhsc, hsc, witnesses}; point is "global" for global reports. */
inline json to_json( measure_report const& r )
{
  json witnesses;
  witnesses["packing"] = detail::sets_json( r.packing.blocks );
  json dist = json::array();
  for ( auto const& [w, p] : r.distribution )
    dist.push_back( { { "block", format_set( w ) }, { "probability", detail::rational_json( p ) } } );
  witnesses["distribution"] = dist;
  json weights = json::array();
  for ( auto const& b : r.cover_weights )
    weights.push_back( detail::rational_json( b ) );
  witnesses["cover_weights"] = weights;
  witnesses["hitting_set"] = format_set( r.hitting.elements );
  if ( !r.point )
  {
    witnesses["argmax"] = { { "mbs", format_set( r.argmax.mbs ) },
                            { "fmbs", format_set( r.argmax.fmbs ) },
                            { "fhsc", format_set( r.argmax.fhsc ) },
                            { "hsc", format_set( r.argmax.hsc ) } };
  }

  json out;
  out["n"] = r.n;
  out["point"] = r.point ? json( format_set( *r.point ) ) : json( "global" );
  out["mbs"] = r.mbs;
  out["fmbs"] = detail::rational_json( r.fmbs );
  out["fhsc"] = detail::rational_json( r.fhsc );
  out["hsc"] = r.hsc;
  out["witnesses"] = witnesses;
  return out;
}

inline measure_report measure_report_from_json( json const& j )
{
  try
  {
    measure_report r;
    r.n = j.at( "n" ).get<uint32_t>();
    auto const point = j.at( "point" ).get<std::string>();
    if ( point != "global" )
      r.point = parse_set( point, r.n );
    r.mbs = j.at( "mbs" ).get<std::size_t>();
    r.fmbs = detail::rational_from_json( j.at( "fmbs" ) );
    r.fhsc = detail::rational_from_json( j.at( "fhsc" ) );
    r.hsc = j.at( "hsc" ).get<std::size_t>();
    auto const& w = j.at( "witnesses" );
    r.packing.blocks = detail::sets_from_json( w.at( "packing" ), r.n );
    for ( auto const& d : w.at( "distribution" ) )
      r.distribution.emplace_back( parse_set( d.at( "block" ).get<std::string>(), r.n ), detail::rational_from_json( d.at( "probability" ) ) );
    for ( auto const& b : w.at( "cover_weights" ) )
      r.cover_weights.push_back( detail::rational_from_json( b ) );
    r.hitting.elements = parse_set( w.at( "hitting_set" ).get<std::string>(), r.n );
    if ( r.point )
      r.argmax = { *r.point, *r.point, *r.point, *r.point };
    else
    {
      auto const& a = w.at( "argmax" );
      r.argmax = { parse_set( a.at( "mbs" ).get<std::string>(), r.n ), parse_set( a.at( "fmbs" ).get<std::string>(), r.n ),
                   parse_set( a.at( "fhsc" ).get<std::string>(), r.n ), parse_set( a.at( "hsc" ).get<std::string>(), r.n ) };
    }
    check_report_chain( r );
    return r;
  }
  catch ( json::exception const& e )
  {
    throw parse_error( std::string( "malformed measure report: " ) + e.what() );
  }
}

inline json to_json( pipeline_report const& r )
{
  json out;
  out["n"] = r.n;
  out["spar"] = r.spar;
  out["mon"] = r.mon;
  out["rank"] = r.rank ? json( *r.rank ) : json( nullptr );
  out["mbs"] = r.mbs;
  out["fmbs"] = detail::rational_json( r.fmbs );
  out["hsc"] = r.hsc;
  out["l1"] = detail::rational_json( r.l1 );
  out["zero_depth"] = { { "value", r.zero_depth }, { "bound", r.zero_depth_bound } };
  out["adt_depth"] = { { "value", r.adt_depth }, { "bound", r.adt_depth_bound }, { "verified", r.adt_correct } };
  if ( r.protocol )
    out["protocol"] = { { "pairs", r.protocol->pairs },
                        { "wrong", r.protocol->wrong },
                        { "max_cost", r.protocol->max_cost },
                        { "bound", r.protocol_cost_bound } };
  else
    out["protocol"] = nullptr;
  out["spar_le_3_pow_depth"] = r.spar_within_3d;
  out["l1_le_3_pow_depth"] = r.l1_within_3d;
  out["logrank_ratio"] = r.logrank_ratio ? json( *r.logrank_ratio ) : json( nullptr );
  out["lifting_ratio"] = r.lifting_ratio ? json( *r.lifting_ratio ) : json( nullptr );
  out["ok"] = r.ok();
  return out;
}

template<typename Tree>
json tree_json( Tree const& t )
{
  return { { "n", t.num_vars() }, { "depth", t.depth() }, { "zero_depth", t.zero_depth() }, { "tree", format_tree( t ) } };
}

inline json to_json( protocol_transcript const& t )
{
  json rounds = json::array();
  for ( auto const& r : t.rounds )
    rounds.push_back( { { "query", format_set( r.query ) }, { "alice", r.alice }, { "bob", r.bob } } );
  return { { "rounds", rounds }, { "cost", t.cost() }, { "output", detail::rational_json( t.output ) }, { "text", t.format() } };
}

inline json to_json( dichotomy_result const& r, set_system const& s )
{
  json out;
  out["mbs"] = r.mbs;
  if ( r.hitting )
  {
    out["branch"] = "hitting_set";
    out["hitting_set"] = format_set( r.hitting->cover.elements );
    out["size"] = r.hitting->cover.size();
    out["bound"] = r.hitting_bound;
    out["fhsc"] = detail::rational_json( r.fhsc );
    json steps = json::array();
    for ( auto const& st : r.hitting->steps )
      steps.push_back( { { "element", st.index + 1 }, { "remaining", st.remaining } } );
    out["steps"] = steps;
  }
  else
  {
    out["branch"] = "disjoint_sets";
    out["T"] = format_set( r.t );
    json chosen = json::array();
    for ( auto i : r.chosen )
      chosen.push_back( { { "index", i + 1 }, { "set", format_set( s[i] ) }, { "minus_T", format_set( s[i] & ~r.t ) } } );
    out["sets"] = chosen;
  }
  return out;
}

} // namespace andlift
