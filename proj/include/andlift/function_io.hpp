/*!
  \file function_io.hpp
  \brief The line-oriented function file format

      # comment
      n=3
      table
      0 1 1 1 1 1 1 1        (2^n rationals, little-endian index order)

  or

      n=2
      poly
      {1}: 1
      {2}: 1
      {1,2}: -1              ({} is the constant term)
*/

#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace andlift
{

namespace detail
{

inline std::string_view trim_view( std::string_view s )
{
  while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
    s.remove_prefix( 1 );
  while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
    s.remove_suffix( 1 );
  return s;
}

} // namespace detail

/*! \brief Parses a function file; tables are converted with mobius_invert. */
inline multilinear_poly parse_function( std::istream& in )
{
  enum class section
  {
    header,
    kind,
    table,
    poly
  };
  section state = section::header;
  uint32_t n = 0;
  std::vector<rational> values;
  std::optional<multilinear_poly> poly;
  std::string line;
  std::size_t line_no = 0;

  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
      line.erase( hash );
    auto const text = detail::trim_view( line );
    if ( text.empty() )
      continue;

    try
    {
      switch ( state )
      {
      case section::header:
      {
        if ( text.substr( 0, 2 ) != "n=" )
          throw parse_error( "expected header n=<int>" );
        auto const digits = detail::trim_view( text.substr( 2 ) );
        if ( digits.empty() || digits.find_first_not_of( "0123456789" ) != std::string_view::npos || digits.size() > 3 )
          throw parse_error( "bad variable count '" + std::string( digits ) + "'" );
        n = static_cast<uint32_t>( std::stoul( std::string( digits ) ) );
        if ( n > max_vars )
          throw capacity_error( "function files support at most 64 variables" );
        state = section::kind;
        break;
      }
      case section::kind:
        if ( text == "table" )
        {
          require_capacity( n, limits::dense_table, "table input" );
          state = section::table;
        }
        else if ( text == "poly" )
        {
          poly.emplace( n );
          state = section::poly;
        }
        else
          throw parse_error( "expected 'table' or 'poly'" );
        break;
      case section::table:
      {
        std::istringstream tokens{ std::string( text ) };
        std::string token;
        while ( tokens >> token )
        {
          if ( values.size() == ( std::size_t{ 1 } << n ) )
            throw parse_error( "more than 2^n table entries" );
          values.push_back( parse_rational( token ) );
        }
        break;
      }
      case section::poly:
      {
        auto const colon = text.find( ':' );
        if ( colon == std::string_view::npos )
          throw parse_error( "expected '{i,j,...}: <rational>'" );
        auto const support = parse_set( text.substr( 0, colon ), n );
        auto const coeff = parse_rational( detail::trim_view( text.substr( colon + 1 ) ) );
        if ( poly->terms().contains( support ) )
          throw parse_error( "duplicate monomial " + format_set( support ) );
        poly->add_term( support, coeff );
        break;
      }
      }
    }
    catch ( parse_error const& e )
    {
      throw parse_error( e.what(), line_no );
    }
  }

  switch ( state )
  {
  case section::header:
    throw parse_error( "missing header n=<int>" );
  case section::kind:
    throw parse_error( "missing 'table' or 'poly' section" );
  case section::table:
    if ( values.size() != ( std::size_t{ 1 } << n ) )
      throw parse_error( "expected " + std::to_string( std::size_t{ 1 } << n ) + " table entries, got " + std::to_string( values.size() ) );
    return mobius_invert( truth_table( n, std::move( values ) ) );
  case section::poly:
    break;
  }
  return *poly;
}

inline multilinear_poly parse_function( std::string const& text )
{
  std::istringstream in( text );
  return parse_function( in );
}

inline multilinear_poly read_function_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw parse_error( "cannot open '" + path + "'" );
  return parse_function( in );
}

/*! \brief Poly section, terms ordered by degree then mask. */
inline std::string format_poly( multilinear_poly const& p )
{
  std::vector<std::pair<mask_t, rational>> terms( p.terms().begin(), p.terms().end() );
  std::stable_sort( terms.begin(), terms.end(), []( auto const& a, auto const& b ) {
    auto const pa = popcount( a.first ), pb = popcount( b.first );
    return pa != pb ? pa < pb : a.first < b.first;
  } );
  std::string out = "n=" + std::to_string( p.num_vars() ) + "\npoly\n";
  for ( auto const& [support, coeff] : terms )
    out += format_set( support ) + ": " + to_display_string( coeff ) + "\n";
  return out;
}

inline std::string format_table( truth_table const& t )
{
  std::string out = "n=" + std::to_string( t.num_vars() ) + "\ntable\n";
  for ( std::size_t j = 0; j < t.size(); ++j )
  {
    out += to_display_string( t.values()[j] );
    out += ( j + 1 ) % 16 == 0 || j + 1 == t.size() ? '\n' : ' ';
  }
  return out;
}

} // namespace andlift
