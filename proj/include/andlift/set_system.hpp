/*!
  \file set_system.hpp
  \brief Families of nonempty, distinct subsets of [n]
*/

#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bitvec.hpp"
#include "errors.hpp"

namespace andlift
{

class set_system
{
public:
  set_system() = default;

  /*! \brief Validates: sets nonempty, inside [n], pairwise distinct. Order is kept. */
  set_system( uint32_t n, std::vector<mask_t> sets ) : n_( n ), sets_( std::move( sets ) )
  {
    if ( n > max_vars )
    {
      throw capacity_error( "set systems support at most 64 elements" );
    }
    for ( auto s : sets_ )
    {
      if ( s == 0 )
      {
        throw std::invalid_argument( "set_system: empty set (covering would be infeasible)" );
      }
      if ( ( s & ~full_mask( n ) ) != 0 )
      {
        throw std::invalid_argument( "set_system: set uses an element outside [n]" );
      }
    }
    auto sorted = sets_;
    std::sort( sorted.begin(), sorted.end() );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
    {
      throw std::invalid_argument( "set_system: duplicate set" );
    }
  }

  uint32_t ground_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  std::vector<mask_t> const& sets() const noexcept { return sets_; }
  mask_t operator[]( std::size_t i ) const { return sets_.at( i ); }

  mask_t support() const noexcept
  {
    mask_t u = 0;
    for ( auto s : sets_ )
      u |= s;
    return u;
  }

  friend bool operator==( set_system const&, set_system const& ) = default;

private:
  uint32_t n_{ 0 };
  std::vector<mask_t> sets_;
};

/*! \brief Reads `n=<int>` then one `{i,j,...}` per line; `#` starts a comment. */
inline set_system parse_set_system( std::istream& in )
{
  std::string line;
  std::size_t line_no = 0;
  std::optional<uint32_t> n;
  std::vector<mask_t> sets;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    auto const first = line.find_first_not_of( " \t\r" );
    if ( first == std::string::npos )
    {
      continue;
    }
    std::string_view text( line );
    text = text.substr( first );
    while ( !text.empty() && ( text.back() == ' ' || text.back() == '\t' || text.back() == '\r' ) )
      text.remove_suffix( 1 );
    if ( !n )
    {
      if ( text.substr( 0, 2 ) != "n=" )
      {
        throw parse_error( "expected header n=<int>", line_no );
      }
      try
      {
        auto const value = std::stoul( std::string( text.substr( 2 ) ) );
        if ( value > max_vars )
        {
          throw parse_error( "n exceeds 64", line_no );
        }
        n = static_cast<uint32_t>( value );
      }
      catch ( std::logic_error const& )
      {
        throw parse_error( "bad n in header", line_no );
      }
      continue;
    }
    try
    {
      sets.push_back( parse_set( text, *n ) );
    }
    catch ( parse_error const& e )
    {
      throw parse_error( e.what(), line_no );
    }
  }
  if ( !n )
  {
    throw parse_error( "missing header n=<int>" );
  }
  try
  {
    return set_system( *n, std::move( sets ) );
  }
  catch ( std::invalid_argument const& e )
  {
    throw parse_error( e.what() );
  }
}

inline set_system parse_set_system( std::string const& text )
{
  std::istringstream in( text );
  return parse_set_system( in );
}

inline std::string format_set_system( set_system const& s )
{
  std::string out = "n=" + std::to_string( s.ground_size() ) + "\n";
  for ( auto set : s.sets() )
  {
    out += format_set( set ) + "\n";
  }
  return out;
}

} // namespace andlift
