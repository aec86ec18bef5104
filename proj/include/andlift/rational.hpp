/*!
  \file rational.hpp
  \brief Exact rational arithmetic (GMP backed) and its text forms
*/

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

namespace andlift
{

/* expression templates off: values are stored and copied freely */
using integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline integer numerator_of( rational const& q ) { return boost::multiprecision::numerator( q ); }
inline integer denominator_of( rational const& q ) { return boost::multiprecision::denominator( q ); }

inline bool is_integer( rational const& q ) { return denominator_of( q ) == 1; }

/*! \brief Canonical `num/den` form, used in JSON (`2/1`, `-7/3`, `0/1`). */
inline std::string to_fraction_string( rational const& q )
{
  return numerator_of( q ).str() + "/" + denominator_of( q ).str();
}

/*! \brief Short human form: integers without denominator. */
inline std::string to_display_string( rational const& q )
{
  return is_integer( q ) ? numerator_of( q ).str() : to_fraction_string( q );
}

/*! \brief Parses `k`, `-k`, `a/b` (b nonzero). */
inline rational parse_rational( std::string_view text )
{
  auto is_int = []( std::string_view s ) {
    if ( !s.empty() && ( s.front() == '-' || s.front() == '+' ) )
      s.remove_prefix( 1 );
    if ( s.empty() )
      return false;
    for ( char c : s )
      if ( c < '0' || c > '9' )
        return false;
    return true;
  };
  auto to_int = []( std::string_view s ) {
    if ( !s.empty() && s.front() == '+' )
      s.remove_prefix( 1 );
    return integer( std::string( s ) );
  };

  auto const slash = text.find( '/' );
  if ( slash == std::string_view::npos )
  {
    if ( !is_int( text ) )
    {
      throw parse_error( "bad rational '" + std::string( text ) + "'" );
    }
    return rational( to_int( text ) );
  }
  auto const num = text.substr( 0, slash );
  auto const den = text.substr( slash + 1 );
  if ( !is_int( num ) || !is_int( den ) || den.front() == '-' || den.front() == '+' )
  {
    throw parse_error( "bad rational '" + std::string( text ) + "'" );
  }
  integer const d = to_int( den );
  if ( d == 0 )
  {
    throw parse_error( "zero denominator in '" + std::string( text ) + "'" );
  }
  return rational( to_int( num ), d );
}

} // namespace andlift
