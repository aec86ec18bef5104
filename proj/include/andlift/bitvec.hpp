/*!
  \file bitvec.hpp
  \brief Inputs z in {0,1}^n, identified with subsets of [n]

  Variable i (1-based, as printed and parsed) is stored in bit i-1, so the
  mask of a point is also its index in a little-endian truth table.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace andlift
{

using mask_t = std::uint64_t;

inline constexpr uint32_t max_vars = 64;

inline constexpr mask_t full_mask( uint32_t n ) noexcept
{
  return n >= 64 ? ~mask_t{ 0 } : ( mask_t{ 1 } << n ) - 1;
}

inline constexpr bool is_subset( mask_t a, mask_t b ) noexcept { return ( a & ~b ) == 0; }

inline constexpr uint32_t popcount( mask_t a ) noexcept { return static_cast<uint32_t>( std::popcount( a ) ); }

/*! \brief A subset of [n] with its ambient size. */
class bitvec
{
public:
  bitvec() = default;

  explicit bitvec( uint32_t n, mask_t bits = 0 ) : n_( n ), bits_( bits )
  {
    if ( n > max_vars )
    {
      throw capacity_error( "bitvec supports at most 64 variables" );
    }
    if ( ( bits & ~full_mask( n ) ) != 0 )
    {
      throw std::invalid_argument( "bitvec: bit set outside [n]" );
    }
  }

  /*! \brief Builds from 1-based indices. */
  static bitvec from_indices( uint32_t n, std::vector<uint32_t> const& one_based )
  {
    mask_t bits = 0;
    for ( auto i : one_based )
    {
      if ( i == 0 || i > n )
      {
        throw std::invalid_argument( "bitvec: index " + std::to_string( i ) + " outside [n]" );
      }
      bits |= mask_t{ 1 } << ( i - 1 );
    }
    return bitvec( n, bits );
  }

  uint32_t size() const noexcept { return n_; }
  mask_t bits() const noexcept { return bits_; }
  uint32_t count() const noexcept { return popcount( bits_ ); }
  bool empty() const noexcept { return bits_ == 0; }

  /*! \brief Tests 0-based position i. */
  bool test( uint32_t i ) const noexcept { return i < 64 && ( ( bits_ >> i ) & 1u ); }

  bool subset_of( bitvec const& other ) const noexcept { return is_subset( bits_, other.bits_ ); }
  bool disjoint( bitvec const& other ) const noexcept { return ( bits_ & other.bits_ ) == 0; }

  bitvec complement() const { return bitvec( n_, ~bits_ & full_mask( n_ ) ); }

  /*! \brief 0-based positions in increasing order. */
  std::vector<uint32_t> positions() const
  {
    std::vector<uint32_t> out;
    for ( auto m = bits_; m != 0; m &= m - 1 )
    {
      out.push_back( static_cast<uint32_t>( std::countr_zero( m ) ) );
    }
    return out;
  }

  friend bitvec operator|( bitvec const& a, bitvec const& b ) { return bitvec( std::max( a.n_, b.n_ ), a.bits_ | b.bits_ ); }
  friend bitvec operator&( bitvec const& a, bitvec const& b ) { return bitvec( std::max( a.n_, b.n_ ), a.bits_ & b.bits_ ); }
  friend bitvec operator-( bitvec const& a, bitvec const& b ) { return bitvec( a.n_, a.bits_ & ~b.bits_ ); }

  friend bool operator==( bitvec const&, bitvec const& ) = default;
  friend auto operator<=>( bitvec const&, bitvec const& ) = default;

private:
  uint32_t n_{ 0 };
  mask_t bits_{ 0 };
};

/*! \brief Renders a mask as `{1,3,4}` (1-based). */
inline std::string format_set( mask_t bits )
{
  std::string out = "{";
  bool first = true;
  for ( auto m = bits; m != 0; m &= m - 1 )
  {
    if ( !first )
    {
      out += ',';
    }
    first = false;
    out += std::to_string( std::countr_zero( m ) + 1 );
  }
  out += '}';
  return out;
}

inline std::string format_set( bitvec const& v ) { return format_set( v.bits() ); }

/*! \brief Parses `{i,j,...}` with 1-based indices; whitespace tolerated. */
inline mask_t parse_set( std::string_view text, uint32_t n )
{
  auto trim = []( std::string_view s ) {
    while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
      s.remove_prefix( 1 );
    while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
      s.remove_suffix( 1 );
    return s;
  };
  text = trim( text );
  if ( text.size() < 2 || text.front() != '{' || text.back() != '}' )
  {
    throw parse_error( "expected a set like {1,2}, got '" + std::string( text ) + "'" );
  }
  text = trim( text.substr( 1, text.size() - 2 ) );
  mask_t bits = 0;
  while ( !text.empty() )
  {
    auto const comma = text.find( ',' );
    auto const item = trim( text.substr( 0, comma ) );
    if ( item.empty() )
    {
      throw parse_error( "empty element in set" );
    }
    uint64_t value = 0;
    for ( char c : item )
    {
      if ( c < '0' || c > '9' )
      {
        throw parse_error( "bad set element '" + std::string( item ) + "'" );
      }
      value = value * 10 + static_cast<uint64_t>( c - '0' );
      if ( value > max_vars )
      {
        break;
      }
    }
    if ( value == 0 || value > n )
    {
      throw parse_error( "set element " + std::string( item ) + " outside [1," + std::to_string( n ) + "]" );
    }
    if ( ( bits >> ( value - 1 ) ) & 1u )
    {
      throw parse_error( "repeated set element " + std::string( item ) );
    }
    bits |= mask_t{ 1 } << ( value - 1 );
    if ( comma == std::string_view::npos )
    {
      break;
    }
    text = text.substr( comma + 1 );
  }
  return bits;
}

} // namespace andlift
