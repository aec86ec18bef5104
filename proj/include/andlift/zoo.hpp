/*!
  \file zoo.hpp
  \brief Named example families, finite-range collapse, set-system dichotomy
*/

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bitvec.hpp"
#include "cover.hpp"
#include "errors.hpp"
#include "measures.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "set_system.hpp"

namespace andlift
{

enum class family_kind
{
  projective_plane,
  majority,
  and_or,
  redundant_indexing,
  threshold,
  first_zero_gap,
  or_n,
  and_n
};

/*! \brief A family tag with its single parameter (m, n, clause count or k). */
struct family_spec
{
  family_kind kind;
  uint32_t param;
};

inline constexpr std::array<std::pair<std::string_view, family_kind>, 8> family_names{ {
    { "projective_plane", family_kind::projective_plane },
    { "majority", family_kind::majority },
    { "and_or", family_kind::and_or },
    { "redundant_indexing", family_kind::redundant_indexing },
    { "threshold", family_kind::threshold },
    { "first_zero_gap", family_kind::first_zero_gap },
    { "or", family_kind::or_n },
    { "and", family_kind::and_n },
} };

inline std::string_view family_name( family_kind k )
{
  for ( auto const& [name, kind] : family_names )
    if ( kind == k )
      return name;
  return "?";
}

inline family_kind parse_family_kind( std::string_view name )
{
  for ( auto const& [text, kind] : family_names )
    if ( text == name )
      return kind;
  throw std::invalid_argument( "unknown family '" + std::string( name ) + "'" );
}

inline bool is_prime( uint32_t m )
{
  if ( m < 2 )
    return false;
  for ( uint32_t d = 2; d * d <= m; ++d )
    if ( m % d == 0 )
      return false;
  return true;
}

/*! \brief Variable count of the generated function; validates the parameter. */
inline uint32_t family_num_vars( family_spec const& s )
{
  auto const p = s.param;
  switch ( s.kind )
  {
  case family_kind::projective_plane:
    if ( !is_prime( p ) )
      throw std::invalid_argument( "projective_plane: m must be prime" );
    return p * p + p + 1;
  case family_kind::majority:
  case family_kind::or_n:
  case family_kind::and_n:
    if ( p < 1 )
      throw std::invalid_argument( "family needs n >= 1" );
    return p;
  case family_kind::threshold:
  case family_kind::first_zero_gap:
    if ( p < 2 )
      throw std::invalid_argument( "family needs n >= 2" );
    return p;
  case family_kind::and_or:
    if ( p < 1 || p > max_vars / 2 )
      throw std::invalid_argument( "and_or: clause count out of range" );
    return 2 * p;
  case family_kind::redundant_indexing:
    if ( p < 1 || p > 5 )
      throw std::invalid_argument( "redundant_indexing: 1 <= k <= 5" );
    return ( 1u << p ) + p;
  }
  throw std::invalid_argument( "unknown family" );
}

/* ---------------------------------------------------------------- plane */

/*!
  \brief Lines of the projective plane over F_m (m prime) as subsets of its m^2+m+1 points.

  Points are the nonzero vectors of F_m^3 whose first nonzero coordinate is 1,
  numbered in lexicographic order; line u is {p : u.p = 0}.
*/
inline set_system projective_plane_lines( uint32_t m )
{
  if ( !is_prime( m ) )
    throw std::invalid_argument( "projective_plane: m must be prime" );
  std::vector<std::array<uint32_t, 3>> points;
  for ( uint32_t a = 0; a < m; ++a )
    for ( uint32_t b = 0; b < m; ++b )
      for ( uint32_t c = 0; c < m; ++c )
      {
        std::array<uint32_t, 3> v{ a, b, c };
        auto const lead = std::find_if( v.begin(), v.end(), []( uint32_t x ) { return x != 0; } );
        if ( lead != v.end() && *lead == 1 )
          points.push_back( v );
      }
  auto const n = static_cast<uint32_t>( points.size() );
  if ( n > max_vars )
    throw capacity_error( "projective_plane: too many points" );
  std::vector<mask_t> lines;
  for ( auto const& u : points )
  {
    mask_t line = 0;
    for ( uint32_t i = 0; i < n; ++i )
    {
      auto const& p = points[i];
      if ( ( u[0] * p[0] + u[1] * p[1] + u[2] * p[2] ) % m == 0 )
        line |= mask_t{ 1 } << i;
    }
    lines.push_back( line );
  }
  return set_system( n, std::move( lines ) );
}

/* --------------------------------------------------------- closed forms */

/*! \brief prod_j (x_j + y_j - x_j y_j), with x_j = variable j and y_j = variable n_clauses + j. */
inline multilinear_poly and_or_closed_form( uint32_t clauses )
{
  auto const n = 2 * clauses;
  auto f = constant_poly( n, rational( 1 ) );
  for ( uint32_t j = 0; j < clauses; ++j )
  {
    multilinear_poly clause( n );
    auto const x = mask_t{ 1 } << j, y = mask_t{ 1 } << ( clauses + j );
    clause.add_term( x, 1 );
    clause.add_term( y, 1 );
    clause.add_term( x | y, -1 );
    f = f * clause;
  }
  return f;
}

/*!
  \brief Expanded redundant-indexing polynomial: sum_i X_i Y_{-i} - (sum_i X_i) Y, 2k monomials.

  x_S sits at index S (S a subset of [k] as a k-bit mask), y_i at 2^k + i;
  X_i multiplies every x_S with i in S, Y_{-i} every y_j with j != i.
*/
inline multilinear_poly redundant_indexing_closed_form( uint32_t k )
{
  auto const n = family_num_vars( { family_kind::redundant_indexing, k } );
  mask_t all_y = 0;
  for ( uint32_t i = 0; i < k; ++i )
    all_y |= mask_t{ 1 } << ( ( 1u << k ) + i );
  multilinear_poly f( n );
  for ( uint32_t i = 0; i < k; ++i )
  {
    mask_t x_i = 0;
    for ( uint32_t s = 0; s < ( 1u << k ); ++s )
      if ( ( s >> i ) & 1u )
        x_i |= mask_t{ 1 } << s;
    auto const y_i = mask_t{ 1 } << ( ( 1u << k ) + i );
    f.add_term( x_i | ( all_y & ~y_i ), 1 );
    f.add_term( x_i | all_y, -1 );
  }
  return f;
}

/*! \brief Pointwise definition of each family, used to tabulate and invert. */
inline bool family_value( family_spec const& s, mask_t z, set_system const* lines = nullptr )
{
  auto const n = family_num_vars( s );
  auto const weight = popcount( z );
  switch ( s.kind )
  {
  case family_kind::projective_plane:
    return std::any_of( lines->sets().begin(), lines->sets().end(), [z]( mask_t l ) { return is_subset( l, z ); } );
  case family_kind::majority:
    return 2 * weight >= n;
  case family_kind::and_or:
  {
    auto const c = s.param;
    auto const xs = z & full_mask( c ), ys = ( z >> c ) & full_mask( c );
    return ( xs | ys ) == full_mask( c );
  }
  case family_kind::redundant_indexing:
  {
    auto const k = s.param;
    auto const ys = ( z >> ( 1u << k ) ) & full_mask( k );
    if ( popcount( ys ) != k - 1 )
      return false;
    auto const i = static_cast<uint32_t>( std::countr_zero( ~ys ) );
    for ( uint32_t set = 0; set < ( 1u << k ); ++set )
      if ( ( ( set >> i ) & 1u ) && !( ( z >> set ) & 1u ) )
        return false;
    return true;
  }
  case family_kind::threshold:
    return weight + 1 >= n;
  case family_kind::first_zero_gap:
  {
    auto const ones = full_mask( n );
    if ( z == ones || z == ( ones & ~( mask_t{ 1 } << ( n - 1 ) ) ) )
      return true;
    auto const ind = static_cast<uint32_t>( std::countr_zero( ~z ) ); /* 0-based first zero, < n - 1 here */
    return ( z >> ( ind + 1 ) ) & 1u;
  }
  case family_kind::or_n:
    return z != 0;
  case family_kind::and_n:
    return z == full_mask( n );
  }
  return false;
}

/*!
  \brief The family's multilinear polynomial.

  Built by Möbius inversion of the tabulated definition; and_or and
  redundant_indexing are also expanded in closed form and must agree.
*/
inline multilinear_poly generate( family_spec const& s )
{
  auto const n = family_num_vars( s );
  std::optional<set_system> lines;
  if ( s.kind == family_kind::projective_plane )
    lines = projective_plane_lines( s.param );
  auto const table = truth_table::tabulate( n, [&]( mask_t z ) { return family_value( s, z, lines ? &*lines : nullptr ) ? 1 : 0; } );
  auto f = mobius_invert( table );
  if ( s.kind == family_kind::and_or )
    ensure( f == and_or_closed_form( s.param ), "and_or closed form disagrees with the Möbius expansion" );
  if ( s.kind == family_kind::redundant_indexing )
    ensure( f == redundant_indexing_closed_form( s.param ), "redundant_indexing closed form disagrees with the Möbius expansion" );
  return f;
}

/* --------------------------------------------------------- range collapse */

/*! \brief The distinct values of f on {0,1}^n, ascending (n <= enumeration guard). */
inline std::vector<rational> function_range( multilinear_poly const& f )
{
  require_capacity( f.num_vars(), limits::enumeration, "function_range" );
  auto values = to_truth_table( f ).values();
  std::sort( values.begin(), values.end() );
  values.erase( std::unique( values.begin(), values.end() ), values.end() );
  return values;
}

struct range_collapse_result
{
  multilinear_poly g;
  std::size_t range_size{ 0 };       /* s */
  std::size_t union_bound{ 0 };      /* sum_{j < s} C(|mon f|, j), always valid */
  bool within_power_bound{ false };  /* spar(g) <= spar(f)^(s-1) */
};

/*!
  \brief g = p(f) with p the Lagrange polynomial that is 1 at a and 0 elsewhere on the range.

  Monomials of g are unions of at most s-1 monomials of f, which gives
  union_bound. The power bound spar(f)^(s-1) can fail when f has no constant
  term (f = x1 - x1 x2, a = 0 gives 1 - x1 + x1 x2), so it is reported only.
*/
inline range_collapse_result range_collapse( multilinear_poly const& f, rational const& a )
{
  auto const range = function_range( f );
  if ( !std::binary_search( range.begin(), range.end(), a ) )
    throw std::invalid_argument( "range_collapse: value " + to_display_string( a ) + " is not attained" );
  auto const n = f.num_vars();
  auto g = constant_poly( n, rational( 1 ) );
  for ( auto const& b : range )
  {
    if ( b == a )
      continue;
    auto const shifted = f + constant_poly( n, -b );
    g = rational( 1 / ( a - b ) ) * ( g * shifted );
  }
  auto const gt = to_truth_table( g );
  auto const ft = to_truth_table( f );
  for ( std::size_t j = 0; j < gt.size(); ++j )
    ensure( gt.values()[j] == ( ft.values()[j] == a ? 1 : 0 ), "range_collapse: interpolation is not the indicator" );

  range_collapse_result r{ std::move( g ), range.size(), 0, false };
  integer binom = 1;
  integer total = 0;
  auto const mon = f.mon_count();
  for ( std::size_t j = 0; j < range.size() && j <= mon; ++j )
  {
    total += binom;
    binom = binom * ( mon - j ) / ( j + 1 );
  }
  r.union_bound = total.convert_to<std::size_t>();
  integer power = 1;
  for ( std::size_t j = 0; j + 1 < range.size(); ++j )
    power *= f.sparsity();
  r.within_power_bound = integer( r.g.sparsity() ) <= power;
  ensure( r.g.sparsity() <= r.union_bound, "range_collapse: sparsity exceeds the union bound" );
  return r;
}

/* --------------------------------------------------------------- dichotomy */

/*! \brief One of the two outcomes for a set system and a target m. */
struct dichotomy_result
{
  std::size_t mbs{ 0 };                /* max_z MBS of sum_i prod_{j in S_i} x_j */
  std::optional<greedy_result> hitting; /* when mbs < m */
  std::size_t hitting_bound{ 0 };      /* floor(FHSC ln r) + 1 */
  rational fhsc{ 0 };
  mask_t t{ 0 };                       /* when mbs >= m */
  std::vector<std::size_t> chosen;     /* indices i of sets whose S_i \ T are pairwise disjoint */

  bool disjoint_branch() const noexcept { return !hitting.has_value(); }
};

/*! \brief f = sum_i prod_{j in S_i} x_j; all coefficients 1. */
inline multilinear_poly set_system_poly( set_system const& s )
{
  multilinear_poly f( s.ground_size() );
  for ( auto set : s.sets() )
    f.add_term( set, 1 );
  return f;
}

inline bool verify_dichotomy( set_system const& s, std::size_t m, dichotomy_result const& r )
{
  if ( r.hitting )
    return r.mbs < m && verify_hitting_set( s, r.hitting->cover ) && r.hitting->cover.size() <= r.hitting_bound;
  if ( r.chosen.size() < m )
    return false;
  mask_t used = 0;
  for ( auto i : r.chosen )
  {
    if ( i >= s.size() )
      return false;
    auto const rest = s[i] & ~r.t;
    if ( rest == 0 || ( rest & used ) != 0 )
      return false;
    used |= rest;
  }
  return true;
}

/*!
  \brief Either a greedy hitting set, or T with m sets pairwise disjoint outside T.

  Scans every z, taking the maximum packing of the minimal sets S_i \ z
  (lowest z wins ties). Positive coefficients never cancel under restriction,
  so these are exactly the minimal monomials of f_z.
*/
inline dichotomy_result dichotomy( set_system const& s, std::size_t m )
{
  auto const n = s.ground_size();
  require_capacity( n, limits::enumeration, "dichotomy" );
  if ( m == 0 )
    throw std::invalid_argument( "dichotomy: m >= 1" );
  dichotomy_result r;
  std::optional<packing_witness> best;
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    std::vector<mask_t> rest;
    for ( auto set : s.sets() )
      if ( auto const d = set & ~z; d != 0 )
        rest.push_back( d );
    rest = minimal_elements( std::move( rest ) );
    if ( rest.size() <= r.mbs )
      continue;
    auto w = integral_pack( set_system( n, std::move( rest ) ) );
    if ( !best || w.size() > r.mbs )
    {
      r.mbs = w.size();
      r.t = z;
      best = std::move( w );
    }
  }

  if ( r.mbs >= m )
  {
    for ( std::size_t b = 0; b < m; ++b )
    {
      auto const block = best->blocks[b];
      for ( std::size_t i = 0; i < s.size(); ++i )
        if ( ( s[i] & ~r.t ) == block )
        {
          r.chosen.push_back( i );
          break;
        }
    }
  }
  else
  {
    r.t = 0;
    r.fhsc = fractional_cover( s ).value;
    r.hitting_bound = greedy_size_bound( r.fhsc, s.size() );
    r.hitting = greedy_cover( s );
  }
  ensure( verify_dichotomy( s, m, r ), "dichotomy: returned branch does not verify" );
  return r;
}

} // namespace andlift
