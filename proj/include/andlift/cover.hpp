/*!
  \file cover.hpp
  \brief Set packing and covering over a set_system: fractional (LP), exact integral, and greedy

  fractional_pack and fractional_cover are the two sides of one LP duality;
  the integral versions are exact branch-and-bound searches bounded by them.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"
#include "lp.hpp"
#include "rational.hpp"
#include "set_system.hpp"

namespace andlift
{

/*! \brief Pairwise-disjoint members of a family. */
struct packing_witness
{
  std::vector<mask_t> blocks;

  std::size_t size() const noexcept { return blocks.size(); }
  friend bool operator==( packing_witness const&, packing_witness const& ) = default;
};

struct hitting_set
{
  mask_t elements{ 0 };

  std::size_t size() const noexcept { return popcount( elements ); }
  friend bool operator==( hitting_set const&, hitting_set const& ) = default;
};

struct greedy_step
{
  uint32_t index;        /* 0-based element chosen */
  std::size_t remaining; /* sets still unhit after the choice */
};

struct greedy_result
{
  hitting_set cover;
  std::vector<greedy_step> steps;
};

inline bool is_pairwise_disjoint( std::vector<mask_t> const& blocks )
{
  mask_t seen = 0;
  for ( auto b : blocks )
  {
    if ( ( seen & b ) != 0 )
      return false;
    seen |= b;
  }
  return true;
}

/*! \brief Every block is a member of s and the blocks are pairwise disjoint. */
inline bool verify_packing( set_system const& s, packing_witness const& w )
{
  for ( auto b : w.blocks )
  {
    if ( std::find( s.sets().begin(), s.sets().end(), b ) == s.sets().end() )
      return false;
  }
  return is_pairwise_disjoint( w.blocks );
}

inline bool hits_all( std::vector<mask_t> const& sets, mask_t h )
{
  return std::all_of( sets.begin(), sets.end(), [h]( mask_t s ) { return ( s & h ) != 0; } );
}

inline bool verify_hitting_set( set_system const& s, hitting_set const& h )
{
  return hits_all( s.sets(), h.elements );
}

/*!
  \brief min sum_i b_i s.t. sum_{i in S} b_i >= 1 for every set S, b >= 0.

  Primal is indexed by element (size n), dual by set. The upper bounds
  b_i <= 1 are omitted: an optimum never exceeds 1 on any coordinate.
*/
inline lp_result fractional_cover( set_system const& s )
{
  auto const n = s.ground_size();
  lp_problem lp;
  lp.sense = objective_sense::minimize;
  lp.objective.assign( n, rational( 1 ) );
  for ( auto set : s.sets() )
  {
    std::vector<rational> row( n );
    for ( uint32_t i = 0; i < n; ++i )
      if ( ( set >> i ) & 1u )
        row[i] = 1;
    lp.add_row( std::move( row ), row_relation::greater_equal, rational( 1 ) );
  }
  auto r = simplex_solve( lp );
  ensure( r.status == lp_status::optimal, "fractional_cover: LP must be feasible and bounded" );
  return r;
}

/*! \brief max sum_S a_S s.t. sum_{S ni i} a_S <= 1 for every element i, a >= 0. Primal by set, dual by element. */
inline lp_result fractional_pack( set_system const& s )
{
  auto const n = s.ground_size();
  auto const r = s.size();
  lp_problem lp;
  lp.sense = objective_sense::maximize;
  lp.objective.assign( r, rational( 1 ) );
  for ( uint32_t i = 0; i < n; ++i )
  {
    std::vector<rational> row( r );
    for ( std::size_t k = 0; k < r; ++k )
      if ( ( s[k] >> i ) & 1u )
        row[k] = 1;
    lp.add_row( std::move( row ), row_relation::less_equal, rational( 1 ) );
  }
  auto result = simplex_solve( lp );
  ensure( result.status == lp_status::optimal, "fractional_pack: LP must be feasible and bounded" );
  return result;
}

namespace detail
{

/* index of the element hitting the most sets; ties -> lowest index */
inline uint32_t max_degree_element( std::vector<mask_t> const& sets )
{
  uint32_t best = 0;
  std::size_t best_count = 0;
  mask_t support = 0;
  for ( auto s : sets )
    support |= s;
  for ( auto m = support; m != 0; m &= m - 1 )
  {
    auto const i = static_cast<uint32_t>( std::countr_zero( m ) );
    std::size_t count = 0;
    for ( auto s : sets )
      count += ( s >> i ) & 1u;
    if ( count > best_count )
    {
      best_count = count;
      best = i;
    }
  }
  return best;
}

/* greedy disjoint subfamily, smallest sets first: a lower bound for packing and for covering */
inline std::vector<mask_t> greedy_disjoint( std::vector<mask_t> sets )
{
  std::sort( sets.begin(), sets.end(), []( mask_t a, mask_t b ) {
    auto const pa = popcount( a ), pb = popcount( b );
    return pa != pb ? pa < pb : a < b;
  } );
  std::vector<mask_t> out;
  mask_t used = 0;
  for ( auto s : sets )
  {
    if ( ( s & used ) == 0 )
    {
      out.push_back( s );
      used |= s;
    }
  }
  return out;
}

inline rational lp_pack_value( std::vector<mask_t> const& sets, uint32_t n )
{
  return fractional_pack( set_system( n, sets ) ).value;
}

inline rational lp_cover_value( std::vector<mask_t> const& sets, uint32_t n )
{
  return fractional_cover( set_system( n, sets ) ).value;
}

inline integer floor_of( rational const& q )
{
  integer const num = numerator_of( q ), den = denominator_of( q );
  integer quot = num / den;
  if ( num < 0 && quot * den != num )
    quot -= 1;
  return quot;
}

inline integer ceil_of( rational const& q ) { return -floor_of( -q ); }

/* LP bounds are only worth solving once the cheap bounds stop pruning */
inline constexpr std::size_t lp_bound_min_sets = 4;

class packing_search
{
public:
  explicit packing_search( uint32_t n ) : n_( n ) {}

  std::vector<mask_t> run( std::vector<mask_t> const& sets )
  {
    best_ = greedy_disjoint( sets );
    std::vector<mask_t> chosen;
    search( sets, chosen );
    return best_;
  }

private:
  void search( std::vector<mask_t> const& cand, std::vector<mask_t>& chosen )
  {
    if ( chosen.size() > best_.size() )
      best_ = chosen;
    if ( cand.empty() )
      return;

    mask_t support = 0;
    uint32_t min_size = 64;
    for ( auto s : cand )
    {
      support |= s;
      min_size = std::min( min_size, popcount( s ) );
    }
    auto const cheap = std::min<std::size_t>( cand.size(), popcount( support ) / min_size );
    if ( chosen.size() + cheap <= best_.size() )
      return;
    if ( cand.size() >= lp_bound_min_sets )
    {
      auto const lp = floor_of( lp_pack_value( cand, n_ ) );
      if ( integer( chosen.size() ) + lp <= integer( best_.size() ) )
        return;
    }

    auto const e = max_degree_element( cand );
    std::vector<mask_t> without;
    for ( auto s : cand )
    {
      if ( !( ( s >> e ) & 1u ) )
        without.push_back( s );
    }
    for ( auto s : cand )
    {
      if ( !( ( s >> e ) & 1u ) )
        continue;
      std::vector<mask_t> next;
      for ( auto t : without )
        if ( ( t & s ) == 0 )
          next.push_back( t );
      chosen.push_back( s );
      search( next, chosen );
      chosen.pop_back();
    }
    search( without, chosen );
  }

  uint32_t n_;
  std::vector<mask_t> best_;
};

class covering_search
{
public:
  explicit covering_search( uint32_t n ) : n_( n ) {}

  mask_t run( std::vector<mask_t> const& sets, mask_t initial )
  {
    best_ = initial;
    search( sets, 0 );
    return best_;
  }

private:
  /* sets: still unhit, restricted to elements not yet excluded */
  void search( std::vector<mask_t> const& sets, mask_t chosen )
  {
    if ( sets.empty() )
    {
      if ( popcount( chosen ) < popcount( best_ ) )
        best_ = chosen;
      return;
    }
    for ( auto s : sets )
      if ( s == 0 )
        return;
    auto const count = popcount( chosen );
    if ( count + greedy_disjoint( sets ).size() >= popcount( best_ ) )
      return;
    if ( sets.size() >= lp_bound_min_sets )
    {
      auto const lp = ceil_of( lp_cover_value( sets, n_ ) );
      if ( integer( count ) + lp >= integer( popcount( best_ ) ) )
        return;
    }

    auto const e = max_degree_element( sets );
    auto const bit = mask_t{ 1 } << e;
    std::vector<mask_t> unhit, removed;
    for ( auto s : sets )
    {
      if ( !( s & bit ) )
        unhit.push_back( s );
      removed.push_back( s & ~bit );
    }
    search( unhit, chosen | bit );
    search( minimal_sets( removed ), chosen );
  }

  /* supersets are hit whenever their subsets are */
  static std::vector<mask_t> minimal_sets( std::vector<mask_t> sets )
  {
    std::sort( sets.begin(), sets.end() );
    sets.erase( std::unique( sets.begin(), sets.end() ), sets.end() );
    std::vector<mask_t> out;
    for ( auto s : sets )
    {
      bool dominated = false;
      for ( auto t : sets )
      {
        if ( t != s && is_subset( t, s ) )
        {
          dominated = true;
          break;
        }
      }
      if ( !dominated )
        out.push_back( s );
    }
    return out;
  }

  uint32_t n_;
  mask_t best_{ 0 };
};

} // namespace detail

/*! \brief Greedy hitting set: repeatedly take the element hitting most unhit sets (ties -> lowest index). */
inline greedy_result greedy_cover( set_system const& s )
{
  greedy_result result;
  std::vector<mask_t> remaining = s.sets();
  while ( !remaining.empty() )
  {
    auto const e = detail::max_degree_element( remaining );
    auto const bit = mask_t{ 1 } << e;
    std::erase_if( remaining, [bit]( mask_t set ) { return ( set & bit ) != 0; } );
    result.cover.elements |= bit;
    result.steps.push_back( { e, remaining.size() } );
  }
  ensure( verify_hitting_set( s, result.cover ), "greedy_cover produced a non-hitting set" );
  return result;
}

/*! \brief Maximum pairwise-disjoint subfamily (exact). */
inline packing_witness integral_pack( set_system const& s )
{
  packing_witness w{ detail::packing_search( s.ground_size() ).run( s.sets() ) };
  std::sort( w.blocks.begin(), w.blocks.end() );
  ensure( verify_packing( s, w ), "integral_pack produced an invalid packing" );
  return w;
}

/*! \brief Minimum hitting set (exact). */
inline hitting_set integral_cover( set_system const& s )
{
  auto const initial = greedy_cover( s ).cover.elements;
  hitting_set h{ detail::covering_search( s.ground_size() ).run( s.sets(), initial ) };
  ensure( verify_hitting_set( s, h ), "integral_cover produced a non-hitting set" );
  return h;
}

/*! \brief Reference packing by enumerating all subfamilies (r <= enumeration guard). */
inline packing_witness exhaustive_pack( set_system const& s )
{
  auto const r = s.size();
  require_capacity( static_cast<uint32_t>( r ), limits::enumeration, "exhaustive_pack" );
  packing_witness best;
  for ( uint64_t pick = 0; pick < ( uint64_t{ 1 } << r ); ++pick )
  {
    if ( popcount( pick ) <= best.size() )
      continue;
    std::vector<mask_t> blocks;
    for ( std::size_t k = 0; k < r; ++k )
      if ( ( pick >> k ) & 1u )
        blocks.push_back( s[k] );
    if ( is_pairwise_disjoint( blocks ) )
      best.blocks = std::move( blocks );
  }
  return best;
}

/*! \brief Reference hitting set by enumerating all subsets of [n] (n <= enumeration guard). */
inline hitting_set exhaustive_cover( set_system const& s )
{
  auto const n = s.ground_size();
  require_capacity( n, limits::enumeration, "exhaustive_cover" );
  std::optional<mask_t> best;
  for ( mask_t h = 0; h < ( mask_t{ 1 } << n ); ++h )
  {
    if ( best && popcount( h ) >= popcount( *best ) )
      continue;
    if ( hits_all( s.sets(), h ) )
      best = h;
  }
  return hitting_set{ best.value_or( 0 ) };
}

/*!
  \brief floor(k * ln r) + 1, the greedy hitting-set size bound (r >= 1).

  k ln r is irrational for r >= 2, so 100 decimal digits decide the floor.
*/
inline std::size_t greedy_size_bound( rational const& k, std::size_t r )
{
  if ( r == 0 )
    return 0;
  using big_float = boost::multiprecision::cpp_bin_float_100;
  big_float const kf = big_float( numerator_of( k ).str() ) / big_float( denominator_of( k ).str() );
  big_float const v = kf * boost::multiprecision::log( big_float( r ) );
  return static_cast<std::size_t>( boost::multiprecision::floor( v ).convert_to<long long>() ) + 1;
}

/*! \brief ceil(2 * k * ln r) + 1, the zero-depth bound of the greedy zero-decision-tree builder (r >= 1). */
inline std::size_t zero_depth_bound( rational const& k, std::size_t r )
{
  if ( r == 0 )
    return 0;
  using big_float = boost::multiprecision::cpp_bin_float_100;
  big_float const kf = big_float( numerator_of( k ).str() ) / big_float( denominator_of( k ).str() );
  big_float const v = 2 * kf * boost::multiprecision::log( big_float( r ) );
  return static_cast<std::size_t>( boost::multiprecision::ceil( v ).convert_to<long long>() ) + 1;
}

} // namespace andlift
