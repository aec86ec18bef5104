/*!
  \file measures.hpp
  \brief Monotone block sensitivity, hitting set complexity and their fractional versions

  At a point z the flipping inputs W(f,z) = { w disjoint from z : f(z) != f(z | w) }
  have the same minimal elements as mon[f_z], so every measure is computed
  on the minimal monomials of restrict_ones(f, z) without scanning inputs:

      MBS(f,z)  = integral packing      FMBS(f,z) = fractional packing
      HSC(f,z)  = integral covering     FHSC(f,z) = fractional covering
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "cover.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "set_system.hpp"

namespace andlift
{

/*! \brief Minimal flipping blocks at a base point. */
struct sensitive_family
{
  bitvec base;
  set_system blocks;
};

/*!
  \brief Minimal elements of W(f,z), read off the monomials of f_z.

  Each block is re-checked by evaluation: f(z | w) != f(z).
*/
inline sensitive_family sensitive_family_at( multilinear_poly const& f, mask_t z )
{
  auto const n = f.num_vars();
  auto const restricted = restrict_ones( f, z );
  auto blocks = minimal_monomials( restricted );
  auto const fz = evaluate( f, z );
  for ( auto w : blocks )
  {
    ensure( ( w & z ) == 0, "sensitive block meets the base point" );
    ensure( evaluate( f, z | w ) != fz, "minimal monomial of f_z does not flip f" );
  }
  return { bitvec( n, z ), set_system( n, std::move( blocks ) ) };
}

/*! \brief A probability distribution over blocks with its smoothness max_i Pr[w_i = 1]. */
class smooth_distribution
{
public:
  smooth_distribution() = default;

  smooth_distribution( uint32_t n, std::vector<std::pair<mask_t, rational>> support ) : n_( n ), support_( std::move( support ) )
  {
    rational total = 0;
    std::vector<rational> marginal( n );
    for ( auto const& [w, pr] : support_ )
    {
      if ( pr <= 0 )
        throw std::invalid_argument( "smooth_distribution: probabilities must be positive" );
      if ( ( w & ~full_mask( n ) ) != 0 )
        throw std::invalid_argument( "smooth_distribution: block outside [n]" );
      total += pr;
      for ( auto m = w; m != 0; m &= m - 1 )
        marginal[std::countr_zero( m )] += pr;
    }
    if ( total != 1 )
      throw std::invalid_argument( "smooth_distribution: probabilities must sum to 1" );
    smoothness_ = 0;
    for ( auto const& q : marginal )
      smoothness_ = std::max( smoothness_, q );
  }

  uint32_t num_vars() const noexcept { return n_; }
  std::vector<std::pair<mask_t, rational>> const& support() const noexcept { return support_; }
  rational const& smoothness() const noexcept { return smoothness_; }

private:
  uint32_t n_{ 0 };
  std::vector<std::pair<mask_t, rational>> support_;
  rational smoothness_{ 0 };
};

/*! \brief Optimal packing/covering data of one family of blocks. */
struct family_measures
{
  packing_witness packing;                           /* MBS witness */
  rational fractional{ 0 };                          /* FMBS = FHSC */
  std::vector<std::pair<mask_t, rational>> lp_pack;  /* nonzero a_w of the packing LP */
  std::vector<rational> cover_weights;               /* b_i of the covering LP, size n */
  hitting_set hitting;                               /* HSC witness */

  std::size_t mbs() const noexcept { return packing.size(); }
  std::size_t hsc() const noexcept { return hitting.size(); }

  /*! \brief The LP packing normalized to a (1/FMBS)-smooth distribution; empty family -> empty. */
  smooth_distribution distribution( uint32_t n ) const
  {
    if ( lp_pack.empty() )
      return {};
    std::vector<std::pair<mask_t, rational>> support;
    for ( auto const& [w, a] : lp_pack )
      support.emplace_back( w, a / fractional );
    return smooth_distribution( n, std::move( support ) );
  }
};

/*!
  \brief Runs the four optimizations on one family and checks
  MBS <= FMBS = FHSC <= HSC exactly.
*/
inline family_measures compute_family_measures( set_system const& family )
{
  family_measures out;
  out.cover_weights.assign( family.ground_size(), rational( 0 ) );
  if ( family.empty() )
    return out;

  auto const pack = fractional_pack( family );
  auto const cover = fractional_cover( family );
  ensure( pack.value == cover.value, "strong duality failed: fractional pack != fractional cover" );
  out.fractional = pack.value;
  for ( std::size_t k = 0; k < family.size(); ++k )
    if ( pack.primal[k] != 0 )
      out.lp_pack.emplace_back( family[k], pack.primal[k] );
  out.cover_weights = cover.primal;
  out.packing = integral_pack( family );
  out.hitting = integral_cover( family );

  ensure( rational( out.mbs() ) <= out.fractional, "chain violated: MBS > FMBS" );
  ensure( out.fractional <= rational( out.hsc() ), "chain violated: FHSC > HSC" );
  return out;
}

/*!
  \brief Memo of family_measures keyed by (n, sorted family).

  Not thread-safe; give each worker its own cache.
*/
class measure_cache
{
public:
  std::shared_ptr<family_measures const> get( set_system const& family )
  {
    key_type key;
    key.reserve( family.size() + 1 );
    key.push_back( family.ground_size() );
    key.insert( key.end(), family.sets().begin(), family.sets().end() );
    std::sort( key.begin() + 1, key.end() );
    if ( auto const it = map_.find( key ); it != map_.end() )
    {
      ++hits_;
      return it->second;
    }
    auto value = std::make_shared<family_measures const>( compute_family_measures( family ) );
    map_.emplace( std::move( key ), value );
    return value;
  }

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t hits() const noexcept { return hits_; }

private:
  using key_type = std::vector<mask_t>;
  struct key_hash
  {
    std::size_t operator()( key_type const& k ) const noexcept
    {
      std::size_t h = 0xcbf29ce484222325ull;
      for ( auto v : k )
        h = ( h ^ std::hash<mask_t>{}( v ) ) * 0x100000001b3ull;
      return h;
    }
  };
  std::unordered_map<key_type, std::shared_ptr<family_measures const>, key_hash> map_;
  std::size_t hits_{ 0 };
};

namespace detail
{

inline std::shared_ptr<family_measures const> measures_of( set_system const& family, measure_cache* cache )
{
  if ( cache != nullptr )
    return cache->get( family );
  return std::make_shared<family_measures const>( compute_family_measures( family ) );
}

} // namespace detail

/*!
  \brief Local or global measure values with witnesses.

  For a global report `point` is empty and `argmax` records, per measure,
  the lowest-index point attaining the maximum; witnesses belong to those points.
*/
struct measure_report
{
  uint32_t n{ 0 };
  std::optional<mask_t> point;

  std::size_t mbs{ 0 };
  rational fmbs{ 0 };
  rational fhsc{ 0 };
  std::size_t hsc{ 0 };

  packing_witness packing;
  std::vector<std::pair<mask_t, rational>> distribution; /* (1/FMBS)-smooth, over W(f,z) */
  std::vector<rational> cover_weights;                   /* fractional hitting set */
  hitting_set hitting;

  struct argmax_points
  {
    mask_t mbs{ 0 }, fmbs{ 0 }, fhsc{ 0 }, hsc{ 0 };
    friend bool operator==( argmax_points const&, argmax_points const& ) = default;
  } argmax;

  friend bool operator==( measure_report const&, measure_report const& ) = default;
};

inline void check_report_chain( measure_report const& r )
{
  ensure( rational( r.mbs ) <= r.fmbs && r.fmbs == r.fhsc && r.fhsc <= rational( r.hsc ),
          "measure report violates MBS <= FMBS = FHSC <= HSC" );
}

inline measure_report local_measures( multilinear_poly const& f, mask_t z, measure_cache* cache = nullptr )
{
  auto const family = sensitive_family_at( f, z );
  auto const m = detail::measures_of( family.blocks, cache );
  measure_report r;
  r.n = f.num_vars();
  r.point = z;
  r.mbs = m->mbs();
  r.fmbs = m->fractional;
  r.fhsc = m->fractional;
  r.hsc = m->hsc();
  r.packing = m->packing;
  r.distribution = m->distribution( r.n ).support();
  r.cover_weights = m->cover_weights;
  r.hitting = m->hitting;
  r.argmax = { z, z, z, z };
  check_report_chain( r );
  return r;
}

/*!
  \brief Maxima of the four measures over all z (n <= enumeration guard).

  Points where f_z is constant contribute zero and are skipped.
*/
inline measure_report global_measures( multilinear_poly const& f, measure_cache* cache = nullptr )
{
  auto const n = f.num_vars();
  require_capacity( n, limits::enumeration, "global_measures" );
  measure_report r;
  r.n = n;
  r.cover_weights.assign( n, rational( 0 ) );
  std::shared_ptr<family_measures const> at_mbs, at_fmbs, at_hsc;
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    if ( restrict_ones( f, z ).is_constant() )
      continue;
    auto const m = detail::measures_of( sensitive_family_at( f, z ).blocks, cache );
    if ( !at_mbs || m->mbs() > r.mbs )
    {
      r.mbs = m->mbs();
      r.argmax.mbs = z;
      at_mbs = m;
    }
    if ( !at_fmbs || m->fractional > r.fmbs )
    {
      r.fmbs = r.fhsc = m->fractional;
      r.argmax.fmbs = r.argmax.fhsc = z;
      at_fmbs = m;
    }
    if ( !at_hsc || m->hsc() > r.hsc )
    {
      r.hsc = m->hsc();
      r.argmax.hsc = z;
      at_hsc = m;
    }
  }
  if ( at_mbs )
  {
    r.packing = at_mbs->packing;
    r.distribution = at_fmbs->distribution( n ).support();
    r.cover_weights = at_fmbs->cover_weights;
    r.hitting = at_hsc->hitting;
  }
  check_report_chain( r );
  return r;
}

/*! \brief max_z FHSC(f,z) only; cheaper than global_measures when the integral values are not needed. */
inline rational global_fractional( multilinear_poly const& f, measure_cache* cache = nullptr )
{
  auto const n = f.num_vars();
  require_capacity( n, limits::enumeration, "global_fractional" );
  rational best = 0;
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    auto const restricted = restrict_ones( f, z );
    if ( restricted.is_constant() )
      continue;
    set_system const family( n, minimal_monomials( restricted ) );
    rational const value = cache != nullptr ? cache->get( family )->fractional : fractional_cover( family ).value;
    best = std::max( best, value );
  }
  return best;
}

/*! \brief S(f): the most coordinates whose single flip changes f at one input. */
inline uint32_t sensitivity( truth_table const& t )
{
  auto const values = t.bits();
  auto const n = t.num_vars();
  uint32_t best = 0;
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    uint32_t s = 0;
    for ( uint32_t i = 0; i < n; ++i )
      s += values[z] != values[z ^ ( mask_t{ 1 } << i )];
    best = std::max( best, s );
  }
  return best;
}

inline uint32_t degree( multilinear_poly const& p ) { return p.degree(); }

/*! \brief bs(f): most disjoint sensitive blocks (arbitrary flips) at one input. n <= 12 by default. */
inline uint32_t block_sensitivity( truth_table const& t )
{
  auto const values = t.bits();
  auto const n = t.num_vars();
  require_capacity( n, 12, "block_sensitivity" );
  uint32_t best = 0;
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    std::vector<mask_t> blocks;
    for ( mask_t b = 1; b < ( mask_t{ 1 } << n ); ++b )
      if ( values[z] != values[z ^ b] )
        blocks.push_back( b );
    blocks = minimal_elements( std::move( blocks ) );
    if ( blocks.size() <= best )
      continue;
    best = std::max<uint32_t>( best, static_cast<uint32_t>( integral_pack( set_system( n, blocks ) ).size() ) );
  }
  return best;
}

/*! \brief A base point with pairwise-disjoint blocks, each flipping f there. */
struct block_witness
{
  mask_t point{ 0 };
  std::vector<mask_t> blocks;

  std::size_t size() const noexcept { return blocks.size(); }
  friend bool operator==( block_witness const&, block_witness const& ) = default;
};

inline bool verify_block_witness( multilinear_poly const& f, block_witness const& w )
{
  mask_t used = w.point;
  auto const fz = evaluate( f, w.point );
  for ( auto b : w.blocks )
  {
    if ( b == 0 || ( b & used ) != 0 )
      return false;
    used |= b;
    if ( evaluate( f, w.point | b ) == fz )
      return false;
  }
  return true;
}

/*!
  \brief g(x) = f(z + sum_i x_i w_i) over k = |blocks| variables.

  Variables inside block i become x_i, variables in z become 1, all others 0.
*/
inline multilinear_poly block_collapse( multilinear_poly const& f, mask_t z, std::vector<mask_t> const& blocks )
{
  mask_t used = z;
  for ( auto b : blocks )
  {
    if ( ( b & used ) != 0 )
      throw std::invalid_argument( "block_collapse: base point and blocks must be pairwise disjoint" );
    used |= b;
  }
  auto const k = static_cast<uint32_t>( blocks.size() );
  multilinear_poly g( k );
  for ( auto const& [support, coeff] : f.terms() )
  {
    if ( !is_subset( support, used ) )
      continue;
    mask_t image = 0;
    for ( uint32_t i = 0; i < k; ++i )
      if ( ( support & blocks[i] ) != 0 )
        image |= mask_t{ 1 } << i;
    g.add_term( image, coeff );
  }
  return g;
}

/*! \brief Pr_{w ~ D}[f(z) != f(z | w)], exactly. */
inline rational smooth_flip_probability( multilinear_poly const& f, mask_t z, smooth_distribution const& d )
{
  auto const fz = evaluate( f, z );
  rational total = 0;
  for ( auto const& [w, pr] : d.support() )
  {
    if ( ( w & z ) != 0 )
      throw std::invalid_argument( "smooth_flip_probability: distribution must live on [n] \\ z" );
    if ( evaluate( f, z | w ) != fz )
      total += pr;
  }
  return total;
}

/*! \brief Sample size ceil(1 / (2 sqrt(p))): least k >= 1 with 4 p k^2 >= 1. */
inline uint32_t disjointify_sample_size( rational const& p )
{
  if ( p <= 0 )
    throw std::invalid_argument( "disjointify: smoothness must be positive" );
  uint32_t k = 1;
  while ( 4 * p * k * k < 1 )
    ++k;
  return k;
}

struct disjointify_outcome
{
  std::optional<block_witness> witness; /* empty when every attempt failed */
  uint32_t attempts{ 0 };
  uint32_t sample_size{ 0 };
};

/*!
  \brief Turns a smooth distribution over flipping blocks into disjoint flipping blocks.

  Each attempt samples k = ceil(1/(2 sqrt p)) blocks w_1..w_k i.i.d. from d,
  sets u = OR_{i != j} (w_i & w_j), and rejects unless f(z) = f(z | u) and at
  least ceil(2k/3) indices t satisfy f(z | w_t) = f(z | w_t | u). The returned
  witness is z' = z | u with blocks w_t \ u for those t, verified before return.
*/
inline disjointify_outcome disjointify( multilinear_poly const& f, mask_t z, smooth_distribution const& d, uint64_t seed,
                                        uint32_t max_attempts )
{
  if ( d.support().empty() )
    throw std::invalid_argument( "disjointify: empty distribution" );
  auto const fz = evaluate( f, z );
  std::vector<double> weights;
  for ( auto const& [w, pr] : d.support() )
  {
    if ( ( w & z ) != 0 || evaluate( f, z | w ) == fz )
      throw std::invalid_argument( "disjointify: distribution must be supported on flipping blocks" );
    weights.push_back( pr.convert_to<double>() );
  }

  disjointify_outcome out;
  out.sample_size = disjointify_sample_size( d.smoothness() );
  auto const k = out.sample_size;
  auto const needed = ( 2 * k + 2 ) / 3;
  std::mt19937_64 rng( seed );
  std::discrete_distribution<std::size_t> pick( weights.begin(), weights.end() );

  for ( uint32_t attempt = 1; attempt <= max_attempts; ++attempt )
  {
    out.attempts = attempt;
    std::vector<mask_t> sample( k );
    for ( auto& w : sample )
      w = d.support()[pick( rng )].first;
    mask_t u = 0;
    for ( uint32_t i = 0; i < k; ++i )
      for ( uint32_t j = i + 1; j < k; ++j )
        u |= sample[i] & sample[j];
    if ( evaluate( f, z | u ) != fz )
      continue; /* E_0 */

    block_witness w{ z | u, {} };
    for ( auto const wt : sample )
    {
      if ( evaluate( f, z | wt ) == evaluate( f, z | wt | u ) )
        w.blocks.push_back( wt & ~u );
    }
    if ( w.blocks.size() < needed )
      continue;
    ensure( verify_block_witness( f, w ), "disjointify produced an unverifiable witness" );
    out.witness = std::move( w );
    return out;
  }
  return out;
}

} // namespace andlift
