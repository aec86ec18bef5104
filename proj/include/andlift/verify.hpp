/*!
  \file verify.hpp
  \brief Brute-force verification harness over exhaustive or sampled functions.

  Every check is either asserting (counts violations) or reporting (tracks a
  ratio statistic). Instances are processed in index order; instance i draws
  its randomness from instance_seed(seed, i).
*/

#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "comm.hpp"
#include "measures.hpp"
#include "report.hpp"
#include "trees.hpp"
#include "zoo.hpp"

namespace andlift
{

inline uint64_t splitmix64( uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

inline uint64_t instance_seed( uint64_t seed, uint64_t index ) { return splitmix64( seed ^ splitmix64( index ) ); }

/* ------------------------------------------------------------- generators */

inline multilinear_poly random_table_function( uint32_t n, std::mt19937_64& rng )
{
  return mobius_invert( truth_table::tabulate( n, [&]( mask_t ) { return static_cast<int>( rng() & 1u ); } ) );
}

/*! \brief OR of 1..5 random nonempty AND-terms; sparse, unlike uniform tables. */
inline multilinear_poly random_dnf_function( uint32_t n, std::mt19937_64& rng )
{
  std::vector<mask_t> terms( 1 + rng() % 5 );
  for ( auto& t : terms )
    do
      t = rng() & full_mask( n );
    while ( t == 0 );
  return mobius_invert( truth_table::tabulate( n, [&]( mask_t z ) {
    return static_cast<int>( std::any_of( terms.begin(), terms.end(), [z]( mask_t t ) { return is_subset( t, z ); } ) );
  } ) );
}

/*! \brief Harness functions alternate between uniform tables (even index) and sparse DNFs (odd). */
inline multilinear_poly harness_function( uint32_t n, uint64_t index, std::mt19937_64& rng )
{
  return index % 2 == 0 ? random_table_function( n, rng ) : random_dnf_function( n, rng );
}

inline set_system random_set_system( std::mt19937_64& rng, uint32_t max_n, std::size_t max_r )
{
  auto const n = 1 + static_cast<uint32_t>( rng() % max_n );
  auto const available = ( std::size_t{ 1 } << n ) - 1;
  auto const r = 1 + rng() % std::min( max_r, available );
  std::uniform_real_distribution<double> unit( 0.15, 0.6 );
  double const density = unit( rng );
  std::vector<mask_t> sets;
  while ( sets.size() < r )
  {
    mask_t s = 0;
    for ( uint32_t i = 0; i < n; ++i )
      if ( std::generate_canonical<double, 53>( rng ) < density )
        s |= mask_t{ 1 } << i;
    if ( s != 0 && std::find( sets.begin(), sets.end(), s ) == sets.end() )
      sets.push_back( s );
  }
  return set_system( n, std::move( sets ) );
}

/* ----------------------------------------------------------------- results */

struct check_result
{
  std::string name;
  std::string description;
  bool asserting{ true };
  std::size_t instances{ 0 };
  std::size_t violations{ 0 };         /* asserting checks */
  std::string first_violation;
  std::optional<double> ratio;         /* reporting checks: maximum observed */
  std::string ratio_at;
  bool averaged{ false };              /* ratio is a mean rather than a maximum */
  double sum{ 0 };
  double seconds{ 0 };

  bool ok() const noexcept { return !asserting || violations == 0; }
};

struct harness_options
{
  uint32_t max_n{ 3 };
  bool exhaustive{ true };
  std::size_t samples{ 100 };
  uint64_t seed{ 1 };
};

struct verification_report
{
  harness_options options;
  std::size_t functions{ 0 };
  double seconds{ 0 };
  std::vector<check_result> checks;

  bool ok() const
  {
    return std::all_of( checks.begin(), checks.end(), []( auto const& c ) { return c.ok(); } );
  }

  check_result const* find( std::string_view name ) const
  {
    for ( auto const& c : checks )
      if ( c.name == name )
        return &c;
    return nullptr;
  }
};

/* ------------------------------------------------------------------ checks */

namespace detail
{

/*! \brief Independent re-check of a local report against f: witnesses and the chain. */
inline bool local_report_valid( multilinear_poly const& f, mask_t z, measure_report const& r, set_system const& family )
{
  auto const n = f.num_vars();
  auto const fz = evaluate( f, z );
  auto const flips = [&]( mask_t w ) { return w != 0 && ( w & z ) == 0 && evaluate( f, z | w ) != fz; };

  if ( !( rational( r.mbs ) <= r.fmbs && r.fmbs == r.fhsc && r.fhsc <= rational( r.hsc ) ) )
    return false;
  if ( r.packing.size() != r.mbs || !verify_block_witness( f, block_witness{ z, r.packing.blocks } ) )
    return false;
  if ( r.hitting.size() != r.hsc || !hits_all( family.sets(), r.hitting.elements ) )
    return false;
  for ( auto w : family.sets() )
    if ( !flips( w ) )
      return false;

  if ( family.empty() )
    return r.fmbs == 0 && r.distribution.empty();

  /* (1/FMBS)-smooth distribution over flipping blocks certifies FMBS >= value */
  smooth_distribution const d( n, r.distribution );
  for ( auto const& [w, pr] : d.support() )
    if ( !flips( w ) )
      return false;
  if ( d.smoothness() * r.fmbs != 1 )
    return false;

  /* fractional hitting set of value FHSC certifies FHSC <= value */
  if ( r.cover_weights.size() != n )
    return false;
  rational total = 0;
  for ( auto const& b : r.cover_weights )
  {
    if ( b < 0 )
      return false;
    total += b;
  }
  if ( total != r.fhsc )
    return false;
  for ( auto w : family.sets() )
  {
    rational covered = 0;
    for ( auto m = w; m != 0; m &= m - 1 )
      covered += r.cover_weights[std::countr_zero( m )];
    if ( covered < 1 )
      return false;
  }
  return true;
}

inline std::size_t binomial( std::size_t n, std::size_t k )
{
  if ( k > n )
    return 0;
  std::size_t r = 1;
  for ( std::size_t i = 1; i <= k; ++i )
    r = r * ( n - k + i ) / i;
  return r;
}

inline std::string table_hex( multilinear_poly const& f )
{
  auto const bits = to_truth_table( f ).bits();
  std::string out;
  for ( std::size_t i = bits.size(); i >= 4; i -= 4 )
  {
    auto const nibble = bits[i - 1] * 8 + bits[i - 2] * 4 + bits[i - 3] * 2 + bits[i - 4];
    out += "0123456789abcdef"[nibble];
  }
  if ( bits.size() < 4 )
  {
    int v = 0;
    for ( std::size_t i = bits.size(); i-- > 0; )
      v = v * 2 + bits[i];
    out += "0123456789abcdef"[v];
  }
  return "0x" + out;
}

} // namespace detail

/*! \brief Pr[flip] <= p * FMBS(f,z) for a random p-smooth distribution D over blocks outside z. */
struct noise_trial
{
  uint32_t n{ 0 };
  mask_t z{ 0 };
  rational flip{ 0 };
  rational smoothness{ 0 };
  rational fmbs{ 0 };

  bool holds() const { return flip <= smoothness * fmbs; }
};

inline noise_trial smooth_noise_trial( multilinear_poly const& f, std::mt19937_64& rng, measure_cache* cache = nullptr )
{
  auto const n = f.num_vars();
  if ( n == 0 )
    throw std::invalid_argument( "smooth_noise_trial: n >= 1" );
  mask_t z = rng() & rng() & full_mask( n );
  if ( z == full_mask( n ) )
    z &= ~( mask_t{ 1 } << ( rng() % n ) );
  auto const free = full_mask( n ) & ~z;

  std::vector<std::pair<mask_t, rational>> support;
  std::vector<uint64_t> weights;
  auto const size = 1 + rng() % 6;
  for ( std::size_t k = 0; k < size; ++k )
  {
    mask_t w = 0;
    while ( w == 0 )
      w = rng() & free;
    if ( std::any_of( support.begin(), support.end(), [w]( auto const& e ) { return e.first == w; } ) )
      continue;
    support.emplace_back( w, 0 );
    weights.push_back( 1 + rng() % 6 );
  }
  uint64_t total = 0;
  for ( auto w : weights )
    total += w;
  for ( std::size_t k = 0; k < support.size(); ++k )
    support[k].second = rational( integer( weights[k] ), integer( total ) );
  smooth_distribution const d( n, std::move( support ) );

  noise_trial t;
  t.n = n;
  t.z = z;
  t.flip = smooth_flip_probability( f, z, d );
  t.smoothness = d.smoothness();
  t.fmbs = local_measures( f, z, cache ).fmbs;
  return t;
}

/*!
  \brief One disjointify run of the harness family.

  Run i: a harness function on 4..8 variables, z = the global FMBS argmax,
  D = the LP distribution there, 20 attempts seeded by the run.
*/
struct disjointify_trial
{
  uint32_t n{ 0 };
  rational fmbs{ 0 };
  disjointify_outcome outcome;
  bool witness_valid{ true }; /* every returned witness re-verified here */
};

inline disjointify_trial run_disjointify_trial( uint64_t seed, uint64_t index, measure_cache* cache = nullptr )
{
  std::mt19937_64 rng( instance_seed( seed, index ) );
  disjointify_trial t;
  t.n = 4 + static_cast<uint32_t>( rng() % 5 );
  multilinear_poly f( t.n );
  measure_report g;
  do
  {
    f = harness_function( t.n, index, rng );
    g = global_measures( f, cache );
  } while ( g.fmbs == 0 );
  t.fmbs = g.fmbs;
  auto const z = g.argmax.fmbs;
  smooth_distribution const d( t.n, g.distribution );
  t.outcome = disjointify( f, z, d, rng(), 20 );
  if ( t.outcome.witness )
  {
    auto const& w = *t.outcome.witness;
    t.witness_valid = verify_block_witness( f, w ) && !w.blocks.empty() && is_subset( z, w.point ) &&
                      w.blocks.size() >= ( 2 * t.outcome.sample_size + 2 ) / 3;
  }
  return t;
}

/*! \brief Concrete example values of the function zoo: (label, holds). */
inline std::vector<std::pair<std::string, bool>> zoo_example_checks()
{
  std::vector<std::pair<std::string, bool>> out;
  auto add = [&]( std::string label, bool ok ) { out.emplace_back( std::move( label ), ok ); };

  for ( uint32_t n : { 4u, 6u, 8u } )
  {
    auto const r = local_measures( generate( { family_kind::majority, n } ), 0 );
    add( "majority_" + std::to_string( n ) + ": FHSC(0) = 2", r.fhsc == 2 );
    add( "majority_" + std::to_string( n ) + ": HSC(0) = " + std::to_string( n / 2 + 1 ), r.hsc == n / 2 + 1 );
  }
  {
    auto const r = local_measures( generate( { family_kind::projective_plane, 2 } ), 0 );
    add( "fano: MBS(0) = 1", r.mbs == 1 );
    add( "fano: FMBS(0) = 7/3", r.fmbs == rational( 7, 3 ) );
  }
  for ( uint32_t c : { 2u, 3u, 4u } )
  {
    auto const r = global_measures( generate( { family_kind::and_or, c } ) );
    add( "and_or(" + std::to_string( c ) + " clauses): HSC = MBS = 2", r.hsc == 2 && r.mbs == 2 );
  }
  for ( uint32_t k : { 2u, 3u } )
  {
    auto const f = generate( { family_kind::redundant_indexing, k } );
    add( "redundant_indexing(k=" + std::to_string( k ) + "): spar = " + std::to_string( 2 * k ), f.sparsity() == 2 * k );
    add( "redundant_indexing(k=" + std::to_string( k ) + "): HSC <= 2", global_measures( f ).hsc <= 2 );
  }
  for ( uint32_t n = 2; n <= 10; ++n )
    add( "threshold_" + std::to_string( n ) + ": spar = " + std::to_string( n + 1 ),
         generate( { family_kind::threshold, n } ).sparsity() == n + 1 );
  for ( uint32_t n = 1; n <= 8; ++n )
  {
    add( "or_" + std::to_string( n ) + ": MBS = " + std::to_string( n ), global_measures( generate( { family_kind::or_n, n } ) ).mbs == n );
    add( "and_" + std::to_string( n ) + ": MBS = 1", global_measures( generate( { family_kind::and_n, n } ) ).mbs == 1 );
  }
  return out;
}

/* ----------------------------------------------------------------- harness */

/*! \brief Accumulates per-check counts and times; checks keep first-use order. */
class harness
{
public:
  explicit harness( harness_options opts ) : opts_( opts ) {}

  /*! \brief Runs `fn` as one instance of an asserting check; a throw counts as a violation. */
  template<typename Fn>
  void assert_check( std::string const& name, std::string const& description, std::string const& instance, Fn&& fn )
  {
    auto& c = entry( name, description, true );
    auto const start = std::chrono::steady_clock::now();
    std::string failure;
    try
    {
      if ( !fn() )
        failure = "check failed";
    }
    catch ( std::exception const& e )
    {
      failure = e.what();
    }
    c.seconds += std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    ++c.instances;
    if ( !failure.empty() )
    {
      if ( c.violations++ == 0 )
        c.first_violation = instance + ": " + failure;
    }
  }

  /*! \brief Folds one finite-or-not ratio into a reporting check. */
  void report_ratio( std::string const& name, std::string const& description, std::string const& instance, double value,
                     double seconds = 0 )
  {
    auto& c = entry( name, description, false );
    ++c.instances;
    c.seconds += seconds;
    if ( !c.ratio || !( value <= *c.ratio ) )
    {
      c.ratio = value;
      c.ratio_at = instance;
    }
  }

  /*! \brief Folds one value into a reporting check whose statistic is the mean. */
  void report_mean( std::string const& name, std::string const& description, double value )
  {
    auto& c = entry( name, description, false );
    c.averaged = true;
    ++c.instances;
    c.sum += value;
    c.ratio = c.sum / double( c.instances );
    c.ratio_at = "mean";
  }

  /*! \brief Every per-function check; `label` names the instance in reports. */
  void check_function( multilinear_poly const& f, std::string const& label, std::mt19937_64& rng );

  /*! \brief Checks that draw their own instance: range collapse and the set-system dichotomy. */
  void check_auxiliary( std::mt19937_64& rng, std::string const& label );

  /*! \brief Fixed instances: zoo values and the threshold randomized tree. */
  void check_fixed();

  verification_report finish( std::size_t functions, double seconds )
  {
    verification_report r;
    r.options = opts_;
    r.functions = functions;
    r.seconds = seconds;
    r.checks = std::move( checks_ );
    return r;
  }

private:
  check_result& entry( std::string const& name, std::string const& description, bool asserting )
  {
    if ( auto it = index_.find( name ); it != index_.end() )
      return checks_[it->second];
    index_.emplace( name, checks_.size() );
    auto& c = checks_.emplace_back();
    c.name = name;
    c.description = description;
    c.asserting = asserting;
    return c;
  }

  rational global_fhsc( multilinear_poly const& f )
  {
    if ( f.num_vars() > 6 )
      return global_fractional( f, &cache_ );
    auto const key = detail::table_hex( f );
    if ( auto it = fhsc_memo_.find( key ); it != fhsc_memo_.end() )
      return it->second;
    auto const v = global_fractional( f, &cache_ );
    fhsc_memo_.emplace( key, v );
    return v;
  }

  std::size_t greedy_bound( rational const& k, std::size_t r )
  {
    auto key = to_fraction_string( k ) + ":" + std::to_string( r );
    if ( auto it = greedy_memo_.find( key ); it != greedy_memo_.end() )
      return it->second;
    return greedy_memo_[std::move( key )] = greedy_size_bound( k, r );
  }

  harness_options opts_;
  std::vector<check_result> checks_;
  std::unordered_map<std::string, std::size_t> greedy_memo_;
  std::unordered_map<std::string, std::size_t> index_;
  measure_cache cache_;
  std::unordered_map<std::string, rational> fhsc_memo_;
};

inline void harness::check_function( multilinear_poly const& f, std::string const& label, std::mt19937_64& rng )
{
  auto const n = f.num_vars();
  auto const points = mask_t{ 1 } << n;
  auto const mon = f.mon_count();
  auto const spar = f.sparsity();

  /* per point: chain with witnesses, greedy hitting set */
  std::vector<measure_report> local( points );
  for ( mask_t z = 0; z < points; ++z )
  {
    auto const at = label + " z=" + format_set( z );
    auto const family = sensitive_family_at( f, z ).blocks;
    assert_check( "chain", "MBS <= FMBS = FHSC <= HSC at every point, witnesses re-verified", at, [&] {
      local[z] = local_measures( f, z, &cache_ );
      return detail::local_report_valid( f, z, local[z], family );
    } );
    if ( family.empty() )
      continue;
    assert_check( "greedy_hitting_set", "greedy hitting set <= floor(FHSC(f,z) ln r) + 1, r = #minimal sets <= |mon f|", at, [&] {
      auto const g = greedy_cover( family );
      return verify_hitting_set( family, g.cover ) && family.size() <= mon &&
             g.cover.size() <= greedy_bound( local[z].fhsc, family.size() ) &&
             g.cover.size() <= greedy_bound( local[z].fhsc, mon );
    } );
  }

  std::size_t mbs = 0, hsc = 0;
  rational fhsc = 0;
  mask_t at_mbs = 0, at_fmbs = 0;
  for ( mask_t z = 0; z < points; ++z )
  {
    if ( local[z].mbs > mbs )
      mbs = local[z].mbs, at_mbs = z;
    if ( local[z].fhsc > fhsc )
      fhsc = local[z].fhsc, at_fmbs = z;
    hsc = std::max( hsc, local[z].hsc );
  }

  assert_check( "fhsc_restriction", "global FHSC does not increase under x_i = 0 or x_i = 1", label, [&] {
    auto check_var = [&]( uint32_t i ) {
      return global_fhsc( restrict_zero( f, i ) ) <= fhsc && global_fhsc( restrict_ones( f, mask_t{ 1 } << i ) ) <= fhsc;
    };
    if ( n <= 6 )
    {
      for ( uint32_t i = 0; i < n; ++i )
        if ( !check_var( i ) )
          return false;
      return true;
    }
    return check_var( static_cast<uint32_t>( rng() % n ) );
  } );

  if ( n <= 8 )
  {
    assert_check( "mbs_le_bs", "global MBS <= block sensitivity", label,
                  [&] { return mbs <= block_sensitivity( to_truth_table( f ) ); } );
    assert_check( "rank_eq_spar", "rank of the AND-matrix = spar (multimodular, exact)", label, [&] { return comm_rank( f ) == spar; } );
  }

  /* pipeline: zero tree, AND tree, protocol, 3^d bounds, AND tree back to a tree */
  auto const zdt = build_zero_dt( f );
  and_decision_tree adt;
  assert_check( "zero_tree", "greedy zero-tree computes f, zero-depth <= ceil(2 FHSC ln spar) + 1", label, [&] {
    return tree_computes( zdt, f ) && zdt.well_formed() && zdt.zero_depth() <= zero_depth_bound( fhsc, spar );
  } );
  assert_check( "and_tree", "AND-tree computes f, depth <= zero-depth * ceil(log2(n+1))", label, [&] {
    adt = zero_dt_to_adt( zdt );
    return adt_verify( adt, f ) && adt.depth() <= zdt.zero_depth() * ceil_log2( n + 1 );
  } );
  if ( n <= capacity_limit( limits::comm_matrix ) )
  {
    assert_check( "protocol", "protocol correct on all (x,y), cost <= 2 * AND-tree depth", label, [&] {
      auto const p = check_protocol( adt, f );
      return p.wrong == 0 && p.pairs == ( std::size_t{ 1 } << ( 2 * n ) ) && p.max_cost <= 2 * adt.depth();
    } );
  }
  assert_check( "sparsity_3d", "spar <= 3^d and ||f||_1 <= 3^d, d = AND-tree depth", label, [&] {
    auto const bound = pow3( adt.depth() );
    return integer( spar ) <= bound && l1_norm( f ) <= rational( bound );
  } );
  assert_check( "and_tree_to_tree", "AND-tree simulated by a decision tree computes f", label, [&] {
    auto const dt = adt_to_dt( adt );
    return dt.well_formed() && tree_computes( dt, f );
  } );

  /* collapse and UDISJ on the MBS witness */
  auto const& pack = local[at_mbs].packing;
  if ( mbs > 0 )
  {
    assert_check( "block_collapse", "collapsing k disjoint flipping blocks gives MBS(g,0) = k", label, [&] {
      auto const g = block_collapse( f, at_mbs, pack.blocks );
      if ( evaluate( g, 0 ) != evaluate( f, at_mbs ) )
        return false;
      for ( std::size_t i = 0; i < pack.size(); ++i )
        if ( evaluate( g, mask_t{ 1 } << i ) != evaluate( f, at_mbs | pack.blocks[i] ) )
          return false;
      return local_measures( g, 0 ).mbs == pack.size();
    } );
    if ( mbs <= 8 )
    {
      assert_check( "udisj", "UDISJ_k embeds in the AND-matrix on every (a,b) with |a & b| <= 1", label, [&] {
        auto const e = udisj_embedding_of( f, at_mbs, pack );
        auto const c = verify_udisj( f, e );
        std::size_t expected = 1;
        for ( std::size_t i = 0; i < mbs; ++i )
          expected *= 3;
        expected += mbs * expected / 3;
        return c.violations == 0 && c.pairs == expected;
      } );
    }
  }

  assert_check( "smooth_noise", "Pr[f(z) != f(z | w)] <= p * FMBS(f,z) for p-smooth D", label,
                [&] { return smooth_noise_trial( f, rng, &cache_ ).holds(); } );

  if ( fhsc > 0 )
  {
    bool success = false;
    assert_check( "disjointify_witness", "every disjointify success is a verified disjoint flipping witness", label, [&] {
      smooth_distribution const d( n, local[at_fmbs].distribution );
      auto const out = disjointify( f, at_fmbs, d, rng(), 20 );
      success = out.witness.has_value();
      return !success || ( verify_block_witness( f, *out.witness ) && is_subset( at_fmbs, out.witness->point ) );
    } );
    report_mean( "disjointify_failure", "fraction of disjointify runs failing all 20 attempts", success ? 0.0 : 1.0 );
  }

  /* ratio tables for the asymptotic statements; reported, never asserted */
  auto const log_spar = spar >= 2 ? std::log2( static_cast<double>( spar ) ) : 0.0;
  if ( mbs >= 1 )
    report_ratio( "ratio_fmbs_mbs2", "max FMBS / MBS^2", label, fhsc.convert_to<double>() / double( mbs * mbs ) );
  if ( spar >= 2 )
  {
    report_ratio( "ratio_mbs_log2spar", "max MBS / (log2 spar)^2", label, double( mbs ) / ( log_spar * log_spar ) );
    report_ratio( "ratio_hsc_log5spar", "max HSC / (log2 spar)^5", label, double( hsc ) / std::pow( log_spar, 5 ) );
    report_ratio( "ratio_logrank", "max AND-tree depth / ((log2 spar)^5 log2 n)", label,
                  double( adt.depth() ) / ( std::pow( log_spar, 5 ) * std::log2( double( std::max<uint32_t>( n, 2 ) ) ) ) );
  }
  if ( n <= 8 && f.degree() >= 1 )
  {
    auto const bs = block_sensitivity( to_truth_table( f ) );
    report_ratio( "ratio_bs_deg2", "max bs / deg^2", label, double( bs ) / double( f.degree() * f.degree() ) );
  }
}

inline void harness::check_auxiliary( std::mt19937_64& rng, std::string const& label )
{
  assert_check( "range_collapse", "range collapse yields the indicator of f = a with spar <= sum_{j<s} C(|mon f|, j)", label, [&] {
    auto const n = 1 + static_cast<uint32_t>( rng() % 6 );
    std::vector<rational> values{ rational( 0 ), rational( 1 ), rational( -1, 2 ), rational( 3 ) };
    auto const s = 2 + rng() % 3;
    auto const f = mobius_invert( truth_table::tabulate( n, [&]( mask_t ) { return values[rng() % s]; } ) );
    auto const range = function_range( f );
    auto const a = range[rng() % range.size()];
    auto const r = range_collapse( f, a );
    std::size_t bound = 0;
    for ( std::size_t j = 0; j < range.size(); ++j )
      bound += detail::binomial( f.mon_count(), j );
    for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
      if ( evaluate( r.g, z ) != ( evaluate( f, z ) == a ? 1 : 0 ) )
        return false;
    return r.range_size == range.size() && r.g.sparsity() <= bound;
  } );
  assert_check( "dichotomy", "dichotomy branch re-verifies (hitting set within bound, or m disjoint sets off T)", label, [&] {
    auto const s = random_set_system( rng, 12, 30 );
    auto const m = 1 + rng() % 4;
    auto const r = dichotomy( s, m );
    if ( !verify_dichotomy( s, m, r ) )
      return false;
    if ( r.hitting )
      return hits_all( s.sets(), r.hitting->cover.elements ) && r.hitting->cover.size() <= r.hitting_bound;
    std::vector<mask_t> off;
    for ( auto i : r.chosen )
      off.push_back( s[i] & ~r.t );
    return r.chosen.size() >= m && is_pairwise_disjoint( off ) &&
           std::none_of( off.begin(), off.end(), []( mask_t b ) { return b == 0; } );
  } );
}

inline void harness::check_fixed()
{
  for ( auto const& [what, holds] : zoo_example_checks() )
    assert_check( "zoo_examples", "example values of the function zoo", what, [holds = holds] { return holds; } );
  for ( uint32_t n = 4; n <= 10; ++n )
  {
    assert_check( "threshold_adt", "randomized AND-tree for |x| >= n-1: error 0 on |x| >= n-1, <= 1/2 below", "n=" + std::to_string( n ), [&] {
      auto const worst = threshold_error_by_weight( n );
      for ( uint32_t w = 0; w <= n; ++w )
        if ( w + 1 >= n ? worst[w] != 0 : worst[w] > rational( 1, 2 ) )
          return false;
      return true;
    } );
  }
}

/*!
  \brief Runs the suite.

  Exhaustive mode enumerates every boolean function on max_n <= 4 variables
  (plus 100 auxiliary instances); sampled mode draws `samples` functions on
  max_n <= 10 variables and as many auxiliary instances.
*/
inline verification_report run_verification( harness_options const& opts,
                                             std::function<void( std::size_t, std::size_t )> progress = {} )
{
  if ( opts.exhaustive && opts.max_n > 4 )
    throw capacity_error( "verify: exhaustive mode supports max_n <= 4" );
  if ( !opts.exhaustive && opts.max_n > 10 )
    throw capacity_error( "verify: sampled mode supports max_n <= 10" );
  if ( opts.max_n < 1 )
    throw std::invalid_argument( "verify: max_n >= 1" );

  auto const start = std::chrono::steady_clock::now();
  harness h( opts );
  auto const n = opts.max_n;
  std::size_t const functions = opts.exhaustive ? std::size_t{ 1 } << ( std::size_t{ 1 } << n ) : opts.samples;
  for ( std::size_t i = 0; i < functions; ++i )
  {
    std::mt19937_64 rng( instance_seed( opts.seed, i ) );
    multilinear_poly f;
    if ( opts.exhaustive )
      f = mobius_invert( truth_table::tabulate( n, [i]( mask_t z ) { return static_cast<int>( ( i >> z ) & 1u ); } ) );
    else
      f = harness_function( n, i, rng );
    auto const label = n <= 6 ? "f=" + detail::table_hex( f ) : "sample " + std::to_string( i );
    h.check_function( f, label, rng );
    if ( progress )
      progress( i + 1, functions );
  }
  auto const aux = opts.exhaustive ? std::size_t{ 100 } : opts.samples;
  for ( std::size_t i = 0; i < aux; ++i )
  {
    std::mt19937_64 rng( instance_seed( opts.seed ^ 0xa5a5a5a5ull, i ) );
    h.check_auxiliary( rng, "aux " + std::to_string( i ) );
  }
  h.check_fixed();
  return h.finish( functions, std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count() );
}

/* ----------------------------------------------------------------- output */

inline std::string format_report( verification_report const& r )
{
  std::ostringstream os;
  os << "verify: " << ( r.options.exhaustive ? "exhaustive" : "sampled" ) << " n=" << r.options.max_n
     << " functions=" << r.functions << " seed=" << r.options.seed << '\n';
  char line[256];
  std::snprintf( line, sizeof line, "%-22s %-6s %10s %10s %14s %9s\n", "check", "kind", "instances", "violations", "ratio",
                 "seconds" );
  os << line;
  for ( auto const& c : r.checks )
  {
    std::string ratio = "-";
    if ( c.ratio )
    {
      char buf[32];
      std::snprintf( buf, sizeof buf, "%.6g", *c.ratio );
      ratio = buf;
    }
    std::snprintf( line, sizeof line, "%-22s %-6s %10zu %10s %14s %9.2f\n", c.name.c_str(), c.asserting ? "assert" : "ratio",
                   c.instances, c.asserting ? std::to_string( c.violations ).c_str() : "-", ratio.c_str(), c.seconds );
    os << line;
    if ( !c.first_violation.empty() )
      os << "    first violation: " << c.first_violation << '\n';
  }
  std::snprintf( line, sizeof line, "total %.2fs: %s\n", r.seconds, r.ok() ? "OK" : "VIOLATIONS" );
  os << line;
  return os.str();
}

inline json to_json( verification_report const& r )
{
  json checks = json::array();
  for ( auto const& c : r.checks )
  {
    json j;
    j["name"] = c.name;
    j["description"] = c.description;
    j["instances"] = c.instances;
    if ( c.asserting )
    {
      j["violations"] = c.violations;
      if ( !c.first_violation.empty() )
        j["first_violation"] = c.first_violation;
    }
    else
    {
      j[c.averaged ? "mean" : "max_ratio"] = c.ratio ? json( *c.ratio ) : json( nullptr );
      if ( !c.averaged )
        j["max_ratio_at"] = c.ratio_at;
    }
    j["seconds"] = c.seconds;
    checks.push_back( j );
  }
  return { { "mode", r.options.exhaustive ? "exhaustive" : "sampled" },
           { "max_n", r.options.max_n },
           { "seed", r.options.seed },
           { "functions", r.functions },
           { "ok", r.ok() },
           { "seconds", r.seconds },
           { "checks", checks } };
}

} // namespace andlift
