// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criteria 1, 4 and 9 share one exhaustive n = 4 harness run.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <andlift/verify.hpp>

using namespace andlift;

namespace
{

struct outcome
{
  bool pass{ true };
  std::ostringstream detail;

  void require( bool ok, std::string const& what )
  {
    if ( !ok )
    {
      pass = false;
      detail << "\n    failed: " << what;
    }
  }
};

int failures = 0;

template<typename Fn>
void criterion( int id, std::string const& title, Fn&& body )
{
  outcome o;
  auto const start = std::chrono::steady_clock::now();
  try
  {
    body( o );
  }
  catch ( std::exception const& e )
  {
    o.require( false, std::string( "exception: " ) + e.what() );
  }
  auto const s = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  std::cout << ( o.pass ? "PASS" : "FAIL" ) << " criterion " << id << ": " << title << " [" << std::fixed;
  std::cout.precision( 1 );
  std::cout << s << "s]" << o.detail.str() << std::endl;
  failures += !o.pass;
}

void require_clean( outcome& o, verification_report const& r, std::initializer_list<char const*> names )
{
  for ( auto const* name : names )
  {
    auto const* c = r.find( name );
    if ( c == nullptr )
    {
      o.require( false, std::string( name ) + " did not run" );
      continue;
    }
    o.detail << "\n    " << name << ": " << c->instances << " instances, " << c->violations << " violations";
    o.require( c->instances > 0 && c->violations == 0, std::string( name ) + ": " + c->first_violation );
  }
}

} // namespace

int main()
{
  std::cout << "running the exhaustive n = 4 harness (shared by criteria 1, 4, 9)" << std::endl;
  auto const exhaustive = run_verification( { 4, true, 0, 1 } );
  std::cout << "  done in " << exhaustive.seconds << "s" << std::endl;

  criterion( 1, "MBS <= FMBS = FHSC <= HSC for all 65536 functions on n = 4 at every z", [&]( outcome& o ) {
    o.require( exhaustive.functions == 65536, "function count" );
    auto const* c = exhaustive.find( "chain" );
    o.require( c != nullptr && c->instances == 65536u * 16u, "instance count 65536 * 16" );
    require_clean( o, exhaustive, { "chain" } );
  } );

  criterion( 2, "rank(M_F) = spar(f): all n = 3 functions, 100 random n = 8 functions", [&]( outcome& o ) {
    std::size_t bad = 0;
    for ( uint32_t bits = 0; bits < 256; ++bits )
    {
      auto const f = mobius_invert( truth_table::tabulate( 3, [bits]( mask_t z ) { return ( bits >> z ) & 1u; } ) );
      bad += comm_rank( f ) != f.sparsity();
    }
    o.require( bad == 0, std::to_string( bad ) + " mismatches on n = 3" );
    std::size_t bad8 = 0;
    for ( uint64_t i = 0; i < 100; ++i )
    {
      std::mt19937_64 rng( instance_seed( 2, i ) );
      auto const f = random_table_function( 8, rng );
      bad8 += comm_rank( f ) != f.sparsity();
    }
    o.require( bad8 == 0, std::to_string( bad8 ) + " mismatches on n = 8" );
    o.detail << "\n    256 + 100 functions, " << bad + bad8 << " mismatches";
  } );

  criterion( 3, "example values of the function zoo", [&]( outcome& o ) {
    auto const checks = zoo_example_checks();
    for ( auto const& [label, holds] : checks )
      o.require( holds, label );
    o.detail << "\n    " << checks.size() << " values checked";
  } );

  criterion( 4, "constructive bounds on exhaustive n = 4 and 200 random n = 10 functions", [&]( outcome& o ) {
    auto const names = { "zero_tree", "greedy_hitting_set", "and_tree", "protocol", "sparsity_3d" };
    o.detail << "\n    exhaustive n = 4:";
    require_clean( o, exhaustive, names );
    auto const sampled = run_verification( { 10, false, 200, 4 } );
    o.require( sampled.functions == 200, "sample count" );
    o.detail << "\n    sampled n = 10 (" << sampled.seconds << "s):";
    require_clean( o, sampled, names );
  } );

  criterion( 5, "UDISJ_k embedding on every (a,b) with |a & b| <= 1, k <= 8", [&]( outcome& o ) {
    std::size_t pairs = 0, violations = 0, embeddings = 0;
    auto run = [&]( multilinear_poly const& f, mask_t z, std::size_t k ) {
      auto const r = local_measures( f, z );
      if ( r.mbs != k )
      {
        o.require( false, "expected MBS " + std::to_string( k ) );
        return;
      }
      auto const c = verify_udisj( f, udisj_embedding_of( f, z, r.packing ) );
      std::size_t expected = 1;
      for ( std::size_t i = 0; i < k; ++i )
        expected *= 3;
      expected += k * expected / 3;
      o.require( c.pairs == expected, "pair count for k = " + std::to_string( k ) );
      pairs += c.pairs;
      violations += c.violations;
      ++embeddings;
    };
    for ( uint32_t k = 1; k <= 8; ++k )
    {
      auto const or_k = generate( { family_kind::or_n, k } );
      run( or_k, 0, k );
      run( constant_poly( k, 1 ) + rational( -1 ) * or_k, 0, k );
      auto const pairs_or = mobius_invert( truth_table::tabulate( 2 * k, [k]( mask_t z ) {
        for ( uint32_t i = 0; i < k; ++i )
          if ( ( ( z >> ( 2 * i ) ) & 3u ) == 3u )
            return 1;
        return 0;
      } ) );
      run( pairs_or, 0, k );
      if ( k <= 3 )
        run( generate( { family_kind::majority, 2 * k } ), 0, 2 );
    }
    for ( uint64_t i = 0; i < 40; ++i )
    {
      std::mt19937_64 rng( instance_seed( 5, i ) );
      auto const f = harness_function( 8, i, rng );
      auto const g = global_measures( f );
      if ( g.mbs >= 1 && g.mbs <= 8 )
        run( f, g.argmax.mbs, g.mbs );
    }
    o.require( violations == 0, std::to_string( violations ) + " violations" );
    o.detail << "\n    " << embeddings << " embeddings, " << pairs << " pairs, " << violations << " violations";
  } );

  criterion( 6, "Pr[flip] <= p * FMBS on 1000 random (f, z, D), n <= 8", [&]( outcome& o ) {
    std::size_t bad = 0, tight = 0;
    measure_cache cache;
    for ( uint64_t i = 0; i < 1000; ++i )
    {
      std::mt19937_64 rng( instance_seed( 6, i ) );
      auto const n = 1 + static_cast<uint32_t>( rng() % 8 );
      auto const f = harness_function( n, i, rng );
      auto const t = smooth_noise_trial( f, rng, &cache );
      bad += !t.holds();
      tight += t.flip > 0 && t.flip == t.smoothness * t.fmbs;
    }
    o.require( bad == 0, std::to_string( bad ) + " violations" );
    o.detail << "\n    1000 triples, " << bad << " violations, " << tight << " with equality";
  } );

  criterion( 7, "disjointify: verified witnesses, >= 50 of 100 runs succeed within 20 attempts", [&]( outcome& o ) {
    std::size_t successes = 0, invalid = 0, attempts = 0, nontrivial = 0, nontrivial_successes = 0;
    measure_cache cache;
    for ( uint64_t i = 0; i < 100; ++i )
    {
      auto const t = run_disjointify_trial( 7, i, &cache );
      invalid += !t.witness_valid;
      nontrivial += t.outcome.sample_size >= 2;
      if ( t.outcome.witness )
      {
        ++successes;
        attempts += t.outcome.attempts;
        nontrivial_successes += t.outcome.sample_size >= 2;
      }
    }
    o.require( invalid == 0, std::to_string( invalid ) + " invalid witnesses" );
    o.require( successes >= 50, "only " + std::to_string( successes ) + " successes" );
    o.detail << "\n    " << successes << "/100 succeeded, mean attempts " << ( successes ? double( attempts ) / double( successes ) : 0.0 )
             << "\n    runs sampling >= 2 blocks per attempt: " << nontrivial_successes << "/" << nontrivial << " succeeded";
  } );

  criterion( 8, "threshold randomized AND-tree: error 0 on |x| >= n-1, <= 1/2 below, n = 4..10", [&]( outcome& o ) {
    for ( uint32_t n = 4; n <= 10; ++n )
    {
      auto const worst = threshold_error_by_weight( n );
      rational below = 0;
      for ( uint32_t w = 0; w <= n; ++w )
      {
        if ( w + 1 >= n )
          o.require( worst[w] == 0, "n = " + std::to_string( n ) + " weight " + std::to_string( w ) + " has error" );
        else
          below = std::max( below, worst[w] );
      }
      o.require( below <= rational( 1, 2 ), "n = " + std::to_string( n ) + " error above 1/2" );
      o.detail << "\n    n = " << n << ": worst error below n-1 is " << to_fraction_string( below );
    }
  } );

  criterion( 9, "ratio tables for the asymptotic statements (finite), constructive bounds hold", [&]( outcome& o ) {
    for ( auto const& c : exhaustive.checks )
    {
      if ( c.asserting || c.averaged )
        continue;
      o.require( c.ratio.has_value() && std::isfinite( *c.ratio ), c.name + " is not finite" );
      o.detail << "\n    " << c.description << " = " << ( c.ratio ? *c.ratio : NAN ) << " at " << c.ratio_at;
    }
    o.require( exhaustive.ok(), "an asserting check of the exhaustive run has violations" );
  } );

  criterion( 10, "dichotomy on 100 random set systems (n <= 12, r <= 30, m <= 4)", [&]( outcome& o ) {
    std::size_t bad = 0, hitting = 0;
    for ( uint64_t i = 0; i < 100; ++i )
    {
      std::mt19937_64 rng( instance_seed( 10, i ) );
      auto const s = random_set_system( rng, 12, 30 );
      auto const m = 1 + rng() % 4;
      auto const r = dichotomy( s, m );
      bad += !verify_dichotomy( s, m, r );
      hitting += !r.disjoint_branch();
    }
    o.require( bad == 0, std::to_string( bad ) + " failed re-verification" );
    o.detail << "\n    " << hitting << " hitting-set branches, " << 100 - hitting << " disjoint branches, " << bad << " failures";
  } );

  std::cout << ( failures == 0 ? "all criteria passed" : std::to_string( failures ) + " criteria failed" ) << std::endl;
  return failures == 0 ? 0 : 1;
}
