#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <andlift/measures.hpp>
#include <andlift/trees.hpp>
#include <andlift/zoo.hpp>

using namespace andlift;

namespace
{

multilinear_poly from_bits( uint32_t n, uint64_t bits )
{
  return mobius_invert( truth_table::tabulate( n, [&]( mask_t z ) { return ( bits >> z ) & 1u; } ) );
}

multilinear_poly random_boolean( std::mt19937_64& rng, uint32_t n )
{
  return mobius_invert( truth_table::tabulate( n, [&]( mask_t ) { return rng() & 1u; } ) );
}

void check_pipeline_bounds( multilinear_poly const& f )
{
  auto const n = f.num_vars();
  auto const t = build_zero_dt( f );
  ASSERT_TRUE( t.well_formed() );
  ASSERT_TRUE( tree_computes( t, f ) );
  auto const k = global_fractional( f );
  ASSERT_LE( t.zero_depth(), zero_depth_bound( k, f.sparsity() ) );
  auto const a = zero_dt_to_adt( t );
  ASSERT_TRUE( adt_verify( a, f ) );
  ASSERT_LE( a.depth(), t.zero_depth() * ceil_log2( n + 1 ) );
  ASSERT_LE( integer( f.sparsity() ), pow( integer( 3 ), static_cast<unsigned>( a.depth() ) ) );
  ASSERT_LE( l1_norm( f ), rational( pow( integer( 3 ), static_cast<unsigned>( a.depth() ) ) ) );
  auto const back = adt_to_dt( a );
  ASSERT_TRUE( tree_computes( back, f ) );
  ASSERT_LE( back.zero_depth(), a.depth() );
}

} // namespace

TEST( ZeroTree, AndIsAPath )
{
  for ( uint32_t n = 1; n <= 8; ++n )
  {
    auto const f = generate( { family_kind::and_n, n } );
    auto const t = build_zero_dt( f );
    EXPECT_EQ( t.zero_depth(), 1u );
    EXPECT_EQ( t.depth(), n );
    auto const a = zero_dt_to_adt( t );
    EXPECT_LE( a.depth(), ceil_log2( n + 1 ) );
    EXPECT_TRUE( adt_verify( a, f ) );
  }
}

TEST( ZeroTree, OrNeedsEveryZero )
{
  for ( uint32_t n = 1; n <= 8; ++n )
  {
    auto const f = generate( { family_kind::or_n, n } );
    auto const t = build_zero_dt( f );
    EXPECT_EQ( t.zero_depth(), n );
    auto const a = zero_dt_to_adt( t );
    EXPECT_LE( a.depth(), n * ceil_log2( n + 1 ) );
    EXPECT_TRUE( adt_verify( a, f ) );
  }
}

TEST( ZeroTree, FirstZeroGap )
{
  for ( uint32_t n = 3; n <= 10; ++n )
  {
    auto const f = generate( { family_kind::first_zero_gap, n } );
    auto const t = build_zero_dt( f );
    EXPECT_TRUE( tree_computes( t, f ) );
    EXPECT_LE( t.zero_depth(), 2u ) << "n=" << n;
    auto const a = zero_dt_to_adt( t );
    EXPECT_TRUE( adt_verify( a, f ) );
    EXPECT_LE( a.depth(), 2 * ceil_log2( n + 1 ) );
    /* spar <= 3^depth forces depth >= log_3 spar */
    EXPECT_GE( static_cast<double>( a.depth() ), std::log( static_cast<double>( f.sparsity() ) ) / std::log( 3.0 ) - 1e-9 );
  }
}

TEST( ZeroTree, ExhaustiveSmallFunctions )
{
  for ( uint32_t n = 0; n <= 3; ++n )
    for ( uint64_t bits = 0; bits < ( uint64_t{ 1 } << ( 1u << n ) ); ++bits )
      check_pipeline_bounds( from_bits( n, bits ) );
}

TEST( ZeroTree, RandomFunctions )
{
  std::mt19937_64 rng( 41 );
  for ( int rep = 0; rep < 30; ++rep )
    check_pipeline_bounds( random_boolean( rng, 4 + rep % 5 ) );
}

TEST( ZeroTree, SparseFunctionsUpToTen )
{
  /* OR of a few random ANDs keeps the measures cheap at n = 10 */
  std::mt19937_64 rng( 8 );
  for ( int rep = 0; rep < 5; ++rep )
  {
    std::vector<mask_t> terms;
    for ( int k = 0; k < 3; ++k )
      terms.push_back( ( rng() & full_mask( 10 ) ) | 1 );
    auto const f = mobius_invert( truth_table::tabulate( 10, [&]( mask_t z ) {
      return std::any_of( terms.begin(), terms.end(), [z]( mask_t t ) { return is_subset( t, z ); } );
    } ) );
    check_pipeline_bounds( f );
  }
}

TEST( AndTree, MajorityPipelineVerifies )
{
  auto const f = generate( { family_kind::majority, 4 } );
  auto const a = zero_dt_to_adt( build_zero_dt( f ) );
  EXPECT_TRUE( adt_verify( a, f ) );
  EXPECT_LE( integer( f.sparsity() ), pow( integer( 3 ), static_cast<unsigned>( a.depth() ) ) );
}

TEST( AndTree, LeafTree )
{
  and_decision_tree t( 3 );
  t.set_root( t.add_leaf( rational( 5, 2 ) ) );
  EXPECT_EQ( t.depth(), 0u );
  for ( mask_t z = 0; z < 8; ++z )
    EXPECT_EQ( adt_evaluate( t, z ), rational( 5, 2 ) );
}

TEST( AndTree, SimulatorUsesOneZeroPerQuery )
{
  std::mt19937_64 rng( 19 );
  for ( int rep = 0; rep < 20; ++rep )
  {
    uint32_t const n = 2 + rep % 7;
    /* random ADT of depth 3 */
    and_decision_tree a( n );
    std::function<std::size_t( int )> grow = [&]( int d ) -> std::size_t {
      if ( d == 0 )
        return a.add_leaf( rational( static_cast<int>( rng() % 2 ) ) );
      auto const q = ( rng() & full_mask( n ) ) | 1;
      auto const f0 = grow( d - 1 );
      auto const f1 = grow( d - 1 );
      return a.add_query( q, f0, f1 );
    };
    a.set_root( grow( 3 ) );
    auto const dt = adt_to_dt( a );
    ASSERT_TRUE( dt.well_formed() );
    ASSERT_LE( dt.zero_depth(), a.depth() );
    for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
      ASSERT_EQ( dt.evaluate( z ), adt_evaluate( a, z ) );
  }
}

TEST( TreeText, RoundTrip )
{
  auto const f = generate( { family_kind::majority, 4 } );
  auto const t = build_zero_dt( f );
  auto const text = format_tree( t );
  auto const parsed = parse_tree<decision_tree>( text, 4 );
  EXPECT_EQ( format_tree( parsed ), text );
  EXPECT_TRUE( tree_computes( parsed, f ) );

  auto const a = zero_dt_to_adt( t );
  auto const atext = format_tree( a );
  auto const aparsed = parse_tree<and_decision_tree>( atext, 4 );
  EXPECT_EQ( format_tree( aparsed ), atext );
  EXPECT_TRUE( adt_verify( aparsed, f ) );

  EXPECT_EQ( format_tree( parse_tree<and_decision_tree>( "leaf=-1/2", 2 ) ), "leaf=-1/2" );
  EXPECT_EQ( format_tree( parse_tree<and_decision_tree>( "(query={1,2} 0:leaf=0 1:leaf=1)", 2 ) ), "(query={1,2} 0:leaf=0 1:leaf=1)" );
  EXPECT_THROW( parse_tree<decision_tree>( "(query={1,2} 0:leaf=0 1:leaf=1)", 2 ), parse_error );
  EXPECT_THROW( parse_tree<decision_tree>( "(query={1} 0:leaf=0 1:(query={1} 0:leaf=0 1:leaf=1))", 2 ), parse_error );
  EXPECT_THROW( parse_tree<and_decision_tree>( "(query={1} 0:leaf=0", 2 ), parse_error );
  EXPECT_THROW( parse_tree<and_decision_tree>( "leaf=1 extra", 2 ), parse_error );
}

TEST( Threshold, ExactErrors )
{
  for ( uint32_t n = 2; n <= 8; ++n )
  {
    auto const by_weight = threshold_error_by_weight( n );
    for ( uint32_t w = 0; w <= n; ++w )
    {
      if ( w + 1 >= n )
        EXPECT_EQ( by_weight[w], 0 ) << n << " " << w;
      else
        EXPECT_LE( by_weight[w], rational( 1, 2 ) ) << n << " " << w;
    }
    EXPECT_LE( threshold_error( n ), rational( 1, 2 ) );
  }
}

TEST( Threshold, TwoZerosOnFour )
{
  /* zeros at i, j: q_S(x) = 1 iff both zeros on the same side of S, 8 of 16 subsets */
  mask_t const x = 0b0011;
  uint64_t wrong = 0;
  randomized_and_dt const r( 4, 0 );
  for ( mask_t s = 0; s < 16; ++s )
  {
    bool const same_side = ( ( s >> 2 ) & 1u ) == ( ( s >> 3 ) & 1u );
    EXPECT_EQ( r.query_value( s, x ), same_side );
    EXPECT_EQ( adt_evaluate( r.tree_for( s ), x ), same_side ? 1 : 0 );
    wrong += same_side;
  }
  EXPECT_EQ( threshold_error_at( 4, x ), rational( wrong, 16 ) );
  EXPECT_EQ( threshold_error_at( 4, x ), rational( 1, 2 ) );
  EXPECT_EQ( threshold_error_at( 4, 0b1111 ), 0 );
  EXPECT_EQ( threshold_error_at( 4, 0b0111 ), 0 );
}

TEST( Threshold, SeededRunsAreReproducible )
{
  auto a = threshold_randomized_adt( 6, 99 );
  auto b = threshold_randomized_adt( 6, 99 );
  for ( int i = 0; i < 20; ++i )
    EXPECT_EQ( a.sample_subset(), b.sample_subset() );
  auto c = threshold_randomized_adt( 6, 5 );
  for ( int i = 0; i < 50; ++i )
    EXPECT_TRUE( c.run( 0b111110 ) );
  EXPECT_THROW( threshold_randomized_adt( 1, 0 ), std::invalid_argument );
}
