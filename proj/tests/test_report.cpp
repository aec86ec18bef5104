#include <gtest/gtest.h>

#include <andlift/function_io.hpp>
#include <andlift/report.hpp>
#include <andlift/verify.hpp>

using namespace andlift;

namespace
{

multilinear_poly majority4()
{
  return mobius_invert( truth_table::tabulate( 4, []( mask_t z ) { return popcount( z ) >= 2 ? 1 : 0; } ) );
}

} // namespace

TEST( report, local_majority_fields )
{
  auto const j = to_json( local_measures( majority4(), 0 ) );
  EXPECT_EQ( j["point"], "{}" );
  EXPECT_EQ( j["mbs"], 2 );
  EXPECT_EQ( j["fmbs"], "2/1" );
  EXPECT_EQ( j["fhsc"], "2/1" );
  EXPECT_EQ( j["hsc"], 3 );
  EXPECT_TRUE( j.contains( "witnesses" ) );
}

TEST( report, round_trip_local_and_global )
{
  auto const f = majority4();
  for ( mask_t z : { mask_t{ 0 }, mask_t{ 1 }, mask_t{ 6 } } )
  {
    auto const r = local_measures( f, z );
    auto const back = measure_report_from_json( json::parse( to_json( r ).dump() ) );
    EXPECT_EQ( back, r );
  }
  auto const g = global_measures( f );
  EXPECT_EQ( measure_report_from_json( json::parse( to_json( g ).dump( 2 ) ) ), g );
}

TEST( report, round_trip_every_three_bit_function )
{
  for ( uint32_t bits = 0; bits < 256; ++bits )
  {
    auto const f = mobius_invert( truth_table::tabulate( 3, [bits]( mask_t z ) { return ( bits >> z ) & 1; } ) );
    auto const g = global_measures( f );
    ASSERT_EQ( measure_report_from_json( json::parse( to_json( g ).dump() ) ), g ) << bits;
  }
}

TEST( report, constant_is_all_zero )
{
  auto const j = to_json( local_measures( constant_poly( 3, 1 ), 0 ) );
  EXPECT_EQ( j["mbs"], 0 );
  EXPECT_EQ( j["fmbs"], "0/1" );
  EXPECT_EQ( j["hsc"], 0 );
}

TEST( report, malformed_input_is_a_parse_error )
{
  auto j = to_json( local_measures( majority4(), 0 ) );
  j.erase( "hsc" );
  EXPECT_THROW( measure_report_from_json( j ), parse_error );
  auto k = to_json( local_measures( majority4(), 0 ) );
  k["fmbs"] = 2;
  EXPECT_THROW( measure_report_from_json( k ), parse_error );
  auto c = to_json( local_measures( majority4(), 0 ) );
  c["fhsc"] = "5/2";
  EXPECT_THROW( measure_report_from_json( c ), invariant_error );
}

TEST( report, pipeline_and_tree )
{
  auto const f = majority4();
  and_decision_tree adt( 4 );
  auto const p = logrank_pipeline( f, &adt );
  auto const j = to_json( p );
  EXPECT_EQ( j["spar"], p.spar );
  EXPECT_TRUE( j["ok"].get<bool>() );
  auto const tj = tree_json( adt );
  auto const parsed = parse_tree<and_decision_tree>( tj["tree"].get<std::string>(), 4 );
  EXPECT_EQ( format_tree( parsed ), tj["tree"].get<std::string>() );
}

TEST( report, dichotomy_branches )
{
  set_system const disjoint( 6, { 0b11, 0b1100, 0b110000 } );
  auto const d = dichotomy( disjoint, 3 );
  EXPECT_EQ( to_json( d, disjoint )["branch"], "disjoint_sets" );
  auto const h = dichotomy( disjoint, 4 );
  auto const hj = to_json( h, disjoint );
  EXPECT_EQ( hj["branch"], "hitting_set" );
  EXPECT_LE( hj["size"].get<std::size_t>(), hj["bound"].get<std::size_t>() );
}

TEST( report, sampled_verification_is_deterministic )
{
  harness_options const opts{ 5, false, 12, 7 };
  auto strip = []( verification_report const& r ) {
    auto j = to_json( r );
    j.erase( "seconds" );
    for ( auto& c : j["checks"] )
      c.erase( "seconds" );
    return j;
  };
  auto const a = run_verification( opts );
  auto const b = run_verification( opts );
  EXPECT_TRUE( a.ok() );
  EXPECT_EQ( strip( a ), strip( b ) );
  EXPECT_EQ( strip( a )["functions"], 12 );

  auto other = opts;
  other.seed = 8;
  EXPECT_NE( strip( run_verification( other ) ), strip( a ) );
}

TEST( report, verification_guards )
{
  EXPECT_THROW( run_verification( { 5, true, 0, 1 } ), capacity_error );
  EXPECT_THROW( run_verification( { 11, false, 1, 1 } ), capacity_error );
}

TEST( report, checks_either_assert_or_report )
{
  auto const r = run_verification( { 2, true, 0, 3 } );
  for ( auto const& c : r.checks )
    EXPECT_EQ( c.asserting, !c.ratio.has_value() ) << c.name;
  EXPECT_NE( format_report( r ).find( "chain" ), std::string::npos );
}
