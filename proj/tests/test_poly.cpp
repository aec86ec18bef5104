#include <random>

#include <gtest/gtest.h>

#include <andlift/bitvec.hpp>
#include <andlift/function_io.hpp>
#include <andlift/poly.hpp>

using namespace andlift;

namespace
{

truth_table bool_table( uint32_t n, uint64_t bits )
{
  return truth_table::tabulate( n, [&]( mask_t z ) { return ( bits >> z ) & 1u; } );
}

multilinear_poly or2() { return mobius_invert( bool_table( 2, 0b1110 ) ); }

} // namespace

TEST( BitVec, SetOperations )
{
  auto const a = bitvec::from_indices( 5, { 1, 3 } );
  auto const b = bitvec::from_indices( 5, { 3, 4 } );
  EXPECT_EQ( ( a | b ).bits(), 0b01101u );
  EXPECT_EQ( ( a & b ).bits(), 0b00100u );
  EXPECT_EQ( ( a - b ).bits(), 0b00001u );
  EXPECT_TRUE( ( a & b ).subset_of( a ) );
  EXPECT_FALSE( a.disjoint( b ) );
  EXPECT_EQ( a.complement().bits(), 0b11010u );
  EXPECT_EQ( format_set( a ), "{1,3}" );
  EXPECT_EQ( parse_set( "{ 3, 1 }", 5 ), a.bits() );
  EXPECT_EQ( parse_set( "{}", 5 ), 0u );
  EXPECT_THROW( parse_set( "{6}", 5 ), parse_error );
  EXPECT_THROW( parse_set( "{1,1}", 5 ), parse_error );
  EXPECT_THROW( bitvec::from_indices( 3, { 4 } ), std::invalid_argument );
}

TEST( Rational, LowestTermsAndParsing )
{
  rational const q = parse_rational( "6/4" );
  EXPECT_EQ( to_fraction_string( q ), "3/2" );
  EXPECT_EQ( to_fraction_string( parse_rational( "-2" ) ), "-2/1" );
  EXPECT_EQ( to_display_string( rational( 4, 2 ) ), "2" );
  EXPECT_THROW( parse_rational( "1/0" ), parse_error );
  EXPECT_THROW( parse_rational( "x" ), parse_error );
}

TEST( Mobius, Or2 )
{
  auto const p = or2();
  EXPECT_EQ( p.sparsity(), 3u );
  EXPECT_EQ( p.coefficient( 0b01 ), 1 );
  EXPECT_EQ( p.coefficient( 0b10 ), 1 );
  /* f(11) - f(10) - f(01) + f(00) */
  EXPECT_EQ( p.coefficient( 0b11 ), 1 - 1 - 1 + 0 );
  for ( mask_t z = 0; z < 4; ++z )
    EXPECT_EQ( evaluate( p, z ), z != 0 ? 1 : 0 );
}

TEST( Mobius, ConstantsAndAnd )
{
  EXPECT_EQ( mobius_invert( bool_table( 3, 0 ) ).sparsity(), 0u );
  auto const and3 = mobius_invert( bool_table( 3, uint64_t{ 1 } << 7 ) );
  ASSERT_EQ( and3.sparsity(), 1u );
  EXPECT_EQ( and3.coefficient( 0b111 ), 1 );
}

TEST( Mobius, RoundTripAllBooleanUpTo3 )
{
  for ( uint32_t n = 0; n <= 3; ++n )
    for ( uint64_t bits = 0; bits < ( uint64_t{ 1 } << ( 1u << n ) ); ++bits )
    {
      auto const t = bool_table( n, bits );
      auto const p = mobius_invert( t );
      for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
        ASSERT_EQ( evaluate( p, z ), t[z] );
      for ( auto const& [s, c] : p.terms() )
        ASSERT_TRUE( is_integer( c ) );
    }
}

TEST( Mobius, RoundTripRandomRational )
{
  std::mt19937_64 rng( 11 );
  std::uniform_int_distribution<int> num( -20, 20 ), den( 1, 9 );
  for ( int rep = 0; rep < 20; ++rep )
  {
    uint32_t const n = 1 + rep % 8;
    auto const t = truth_table::tabulate( n, [&]( mask_t ) { return rational( num( rng ), den( rng ) ); } );
    auto const p = mobius_invert( t );
    EXPECT_EQ( to_truth_table( p ), t );
  }
}

TEST( Mobius, FastAgreesWithNaive )
{
  std::mt19937_64 rng( 3 );
  for ( uint32_t n = 0; n <= 4; ++n )
    for ( int rep = 0; rep < 30; ++rep )
    {
      auto const t = truth_table::tabulate( n, [&]( mask_t ) { return rational( static_cast<int>( rng() % 7 ) - 3 ); } );
      EXPECT_EQ( mobius_invert( t ), mobius_invert_naive( t ) );
    }
}

TEST( Mobius, CapacityGuard )
{
  std::vector<rational> values;
  EXPECT_THROW( truth_table( 30, values ), capacity_error );
}

TEST( Evaluate, Examples )
{
  EXPECT_EQ( evaluate( or2(), bitvec::from_indices( 2, { 1 } ) ), 1 );
  multilinear_poly p( 3, { { 0, rational( 5, 2 ) }, { 0b11, rational( 1 ) } } );
  EXPECT_EQ( evaluate( p, 0 ), rational( 5, 2 ) );
  /* majority on 4 variables, 1[|z| >= 2] */
  auto const maj = mobius_invert( truth_table::tabulate( 4, []( mask_t z ) { return 2 * popcount( z ) >= 4; } ) );
  EXPECT_EQ( evaluate( maj, bitvec::from_indices( 4, { 1, 2 } ) ), 1 );
}

TEST( Restrict, Ones )
{
  multilinear_poly x1x2( 2, { { 0b11, rational( 1 ) } } );
  auto const r = restrict_ones( x1x2, 0b01 );
  EXPECT_EQ( r, multilinear_poly( 2, { { 0b10, rational( 1 ) } } ) );
  auto const c = restrict_ones( or2(), 0b01 );
  EXPECT_TRUE( c.is_constant() );
  EXPECT_EQ( c.constant_term(), 1 );
  EXPECT_EQ( restrict_ones( or2(), 0 ), or2() );
}

TEST( Restrict, OnesMatchesEvaluationExhaustively )
{
  std::mt19937_64 rng( 5 );
  for ( uint32_t n = 1; n <= 6; ++n )
    for ( int rep = 0; rep < 5; ++rep )
    {
      auto const p = mobius_invert( truth_table::tabulate( n, [&]( mask_t ) { return rational( static_cast<int>( rng() % 5 ) - 2 ); } ) );
      for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
      {
        auto const r = restrict_ones( p, z );
        EXPECT_LE( r.sparsity(), p.sparsity() );
        for ( mask_t w = 0; w < ( mask_t{ 1 } << n ); ++w )
          if ( ( w & z ) == 0 )
            ASSERT_EQ( evaluate( r, w ), evaluate( p, z | w ) );
      }
      for ( uint32_t i = 0; i < n; ++i )
        EXPECT_LE( restrict_zero( p, i ).mon_count(), p.mon_count() );
    }
}

TEST( Restrict, Zero )
{
  EXPECT_EQ( restrict_zero( or2(), 0 ), multilinear_poly( 2, { { 0b10, rational( 1 ) } } ) );
  multilinear_poly x1x2( 2, { { 0b11, rational( 1 ) } } );
  EXPECT_EQ( restrict_zero( x1x2, 1 ).sparsity(), 0u );
}

TEST( L1Norm, Examples )
{
  EXPECT_EQ( l1_norm( or2() ), 3 );
  EXPECT_EQ( l1_norm( multilinear_poly( 4 ) ), 0 );
  auto const th = mobius_invert( truth_table::tabulate( 3, []( mask_t z ) { return popcount( z ) >= 2; } ) );
  EXPECT_EQ( th.sparsity(), 4u );
  rational manual = 0;
  for ( auto const& [s, c] : th.terms() )
    manual += c < 0 ? -c : c;
  EXPECT_EQ( l1_norm( th ), manual );
  EXPECT_GE( l1_norm( th ), rational( th.sparsity() ) );
}

TEST( Poly, ZeroCoefficientsAreDropped )
{
  multilinear_poly p( 2 );
  p.add_term( 0b01, 1 );
  p.add_term( 0b01, -1 );
  EXPECT_EQ( p.sparsity(), 0u );
  EXPECT_THROW( p.add_term( 0b100, 1 ), std::invalid_argument );
}

TEST( Poly, ProductReducesSquares )
{
  auto const sq = or2() * or2();
  EXPECT_EQ( sq, or2() );
}

TEST( FunctionFile, ParsesTableAndPoly )
{
  auto const a = parse_function( "# or\nn=2\ntable\n0 1 1 1\n" );
  auto const b = parse_function( "n=2\npoly\n{1}: 1\n{2}: 1\n{1,2}: -1 # cross term\n" );
  EXPECT_EQ( a, or2() );
  EXPECT_EQ( b, or2() );
  EXPECT_EQ( parse_function( format_poly( or2() ) ), or2() );
  EXPECT_EQ( parse_function( format_table( to_truth_table( or2() ) ) ), or2() );
}

TEST( FunctionFile, ErrorsCarryLineNumbers )
{
  try
  {
    parse_function( "n=2\ntable\n0 1 x 1\n" );
    FAIL();
  }
  catch ( parse_error const& e )
  {
    EXPECT_EQ( e.line(), 3u );
  }
  EXPECT_THROW( parse_function( "n=2\ntable\n0 1 1\n" ), parse_error );
  EXPECT_THROW( parse_function( "n=2\npoly\n{1}: 1\n{1}: 2\n" ), parse_error );
  EXPECT_THROW( parse_function( "table\n" ), parse_error );
  EXPECT_THROW( parse_function( "n=30\ntable\n" ), capacity_error );
}
