#include <optional>
#include <random>

#include <gtest/gtest.h>

#include <andlift/cover.hpp>
#include <andlift/lp.hpp>
#include <andlift/set_system.hpp>
#ifndef REPS
#define REPS 500
#endif

using namespace andlift;

namespace
{

set_system fano()
{
  /* lines of PG(2,2) on points 1..7 */
  return parse_set_system( "n=7\n{1,2,3}\n{1,4,5}\n{1,6,7}\n{2,4,6}\n{2,5,7}\n{3,4,7}\n{3,5,6}\n" );
}

set_system pairs_of( uint32_t n )
{
  std::vector<mask_t> sets;
  for ( uint32_t i = 0; i < n; ++i )
    for ( uint32_t j = i + 1; j < n; ++j )
      sets.push_back( ( mask_t{ 1 } << i ) | ( mask_t{ 1 } << j ) );
  return set_system( n, sets );
}

set_system singletons( uint32_t n )
{
  std::vector<mask_t> sets;
  for ( uint32_t i = 0; i < n; ++i )
    sets.push_back( mask_t{ 1 } << i );
  return set_system( n, sets );
}

/* Solves a square rational system; empty when singular. */
std::optional<std::vector<rational>> solve_square( std::vector<std::vector<rational>> a, std::vector<rational> b )
{
  auto const n = a.size();
  for ( std::size_t c = 0; c < n; ++c )
  {
    std::size_t p = c;
    while ( p < n && a[p][c] == 0 )
      ++p;
    if ( p == n )
      return std::nullopt;
    std::swap( a[p], a[c] );
    std::swap( b[p], b[c] );
    for ( std::size_t r = 0; r < n; ++r )
    {
      if ( r == c || a[r][c] == 0 )
        continue;
      auto const f = a[r][c] / a[c][c];
      for ( std::size_t k = c; k < n; ++k )
        a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<rational> x( n );
  for ( std::size_t i = 0; i < n; ++i )
    x[i] = b[i] / a[i][i];
  return x;
}

/*
  Vertex enumeration for min 1.b s.t. A b >= 1, b >= 0: every basic feasible
  solution makes n of the m + n constraints tight; try all choices.
*/
rational cover_lp_by_vertices( set_system const& s )
{
  auto const n = s.ground_size();
  std::vector<std::vector<rational>> rows;
  std::vector<rational> rhs;
  for ( auto set : s.sets() )
  {
    std::vector<rational> row( n );
    for ( uint32_t i = 0; i < n; ++i )
      row[i] = ( set >> i ) & 1u;
    rows.push_back( row );
    rhs.push_back( 1 );
  }
  for ( uint32_t i = 0; i < n; ++i )
  {
    std::vector<rational> row( n );
    row[i] = 1;
    rows.push_back( row );
    rhs.push_back( 0 );
  }
  std::optional<rational> best;
  auto const total = rows.size();
  for ( uint64_t pick = 0; pick < ( uint64_t{ 1 } << total ); ++pick )
  {
    if ( static_cast<uint32_t>( __builtin_popcountll( pick ) ) != n )
      continue;
    std::vector<std::vector<rational>> a;
    std::vector<rational> b;
    for ( std::size_t k = 0; k < total; ++k )
      if ( ( pick >> k ) & 1u )
      {
        a.push_back( rows[k] );
        b.push_back( rhs[k] );
      }
    auto const x = solve_square( a, b );
    if ( !x )
      continue;
    bool feasible = true;
    for ( std::size_t k = 0; k < total && feasible; ++k )
    {
      rational lhs = 0;
      for ( uint32_t i = 0; i < n; ++i )
        lhs += rows[k][i] * ( *x )[i];
      feasible = lhs >= rhs[k];
    }
    if ( !feasible )
      continue;
    rational value = 0;
    for ( auto const& v : *x )
      value += v;
    if ( !best || value < *best )
      best = value;
  }
  return *best;
}

set_system random_system( std::mt19937_64& rng, uint32_t n, std::size_t max_sets )
{
  std::uniform_int_distribution<std::size_t> count( 1, std::min<std::size_t>( max_sets, full_mask( n ) ) );
  std::vector<mask_t> sets;
  auto const r = count( rng );
  while ( sets.size() < r )
  {
    auto const s = rng() & full_mask( n );
    if ( s != 0 && std::find( sets.begin(), sets.end(), s ) == sets.end() )
      sets.push_back( s );
  }
  return set_system( n, sets );
}

} // namespace

TEST( Simplex, TinyProblems )
{
  lp_problem lp;
  lp.objective = { 1 };
  lp.add_row( { 1 }, row_relation::less_equal, 3 );
  auto const r = simplex_solve( lp );
  ASSERT_EQ( r.status, lp_status::optimal );
  EXPECT_EQ( r.value, 3 );
  EXPECT_FALSE( certificate_failure( lp, r ) );

  lp_problem bad;
  bad.objective = { 1 };
  bad.add_row( { 1 }, row_relation::less_equal, -1 );
  EXPECT_EQ( simplex_solve( bad ).status, lp_status::infeasible );

  lp_problem unbounded;
  unbounded.objective = { 1, 0 };
  unbounded.add_row( { -1, 1 }, row_relation::less_equal, 1 );
  EXPECT_EQ( simplex_solve( unbounded ).status, lp_status::unbounded );
}

TEST( Simplex, EqualityAndMixedRows )
{
  /* min x + 2y s.t. x + y = 4, x - y >= -2, x <= 3 */
  lp_problem lp;
  lp.sense = objective_sense::minimize;
  lp.objective = { 1, 2 };
  lp.add_row( { 1, 1 }, row_relation::equal, 4 );
  lp.add_row( { 1, -1 }, row_relation::greater_equal, -2 );
  lp.add_row( { 1, 0 }, row_relation::less_equal, 3 );
  auto const r = simplex_solve( lp );
  ASSERT_EQ( r.status, lp_status::optimal );
  EXPECT_EQ( r.value, 5 ); /* x = 3, y = 1 */
  EXPECT_EQ( r.primal[0], 3 );
  EXPECT_EQ( r.primal[1], 1 );
}

TEST( Simplex, FanoMatchesVertexEnumeration )
{
  auto const oracle = cover_lp_by_vertices( fano() );
  EXPECT_EQ( oracle, rational( 7, 3 ) );
  EXPECT_EQ( fractional_cover( fano() ).value, oracle );
}

TEST( Fractional, Examples )
{
  EXPECT_EQ( fractional_cover( pairs_of( 4 ) ).value, 2 );
  EXPECT_EQ( fractional_pack( pairs_of( 4 ) ).value, 2 );
  EXPECT_EQ( fractional_cover( set_system( 3, { 0b111 } ) ).value, 1 );
  EXPECT_EQ( fractional_pack( singletons( 5 ) ).value, 5 );

  auto const lines_of_fano = fano();
  auto const pack = fractional_pack( lines_of_fano );
  EXPECT_EQ( pack.value, rational( 7, 3 ) );
  /* uniform 1/3 per line is feasible and attains 7/3 since each point lies on 3 lines */
  for ( uint32_t i = 0; i < 7; ++i )
  {
    int lines = 0;
    for ( auto l : lines_of_fano.sets() )
      lines += ( l >> i ) & 1u;
    EXPECT_EQ( lines, 3 );
  }
}

TEST( Fractional, RandomStrongDualityAgainstVertexOracle )
{
  std::mt19937_64 rng( 2024 );
  for ( int rep = 0; rep < REPS; ++rep )
  {
    uint32_t const n = 1 + rng() % 10;
    auto const s = random_system( rng, n, 12 );
    auto const cover = fractional_cover( s );
    auto const pack = fractional_pack( s );
    ASSERT_EQ( cover.value, pack.value );
    ASSERT_FALSE( certificate_failure( [&] {
      lp_problem lp;
      lp.sense = objective_sense::minimize;
      lp.objective.assign( n, rational( 1 ) );
      for ( auto set : s.sets() )
      {
        std::vector<rational> row( n );
        for ( uint32_t i = 0; i < n; ++i )
          row[i] = ( set >> i ) & 1u;
        lp.add_row( row, row_relation::greater_equal, 1 );
      }
      return lp;
    }(),
                                       cover ) );
    if ( n + s.size() <= 14 )
      ASSERT_EQ( cover.value, cover_lp_by_vertices( s ) );

    auto const ip = integral_pack( s );
    auto const ic = integral_cover( s );
    ASSERT_LE( rational( ip.size() ), pack.value );
    ASSERT_LE( cover.value, rational( ic.size() ) );
    ASSERT_EQ( ip.size(), exhaustive_pack( s ).size() );
    ASSERT_EQ( ic.size(), exhaustive_cover( s ).size() );
    ASSERT_TRUE( verify_packing( s, ip ) );
    ASSERT_TRUE( verify_hitting_set( s, ic ) );

    auto const g = greedy_cover( s );
    ASSERT_TRUE( verify_hitting_set( s, g.cover ) );
    ASSERT_LE( g.cover.size(), greedy_size_bound( cover.value, s.size() ) );
  }
}

TEST( Fractional, CoverWeightsCanBeClipped )
{
  /* replacing b by min(b, 1) keeps feasibility and never raises the value */
  std::mt19937_64 rng( 9 );
  for ( int rep = 0; rep < 100; ++rep )
  {
    auto const s = random_system( rng, 6, 8 );
    auto const r = fractional_cover( s );
    std::vector<rational> clipped;
    rational value = 0;
    for ( auto const& b : r.primal )
    {
      clipped.push_back( std::min( b, rational( 1 ) ) );
      value += clipped.back();
    }
    EXPECT_EQ( value, r.value );
    for ( auto set : s.sets() )
    {
      rational lhs = 0;
      for ( uint32_t i = 0; i < 6; ++i )
        if ( ( set >> i ) & 1u )
          lhs += clipped[i];
      EXPECT_GE( lhs, 1 );
    }
  }
}

TEST( Integral, Examples )
{
  EXPECT_EQ( integral_pack( fano() ).size(), 1u );
  EXPECT_EQ( integral_pack( singletons( 6 ) ).size(), 6u );
  /* and_or with two clauses: minimal sets {x1,x2},{x1,y2},{y1,x2},{y1,y2} */
  set_system const and_or( 4, { 0b0011, 0b1001, 0b0110, 0b1100 } );
  EXPECT_EQ( integral_pack( and_or ).size(), 2u );
  EXPECT_EQ( integral_cover( pairs_of( 4 ) ).size(), 3u );
  EXPECT_EQ( integral_cover( set_system( 3, { 0b111 } ) ).size(), 1u );
  EXPECT_EQ( integral_cover( fano() ).size(), 3u );
  EXPECT_EQ( exhaustive_cover( fano() ).size(), 3u );
}

TEST( Greedy, Examples )
{
  auto const g = greedy_cover( fano() );
  EXPECT_GE( g.cover.size(), 3u );
  EXPECT_LE( g.cover.size(), greedy_size_bound( rational( 7, 3 ), 7 ) );
  EXPECT_EQ( greedy_cover( singletons( 5 ) ).cover.size(), 5u );

  auto const nested = greedy_cover( set_system( 3, { 0b001, 0b011, 0b111 } ) );
  ASSERT_EQ( nested.steps.size(), 1u );
  EXPECT_EQ( nested.steps[0].index, 0u );
  EXPECT_EQ( nested.steps[0].remaining, 0u );
}

TEST( Bounds, FloorAndCeilForms )
{
  /* 7/3 ln 7 = 4.54..., 2 * that = 9.08... */
  EXPECT_EQ( greedy_size_bound( rational( 7, 3 ), 7 ), 5u );
  EXPECT_EQ( zero_depth_bound( rational( 7, 3 ), 7 ), 11u );
  EXPECT_EQ( greedy_size_bound( rational( 2 ), 1 ), 1u );
}

TEST( SetSystem, Validation )
{
  EXPECT_THROW( set_system( 3, { 0 } ), std::invalid_argument );
  EXPECT_THROW( set_system( 3, { 1, 1 } ), std::invalid_argument );
  EXPECT_THROW( set_system( 3, { 8 } ), std::invalid_argument );
  EXPECT_THROW( parse_set_system( "{1}\n" ), parse_error );
  EXPECT_EQ( parse_set_system( format_set_system( fano() ) ), fano() );
}
