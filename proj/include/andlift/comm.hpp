/*!
  \file comm.hpp
  \brief AND-functions f(x & y): communication matrix, exact rank, protocols

  Rank is computed over the rationals by elimination modulo word-size primes.
  A single prime gives a lower bound; primes are added until their product
  exceeds a Hadamard bound on every minor, at which point the largest modular
  rank is the rational rank. Full modular rank ends the search early.
  Bareiss fraction-free elimination over big integers is kept as a
  cross-check for small matrices.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmp.h>

#include "bitvec.hpp"
#include "cover.hpp"
#include "errors.hpp"
#include "measures.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "trees.hpp"

namespace andlift
{

/*! \brief M[x][y] = f(x & y), rows and columns in truth-table index order. */
class comm_matrix
{
public:
  explicit comm_matrix( multilinear_poly const& f )
      : n_( f.num_vars() ), table_( ( require_capacity( f.num_vars(), limits::comm_matrix, "communication matrix" ), to_truth_table( f ) ) )
  {
  }

  uint32_t num_vars() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{ 1 } << n_; }
  rational const& operator()( mask_t x, mask_t y ) const { return table_[x & y]; }

  /*! \brief Rows scaled to integers (row scaling preserves rank). */
  std::vector<std::vector<integer>> integer_rows() const
  {
    std::vector<std::vector<integer>> rows( dimension(), std::vector<integer>( dimension() ) );
    for ( mask_t x = 0; x < dimension(); ++x )
    {
      integer scale = 1;
      for ( mask_t y = 0; y < dimension(); ++y )
        scale = boost::multiprecision::lcm( scale, denominator_of( ( *this )( x, y ) ) );
      for ( mask_t y = 0; y < dimension(); ++y )
      {
        auto const& q = ( *this )( x, y );
        rows[x][y] = numerator_of( q ) * ( scale / denominator_of( q ) );
      }
    }
    return rows;
  }

private:
  uint32_t n_;
  truth_table table_;
};

namespace detail
{

inline uint64_t mul_mod( uint64_t a, uint64_t b, uint64_t p )
{
  return static_cast<uint64_t>( static_cast<unsigned __int128>( a ) * b % p );
}

inline uint64_t pow_mod( uint64_t a, uint64_t e, uint64_t p )
{
  uint64_t r = 1;
  for ( ; e != 0; e >>= 1 )
  {
    if ( e & 1 )
      r = mul_mod( r, a, p );
    a = mul_mod( a, a, p );
  }
  return r;
}

/* primes just above 2^62, produced with GMP and cached */
inline uint64_t rank_prime( std::size_t i )
{
  static std::vector<uint64_t> primes;
  while ( primes.size() <= i )
  {
    mpz_t cur;
    mpz_init_set_ui( cur, primes.empty() ? ( uint64_t{ 1 } << 62 ) : primes.back() );
    mpz_nextprime( cur, cur );
    ensure( mpz_probab_prime_p( cur, 50 ) > 0 && mpz_sizeinbase( cur, 2 ) <= 63, "rank prime generation" );
    primes.push_back( mpz_get_ui( cur ) );
    mpz_clear( cur );
  }
  return primes[i];
}

inline std::size_t rank_mod_p( std::vector<std::vector<integer>> const& rows, uint64_t p )
{
  if ( rows.empty() )
    return 0;
  auto const cols = rows.front().size();
  integer const modulus = p;
  std::vector<std::vector<uint64_t>> a( rows.size(), std::vector<uint64_t>( cols ) );
  for ( std::size_t i = 0; i < rows.size(); ++i )
    for ( std::size_t j = 0; j < cols; ++j )
    {
      integer r = rows[i][j] % modulus;
      if ( r < 0 )
        r += modulus;
      a[i][j] = r.convert_to<uint64_t>();
    }

  std::size_t rank = 0;
  for ( std::size_t col = 0; col < cols && rank < a.size(); ++col )
  {
    auto pivot = rank;
    while ( pivot < a.size() && a[pivot][col] == 0 )
      ++pivot;
    if ( pivot == a.size() )
      continue;
    std::swap( a[pivot], a[rank] );
    auto const inv = pow_mod( a[rank][col], p - 2, p );
    for ( auto j = col; j < cols; ++j )
      a[rank][j] = mul_mod( a[rank][j], inv, p );
    for ( auto i = rank + 1; i < a.size(); ++i )
    {
      auto const factor = a[i][col];
      if ( factor == 0 )
        continue;
      for ( auto j = col; j < cols; ++j )
      {
        auto const sub = mul_mod( factor, a[rank][j], p );
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

/* log2 of prod_i max(1, ||row_i||_2), an upper bound on log2 |minor| */
inline double hadamard_log2( std::vector<std::vector<integer>> const& rows )
{
  double total = 0;
  for ( auto const& row : rows )
  {
    integer sq = 0;
    for ( auto const& v : row )
      sq += v * v;
    if ( sq > 1 )
      total += 0.5 * std::log2( sq.convert_to<double>() );
  }
  return total;
}

inline std::vector<std::vector<integer>> distinct_nonzero_rows( std::vector<std::vector<integer>> rows )
{
  std::set<std::vector<integer>> seen;
  std::vector<std::vector<integer>> out;
  for ( auto& r : rows )
  {
    if ( std::all_of( r.begin(), r.end(), []( integer const& v ) { return v == 0; } ) )
      continue;
    if ( seen.insert( r ).second )
      out.push_back( std::move( r ) );
  }
  return out;
}

} // namespace detail

/*! \brief Exact rank over Q of an integer matrix via several primes. */
inline std::size_t rank_multimodular( std::vector<std::vector<integer>> rows )
{
  rows = detail::distinct_nonzero_rows( std::move( rows ) );
  if ( rows.empty() )
    return 0;
  auto const full = std::min( rows.size(), rows.front().size() );
  auto const needed_bits = detail::hadamard_log2( rows ) + 1.0;
  std::size_t best = 0;
  double covered_bits = 0;
  for ( std::size_t i = 0; covered_bits <= needed_bits; ++i )
  {
    auto const p = detail::rank_prime( i );
    best = std::max( best, detail::rank_mod_p( rows, p ) );
    if ( best == full )
      break;
    covered_bits += std::log2( static_cast<double>( p ) );
  }
  return best;
}

/*! \brief Bareiss fraction-free elimination over big integers; cubic with growing entries. */
inline std::size_t rank_bareiss( std::vector<std::vector<integer>> a )
{
  if ( a.empty() )
    return 0;
  auto const cols = a.front().size();
  std::size_t rank = 0;
  integer prev = 1;
  for ( std::size_t col = 0; col < cols && rank < a.size(); ++col )
  {
    auto pivot = rank;
    while ( pivot < a.size() && a[pivot][col] == 0 )
      ++pivot;
    if ( pivot == a.size() )
      continue;
    std::swap( a[pivot], a[rank] );
    for ( auto i = rank + 1; i < a.size(); ++i )
    {
      for ( auto j = col + 1; j < cols; ++j )
        a[i][j] = ( a[rank][col] * a[i][j] - a[i][col] * a[rank][j] ) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

/*! \brief rank of the communication matrix of f(x & y) over Q (n <= comm_matrix guard). */
inline std::size_t comm_rank( multilinear_poly const& f ) { return rank_multimodular( comm_matrix( f ).integer_rows() ); }

inline std::size_t comm_rank_bareiss( multilinear_poly const& f ) { return rank_bareiss( comm_matrix( f ).integer_rows() ); }

/* ---------------------------------------------------------------- protocols */

struct protocol_round
{
  mask_t query{ 0 };
  bool alice{ false };
  bool bob{ false };
};

/*! \brief Alice and Bob each send one bit per AND-tree node on the path. */
struct protocol_transcript
{
  std::vector<protocol_round> rounds;
  rational output{ 0 };

  std::size_t cost() const noexcept { return 2 * rounds.size(); }

  /*! \brief `A:1 B:0 | A:1 B:1 | out=1` */
  std::string format() const
  {
    std::string out;
    for ( auto const& r : rounds )
      out += std::string( "A:" ) + ( r.alice ? "1" : "0" ) + " B:" + ( r.bob ? "1" : "0" ) + " | ";
    return out + "out=" + to_display_string( output );
  }
};

inline protocol_transcript simulate_protocol( and_decision_tree const& t, mask_t x, mask_t y )
{
  protocol_transcript tr;
  auto v = t.root();
  while ( !t.node( v ).leaf )
  {
    auto const& nd = t.node( v );
    protocol_round r{ nd.query, is_subset( nd.query, x ), is_subset( nd.query, y ) };
    tr.rounds.push_back( r );
    v = ( r.alice && r.bob ) ? nd.one_child : nd.zero_child;
  }
  tr.output = t.node( v ).value;
  return tr;
}

struct protocol_check
{
  std::size_t pairs{ 0 };
  std::size_t wrong{ 0 };
  std::size_t max_cost{ 0 };
};

/*! \brief Runs the protocol on all 4^n input pairs against f(x & y). */
inline protocol_check check_protocol( and_decision_tree const& t, multilinear_poly const& f )
{
  auto const n = f.num_vars();
  require_capacity( n, limits::comm_matrix, "protocol check" );
  auto const table = to_truth_table( f );
  protocol_check out;
  for ( mask_t x = 0; x < ( mask_t{ 1 } << n ); ++x )
    for ( mask_t y = 0; y < ( mask_t{ 1 } << n ); ++y )
    {
      auto const tr = simulate_protocol( t, x, y );
      ++out.pairs;
      out.wrong += tr.output != table[x & y];
      out.max_cost = std::max( out.max_cost, tr.cost() );
    }
  return out;
}

/* ------------------------------------------------------------- UDISJ_k */

/*!
  \brief UDISJ_k inside the matrix of f(x & y), from k disjoint flipping blocks at z.

  x(a) = z | OR_{i in a} w_i, y(b) likewise. When a & b is empty the inputs
  meet in z; when a & b = {i} they meet in z | w_i, which flips f.
  UDISJ_k(a,b) = f(x(a) & y(b)) xor c with c = 1 iff f(z) = 0.
*/
struct udisj_embedding
{
  uint32_t k{ 0 };
  mask_t base{ 0 };
  std::vector<mask_t> blocks;
  bool c{ false };

  mask_t x_of( mask_t a ) const
  {
    mask_t out = base;
    for ( auto m = a; m != 0; m &= m - 1 )
      out |= blocks.at( std::countr_zero( m ) );
    return out;
  }
  mask_t y_of( mask_t b ) const { return x_of( b ); }
};

inline udisj_embedding udisj_from_witness( multilinear_poly const& f, block_witness const& w )
{
  if ( w.blocks.empty() || !verify_block_witness( f, w ) )
    throw std::invalid_argument( "udisj_embedding: witness is not a set of disjoint flipping blocks" );
  if ( w.blocks.size() >= max_vars )
    throw capacity_error( "udisj_embedding: too many blocks" );
  auto const fz = evaluate( f, w.point );
  if ( fz != 0 && fz != 1 )
    throw std::invalid_argument( "udisj_embedding: f must be boolean at the base point" );
  for ( auto b : w.blocks )
    if ( auto const v = evaluate( f, w.point | b ); v != 0 && v != 1 )
      throw std::invalid_argument( "udisj_embedding: f must be boolean on the witness" );
  return { static_cast<uint32_t>( w.blocks.size() ), w.point, w.blocks, fz == 0 };
}

inline udisj_embedding udisj_embedding_of( multilinear_poly const& f, mask_t z, packing_witness const& p )
{
  return udisj_from_witness( f, block_witness{ z, p.blocks } );
}

struct udisj_check
{
  std::size_t pairs{ 0 };
  std::size_t violations{ 0 };
};

/*!
  \brief Checks UDISJ_k(a,b) = f(x(a) & y(b)) xor c on every (a,b) with |a & b| <= 1.

  Pairs are enumerated per coordinate (in neither, in a only, in b only),
  optionally with one shared coordinate: 3^k + k 3^(k-1) pairs.
*/
inline udisj_check verify_udisj( multilinear_poly const& f, udisj_embedding const& e )
{
  if ( e.k > 12 )
    throw capacity_error( "verify_udisj: k <= 12" );
  std::unordered_map<mask_t, bool> memo;
  auto value = [&]( mask_t input ) {
    auto it = memo.find( input );
    if ( it == memo.end() )
    {
      auto const v = evaluate( f, input );
      ensure( v == 0 || v == 1, "verify_udisj: f must be boolean on the embedded inputs" );
      it = memo.emplace( input, v == 1 ).first;
    }
    return it->second;
  };

  udisj_check out;
  auto run = [&]( mask_t a, mask_t b ) {
    bool const udisj = ( a & b ) == 0;
    bool const got = value( e.x_of( a ) & e.y_of( b ) ) != e.c;
    ++out.pairs;
    out.violations += got != udisj;
  };

  std::size_t total = 1;
  for ( uint32_t i = 0; i < e.k; ++i )
    total *= 3;
  for ( std::size_t code = 0; code < total; ++code )
  {
    mask_t a = 0, b = 0;
    auto c = code;
    for ( uint32_t i = 0; i < e.k; ++i, c /= 3 )
    {
      if ( c % 3 == 1 )
        a |= mask_t{ 1 } << i;
      else if ( c % 3 == 2 )
        b |= mask_t{ 1 } << i;
    }
    run( a, b );
    for ( uint32_t i = 0; i < e.k; ++i )
    {
      auto const bit = mask_t{ 1 } << i;
      if ( ( ( a | b ) & bit ) == 0 )
        run( a | bit, b | bit );
    }
  }
  return out;
}

/* ------------------------------------------------------------- pipelines */

/*!
  \brief Measures, greedy zero-tree, AND-tree and protocol for one function.

  Fields ending in _bound are the non-asymptotic inequalities checked by the
  pipeline; ratios compare against the asymptotic statements and are only reported.
*/
struct pipeline_report
{
  uint32_t n{ 0 };
  std::size_t spar{ 0 };
  std::size_t mon{ 0 };
  std::optional<std::size_t> rank; /* when n <= comm_matrix guard */
  std::size_t mbs{ 0 };
  rational fmbs{ 0 };
  std::size_t hsc{ 0 };
  rational l1{ 0 };

  std::size_t zero_depth{ 0 };
  std::size_t zero_depth_bound{ 0 };
  std::size_t adt_depth{ 0 };
  std::size_t adt_depth_bound{ 0 };
  bool adt_correct{ false };

  std::optional<protocol_check> protocol; /* when n <= comm_matrix guard */
  std::size_t protocol_cost_bound{ 0 };

  bool spar_within_3d{ false };
  bool l1_within_3d{ false };

  std::optional<double> logrank_ratio; /* adt_depth / (log2 spar)^5 log2 n */
  std::optional<double> lifting_ratio; /* adt_depth / (cost^3 log2 n) */

  /*! \brief All non-asymptotic checks hold. */
  bool ok() const
  {
    bool const protocol_ok = !protocol || ( protocol->wrong == 0 && protocol->max_cost <= protocol_cost_bound );
    bool const rank_ok = !rank || *rank == spar;
    return adt_correct && zero_depth <= zero_depth_bound && adt_depth <= adt_depth_bound && protocol_ok && rank_ok &&
           spar_within_3d && l1_within_3d;
  }
};

inline integer pow3( std::size_t d )
{
  integer r = 1;
  for ( std::size_t i = 0; i < d; ++i )
    r *= 3;
  return r;
}

/*! \brief Which of the expensive matrix-level checks to run; both still obey the comm_matrix guard. */
struct pipeline_options
{
  bool rank{ true };
  bool protocol{ true };
};

inline pipeline_report logrank_pipeline( multilinear_poly const& f, and_decision_tree* adt_out = nullptr,
                                         measure_cache* cache = nullptr, pipeline_options opts = {} )
{
  auto const n = f.num_vars();
  require_capacity( n, limits::enumeration, "logrank_pipeline" );
  pipeline_report r;
  r.n = n;
  r.spar = f.sparsity();
  r.mon = f.mon_count();
  r.l1 = l1_norm( f );
  bool const matrix_ok = n <= capacity_limit( limits::comm_matrix );
  if ( opts.rank && matrix_ok )
    r.rank = comm_rank( f );

  auto const global = global_measures( f, cache );
  r.mbs = global.mbs;
  r.fmbs = global.fmbs;
  r.hsc = global.hsc;

  auto const zdt = build_zero_dt( f );
  auto const adt = zero_dt_to_adt( zdt );
  r.zero_depth = zdt.zero_depth();
  r.zero_depth_bound = zero_depth_bound( global.fhsc, r.spar );
  r.adt_depth = adt.depth();
  r.adt_depth_bound = r.zero_depth * ceil_log2( n + 1 );
  r.adt_correct = adt_verify( adt, f );
  if ( opts.protocol && matrix_ok )
    r.protocol = check_protocol( adt, f );
  r.protocol_cost_bound = 2 * r.adt_depth;

  r.spar_within_3d = integer( r.spar ) <= pow3( r.adt_depth );
  r.l1_within_3d = r.l1 <= rational( pow3( r.adt_depth ) );

  double const log_n = std::log2( static_cast<double>( std::max<uint32_t>( n, 2 ) ) );
  if ( r.spar >= 2 )
    r.logrank_ratio = r.adt_depth / ( std::pow( std::log2( static_cast<double>( r.spar ) ), 5 ) * log_n );
  if ( r.protocol && r.protocol->max_cost > 0 )
    r.lifting_ratio = r.adt_depth / ( std::pow( static_cast<double>( r.protocol->max_cost ), 3 ) * log_n );

  if ( adt_out != nullptr )
    *adt_out = adt;
  return r;
}

/*! \brief Same pipeline; the lifting view compares ADT depth with the constructed protocol's cost. */
inline pipeline_report lifting_report( multilinear_poly const& f, measure_cache* cache = nullptr )
{
  return logrank_pipeline( f, nullptr, cache );
}

} // namespace andlift
