/*!
  \file trees.hpp
  \brief Decision trees with 0-depth accounting and AND-decision trees

  The greedy builder queries, at every node, the variable occurring in the
  most monomials of the current restriction. Setting it to 0 deletes at least
  a 1/FHSC fraction of the monomials, which bounds the number of 0-edges on
  any path. zero_dt_to_adt replaces every run of 1-edges by a binary search
  with AND queries.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bitvec.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace andlift
{

namespace detail
{

/* shared node storage; a query is a variable mask (a single bit for standard trees) */
struct tree_node
{
  bool leaf{ true };
  rational value{ 0 };
  mask_t query{ 0 };
  std::size_t zero_child{ 0 };
  std::size_t one_child{ 0 };

  friend bool operator==( tree_node const&, tree_node const& ) = default;
};

class tree_base
{
public:
  uint32_t num_vars() const noexcept { return n_; }
  std::size_t root() const noexcept { return root_; }
  std::vector<tree_node> const& nodes() const noexcept { return nodes_; }
  tree_node const& node( std::size_t i ) const { return nodes_.at( i ); }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::size_t add_leaf( rational value )
  {
    nodes_.push_back( tree_node{ true, std::move( value ), 0, 0, 0 } );
    return nodes_.size() - 1;
  }

  std::size_t add_internal( mask_t query, std::size_t zero_child, std::size_t one_child )
  {
    if ( zero_child >= nodes_.size() || one_child >= nodes_.size() )
      throw std::invalid_argument( "tree: children must be added before their parent" );
    if ( ( query & ~full_mask( n_ ) ) != 0 )
      throw std::invalid_argument( "tree: query uses a variable outside [n]" );
    nodes_.push_back( tree_node{ false, rational( 0 ), query, zero_child, one_child } );
    return nodes_.size() - 1;
  }

  void set_root( std::size_t r )
  {
    if ( r >= nodes_.size() )
      throw std::invalid_argument( "tree: root out of range" );
    root_ = r;
  }

  /*! \brief Longest root-to-leaf path, in queries. */
  std::size_t depth() const { return nodes_.empty() ? 0 : depth_from( root_ ); }

  /*! \brief Most 0-edges on any root-to-leaf path. */
  std::size_t zero_depth() const { return nodes_.empty() ? 0 : zero_depth_from( root_ ); }

  friend bool operator==( tree_base const&, tree_base const& ) = default;

protected:
  explicit tree_base( uint32_t n ) : n_( n ) {}

  std::size_t depth_from( std::size_t v ) const
  {
    auto const& nd = nodes_[v];
    return nd.leaf ? 0 : 1 + std::max( depth_from( nd.zero_child ), depth_from( nd.one_child ) );
  }

  std::size_t zero_depth_from( std::size_t v ) const
  {
    auto const& nd = nodes_[v];
    return nd.leaf ? 0 : std::max( 1 + zero_depth_from( nd.zero_child ), zero_depth_from( nd.one_child ) );
  }

  uint32_t n_{ 0 };
  std::vector<tree_node> nodes_;
  std::size_t root_{ 0 };
};

} // namespace detail

/*! \brief Standard decision tree: each internal node queries one variable; 0-child first. */
class decision_tree : public detail::tree_base
{
public:
  decision_tree() : tree_base( 0 ) {}
  explicit decision_tree( uint32_t n ) : tree_base( n ) {}

  /*! \brief Adds a node querying 0-based variable `var`. */
  std::size_t add_query( uint32_t var, std::size_t zero_child, std::size_t one_child )
  {
    return add_internal( mask_t{ 1 } << var, zero_child, one_child );
  }

  rational evaluate( mask_t z ) const
  {
    auto v = root_;
    while ( !nodes_[v].leaf )
      v = ( z & nodes_[v].query ) ? nodes_[v].one_child : nodes_[v].zero_child;
    return nodes_[v].value;
  }

  /*! \brief Every query is a single variable and no path repeats a variable. */
  bool well_formed() const { return nodes_.empty() || well_formed_from( root_, 0 ); }

private:
  bool well_formed_from( std::size_t v, mask_t seen ) const
  {
    auto const& nd = nodes_[v];
    if ( nd.leaf )
      return true;
    if ( popcount( nd.query ) != 1 || ( nd.query & seen ) != 0 )
      return false;
    return well_formed_from( nd.zero_child, seen | nd.query ) && well_formed_from( nd.one_child, seen | nd.query );
  }
};

/*! \brief AND-decision tree: each internal node queries AND_{i in S} z_i. */
class and_decision_tree : public detail::tree_base
{
public:
  and_decision_tree() : tree_base( 0 ) {}
  explicit and_decision_tree( uint32_t n ) : tree_base( n ) {}

  /*! \brief false_child is taken when some variable of S is 0. */
  std::size_t add_query( mask_t subset, std::size_t false_child, std::size_t true_child )
  {
    return add_internal( subset, false_child, true_child );
  }
};

inline rational adt_evaluate( and_decision_tree const& t, mask_t z )
{
  auto v = t.root();
  while ( !t.node( v ).leaf )
  {
    auto const& nd = t.node( v );
    v = is_subset( nd.query, z ) ? nd.one_child : nd.zero_child;
  }
  return t.node( v ).value;
}

inline rational adt_evaluate( and_decision_tree const& t, bitvec const& z ) { return adt_evaluate( t, z.bits() ); }

/*! \brief Exhaustive equality with f on all 2^n inputs (n <= enumeration guard). */
template<typename Tree>
bool tree_computes( Tree const& t, multilinear_poly const& f )
{
  auto const n = f.num_vars();
  if ( t.num_vars() != n )
    return false;
  require_capacity( n, limits::enumeration, "tree verification" );
  auto const table = to_truth_table( f );
  for ( mask_t z = 0; z < ( mask_t{ 1 } << n ); ++z )
  {
    rational const got = [&] {
      if constexpr ( std::is_same_v<Tree, and_decision_tree> )
        return adt_evaluate( t, z );
      else
        return t.evaluate( z );
    }();
    if ( got != table[z] )
      return false;
  }
  return true;
}

inline bool adt_verify( and_decision_tree const& t, multilinear_poly const& f ) { return tree_computes( t, f ); }

/*!
  \brief Greedy zero-decision tree for f.

  A node whose restriction is constant becomes a leaf. Otherwise it queries the
  variable occurring in the most monomials (ties -> lowest index); the 0-branch
  recurses on restrict_zero, the 1-branch on restrict_ones.
*/
inline decision_tree build_zero_dt( multilinear_poly const& f )
{
  require_capacity( f.num_vars(), limits::enumeration, "build_zero_dt" );
  decision_tree t( f.num_vars() );
  std::function<std::size_t( multilinear_poly const& )> build = [&]( multilinear_poly const& g ) -> std::size_t {
    if ( g.is_constant() )
      return t.add_leaf( g.constant_term() );
    std::vector<std::size_t> count( g.num_vars() );
    for ( auto s : g.monomials() )
      for ( auto m = s; m != 0; m &= m - 1 )
        ++count[std::countr_zero( m )];
    uint32_t best = 0;
    for ( uint32_t i = 1; i < count.size(); ++i )
      if ( count[i] > count[best] )
        best = i;
    auto const zero = build( restrict_zero( g, best ) );
    auto const one = build( restrict_ones( g, mask_t{ 1 } << best ) );
    return t.add_query( best, zero, one );
  };
  t.set_root( build( f ) );
  return t;
}

/*! \brief ceil(log2(m)) for m >= 1. */
inline std::size_t ceil_log2( std::size_t m )
{
  std::size_t bits = 0;
  while ( ( std::size_t{ 1 } << bits ) < m )
    ++bits;
  return bits;
}

/*!
  \brief Converts a standard decision tree into an AND-decision tree.

  From each node, follow 1-edges to a leaf: with L queries on that path there
  are L + 1 ways to leave it (a 0 at position j, or reaching the leaf).
  A binary search over them, asking AND of a block of consecutive path
  variables, takes ceil(log2(L + 1)) queries; the conversion then continues in
  the 0-subtree reached. Depth <= zero_depth(t) * ceil(log2(n + 1)).
*/
inline and_decision_tree zero_dt_to_adt( decision_tree const& t )
{
  if ( !t.well_formed() )
    throw std::invalid_argument( "zero_dt_to_adt: tree repeats a variable on a path" );
  and_decision_tree out( t.num_vars() );
  if ( t.size() == 0 )
  {
    out.set_root( out.add_leaf( rational( 0 ) ) );
    return out;
  }

  std::function<std::size_t( std::size_t )> convert = [&]( std::size_t v ) -> std::size_t {
    std::vector<std::size_t> path;
    auto cur = v;
    while ( !t.node( cur ).leaf )
    {
      path.push_back( cur );
      cur = t.node( cur ).one_child;
    }
    auto const last_leaf = cur;
    auto const options = path.size(); /* option j < L: first 0 at path[j]; option L: the leaf */

    std::function<std::size_t( std::size_t, std::size_t )> search = [&]( std::size_t lo, std::size_t hi ) -> std::size_t {
      if ( lo == hi )
      {
        return lo < options ? convert( t.node( path[lo] ).zero_child ) : out.add_leaf( t.node( last_leaf ).value );
      }
      auto const mid = ( lo + hi + 1 ) / 2;
      mask_t query = 0;
      for ( auto j = lo; j < mid; ++j )
        query |= t.node( path[j] ).query;
      auto const on_false = search( lo, mid - 1 );
      auto const on_true = search( mid, hi );
      return out.add_query( query, on_false, on_true );
    };
    return search( 0, options );
  };
  out.set_root( convert( t.root() ) );
  return out;
}

/*!
  \brief Standard decision tree simulating an AND-decision tree.

  An AND query is answered by reading its unknown variables in increasing
  order until the first 0, so each AND query costs at most one 0-edge.
*/
inline decision_tree adt_to_dt( and_decision_tree const& a )
{
  decision_tree out( a.num_vars() );
  std::function<std::size_t( std::size_t, mask_t, mask_t )> sim = [&]( std::size_t v, mask_t ones, mask_t zeros ) -> std::size_t {
    auto const& nd = a.node( v );
    if ( nd.leaf )
      return out.add_leaf( nd.value );
    if ( nd.query & zeros )
      return sim( nd.zero_child, ones, zeros );
    std::vector<uint32_t> unknown;
    for ( auto m = nd.query & ~ones; m != 0; m &= m - 1 )
      unknown.push_back( static_cast<uint32_t>( std::countr_zero( m ) ) );

    std::function<std::size_t( std::size_t, mask_t )> chain = [&]( std::size_t i, mask_t known_ones ) -> std::size_t {
      if ( i == unknown.size() )
        return sim( nd.one_child, known_ones, zeros );
      auto const bit = mask_t{ 1 } << unknown[i];
      auto const on_zero = sim( nd.zero_child, known_ones, zeros | bit );
      auto const on_one = chain( i + 1, known_ones | bit );
      return out.add_query( unknown[i], on_zero, on_one );
    };
    return chain( 0, ones );
  };
  out.set_root( sim( a.root(), 0, 0 ) );
  return out;
}

/* ---------------------------------------------------------------- text form */

namespace detail
{

inline void format_tree_node( tree_base const& t, std::size_t v, std::string& out )
{
  auto const& nd = t.node( v );
  if ( nd.leaf )
  {
    out += "leaf=" + to_display_string( nd.value );
    return;
  }
  out += "(query=" + format_set( nd.query ) + " 0:";
  format_tree_node( t, nd.zero_child, out );
  out += " 1:";
  format_tree_node( t, nd.one_child, out );
  out += ")";
}

class tree_parser
{
public:
  tree_parser( std::string_view text, tree_base& tree, uint32_t n ) : text_( text ), tree_( tree ), n_( n ) {}

  std::size_t parse_node()
  {
    skip_ws();
    if ( consume( "leaf=" ) )
    {
      auto const start = pos_;
      while ( pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != ')' && text_[pos_] != '\n' && text_[pos_] != '\t' )
        ++pos_;
      return add_leaf( parse_rational( text_.substr( start, pos_ - start ) ) );
    }
    expect( "(" );
    skip_ws();
    expect( "query=" );
    auto const close = text_.find( '}', pos_ );
    if ( close == std::string_view::npos )
      throw parse_error( "unterminated query set" );
    auto const query = parse_set( text_.substr( pos_, close - pos_ + 1 ), n_ );
    pos_ = close + 1;
    skip_ws();
    expect( "0:" );
    auto const zero = parse_node();
    skip_ws();
    expect( "1:" );
    auto const one = parse_node();
    skip_ws();
    expect( ")" );
    return add_query( query, zero, one );
  }

  void finish()
  {
    skip_ws();
    if ( pos_ != text_.size() )
      throw parse_error( "trailing characters after tree" );
  }

private:
  std::size_t add_leaf( rational value ) { return tree_.add_leaf( std::move( value ) ); }
  std::size_t add_query( mask_t q, std::size_t zero, std::size_t one ) { return tree_.add_internal( q, zero, one ); }

  void skip_ws()
  {
    while ( pos_ < text_.size() && ( text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' || text_[pos_] == '\r' ) )
      ++pos_;
  }
  bool consume( std::string_view token )
  {
    if ( text_.substr( pos_, token.size() ) == token )
    {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect( std::string_view token )
  {
    if ( !consume( token ) )
      throw parse_error( "expected '" + std::string( token ) + "' at offset " + std::to_string( pos_ ) );
  }

  std::string_view text_;
  tree_base& tree_;
  uint32_t n_;
  std::size_t pos_{ 0 };
};

} // namespace detail

/*! \brief Nested text form: `(query={i,..} 0:<child> 1:<child>)` or `leaf=<rational>`. */
template<typename Tree>
std::string format_tree( Tree const& t )
{
  std::string out;
  if ( t.size() == 0 )
    return "leaf=0";
  detail::format_tree_node( t, t.root(), out );
  return out;
}

template<typename Tree>
Tree parse_tree( std::string_view text, uint32_t n )
{
  Tree t( n );
  detail::tree_parser parser( text, t, n );
  t.set_root( parser.parse_node() );
  parser.finish();
  if constexpr ( std::is_same_v<Tree, decision_tree> )
  {
    if ( !t.well_formed() )
      throw parse_error( "decision tree queries must be single variables, distinct along each path" );
  }
  return t;
}

/* ------------------------------------------------- randomized threshold ADT */

/*!
  \brief Randomized AND-decision tree for 1[|x| >= n-1].

  Draws S uniformly from all subsets of [n] and outputs
  q_S(x) = AND_{i in S} x_i  OR  AND_{i not in S} x_i (two AND queries).
*/
class randomized_and_dt
{
public:
  randomized_and_dt( uint32_t n, uint64_t seed ) : n_( n ), rng_( seed )
  {
    if ( n < 2 || n > 63 )
      throw std::invalid_argument( "threshold randomized ADT needs 2 <= n <= 63" );
  }

  uint32_t num_vars() const noexcept { return n_; }

  mask_t sample_subset() { return rng_() & full_mask( n_ ); }

  /*! \brief The deterministic tree q_S. */
  and_decision_tree tree_for( mask_t subset ) const
  {
    and_decision_tree t( n_ );
    auto const zero = t.add_leaf( rational( 0 ) );
    auto const one = t.add_leaf( rational( 1 ) );
    auto const second = t.add_query( ~subset & full_mask( n_ ), zero, one );
    t.set_root( t.add_query( subset, second, one ) );
    return t;
  }

  /*! \brief One randomized run on x. */
  bool run( mask_t x ) { return query_value( sample_subset(), x ); }

  bool query_value( mask_t subset, mask_t x ) const
  {
    auto const rest = ~subset & full_mask( n_ );
    return is_subset( subset, x ) || is_subset( rest, x );
  }

private:
  uint32_t n_;
  std::mt19937_64 rng_;
};

inline randomized_and_dt threshold_randomized_adt( uint32_t n, uint64_t seed ) { return randomized_and_dt( n, seed ); }

/*! \brief Exact Pr_S[q_S(x) != 1[|x| >= n-1]] by enumerating all 2^n subsets S. */
inline rational threshold_error_at( uint32_t n, mask_t x )
{
  require_capacity( n, limits::enumeration, "threshold_error" );
  randomized_and_dt const r( n, 0 );
  bool const truth = popcount( x ) + 1 >= n;
  uint64_t wrong = 0;
  for ( mask_t s = 0; s < ( mask_t{ 1 } << n ); ++s )
    wrong += r.query_value( s, x ) != truth;
  return rational( integer( wrong ), integer( 1 ) << n );
}

/*! \brief Worst exact error per Hamming weight |x| = 0..n, enumerating every x and every S. */
inline std::vector<rational> threshold_error_by_weight( uint32_t n )
{
  require_capacity( n, limits::enumeration, "threshold_error" );
  std::vector<rational> worst( n + 1, rational( 0 ) );
  for ( mask_t x = 0; x < ( mask_t{ 1 } << n ); ++x )
  {
    auto const e = threshold_error_at( n, x );
    auto& w = worst[popcount( x )];
    w = std::max( w, e );
  }
  return worst;
}

/*! \brief Worst exact error over all inputs. */
inline rational threshold_error( uint32_t n )
{
  rational worst = 0;
  for ( auto const& e : threshold_error_by_weight( n ) )
    worst = std::max( worst, e );
  return worst;
}

} // namespace andlift
