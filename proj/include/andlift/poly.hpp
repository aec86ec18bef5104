/*!
  \file poly.hpp
  \brief Functions f : {0,1}^n -> Q as dense truth tables and sparse multilinear polynomials

  A polynomial is the unique expansion f(x) = sum_S alpha_S prod_{i in S} x_i,
  stored as a map from monomial support to nonzero coefficient. Restrictions
  keep the ambient variable count; fixed variables simply stop occurring.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace andlift
{

/*! \brief Dense evaluation vector; entry j is f(z) where z_i = bit i-1 of j. */
class truth_table
{
public:
  truth_table() = default;

  truth_table( uint32_t n, std::vector<rational> values ) : n_( n ), values_( std::move( values ) )
  {
    require_capacity( n, limits::dense_table, "truth_table" );
    if ( values_.size() != ( std::size_t{ 1 } << n ) )
    {
      throw std::invalid_argument( "truth_table: expected 2^n values" );
    }
  }

  /*! \brief Tabulates `fn(mask)` over all 2^n inputs. */
  template<typename Fn>
  static truth_table tabulate( uint32_t n, Fn&& fn )
  {
    require_capacity( n, limits::dense_table, "truth_table" );
    std::vector<rational> values( std::size_t{ 1 } << n );
    for ( std::size_t j = 0; j < values.size(); ++j )
    {
      values[j] = rational( fn( static_cast<mask_t>( j ) ) );
    }
    return truth_table( n, std::move( values ) );
  }

  uint32_t num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<rational> const& values() const noexcept { return values_; }
  rational const& operator[]( mask_t z ) const { return values_.at( static_cast<std::size_t>( z ) ); }

  bool is_boolean() const
  {
    for ( auto const& v : values_ )
    {
      if ( v != 0 && v != 1 )
      {
        return false;
      }
    }
    return true;
  }

  /*! \brief 0/1 values as bytes; throws if not boolean. */
  std::vector<uint8_t> bits() const
  {
    std::vector<uint8_t> out( values_.size() );
    for ( std::size_t j = 0; j < values_.size(); ++j )
    {
      if ( values_[j] == 0 )
        out[j] = 0;
      else if ( values_[j] == 1 )
        out[j] = 1;
      else
        throw std::invalid_argument( "truth table is not boolean-valued" );
    }
    return out;
  }

  friend bool operator==( truth_table const&, truth_table const& ) = default;

private:
  uint32_t n_{ 0 };
  std::vector<rational> values_{ rational( 0 ) };
};

class multilinear_poly
{
public:
  using term_map = std::map<mask_t, rational>;

  multilinear_poly() = default;

  explicit multilinear_poly( uint32_t n ) : n_( n )
  {
    if ( n > max_vars )
    {
      throw capacity_error( "polynomials support at most 64 variables" );
    }
  }

  multilinear_poly( uint32_t n, term_map const& terms ) : multilinear_poly( n )
  {
    for ( auto const& [support, coeff] : terms )
    {
      add_term( support, coeff );
    }
  }

  /*! \brief Adds `coeff * x^support`, merging and dropping zero sums. */
  void add_term( mask_t support, rational const& coeff )
  {
    if ( ( support & ~full_mask( n_ ) ) != 0 )
    {
      throw std::invalid_argument( "monomial uses a variable outside [n]" );
    }
    if ( coeff == 0 )
    {
      return;
    }
    auto [it, inserted] = terms_.try_emplace( support, coeff );
    if ( !inserted )
    {
      it->second += coeff;
      if ( it->second == 0 )
      {
        terms_.erase( it );
      }
    }
  }

  uint32_t num_vars() const noexcept { return n_; }
  term_map const& terms() const noexcept { return terms_; }

  rational coefficient( mask_t support ) const
  {
    auto const it = terms_.find( support );
    return it == terms_.end() ? rational( 0 ) : it->second;
  }

  rational constant_term() const { return coefficient( 0 ); }

  /*! \brief Number of nonzero coefficients, constant term included. */
  std::size_t sparsity() const noexcept { return terms_.size(); }

  /*! \brief |mon[f]|: nonzero coefficients excluding the constant term. */
  std::size_t mon_count() const noexcept { return terms_.size() - ( terms_.contains( 0 ) ? 1 : 0 ); }

  /*! \brief Supports of the nonconstant monomials, in increasing mask order. */
  std::vector<mask_t> monomials() const
  {
    std::vector<mask_t> out;
    out.reserve( terms_.size() );
    for ( auto const& [support, coeff] : terms_ )
    {
      if ( support != 0 )
      {
        out.push_back( support );
      }
    }
    return out;
  }

  bool is_constant() const noexcept { return mon_count() == 0; }

  uint32_t degree() const noexcept
  {
    uint32_t d = 0;
    for ( auto const& [support, coeff] : terms_ )
    {
      d = std::max( d, popcount( support ) );
    }
    return d;
  }

  friend bool operator==( multilinear_poly const&, multilinear_poly const& ) = default;

private:
  uint32_t n_{ 0 };
  term_map terms_;
};

inline rational evaluate( multilinear_poly const& p, mask_t z )
{
  rational sum = 0;
  for ( auto const& [support, coeff] : p.terms() )
  {
    if ( is_subset( support, z ) )
    {
      sum += coeff;
    }
  }
  return sum;
}

inline rational evaluate( multilinear_poly const& p, bitvec const& z )
{
  if ( z.size() != p.num_vars() )
  {
    throw std::invalid_argument( "evaluate: point has the wrong number of variables" );
  }
  return evaluate( p, z.bits() );
}

/*! \brief Inverse of mobius_invert: f(z) = sum_{S subset z} alpha_S via the subset-sum (zeta) transform. */
inline truth_table to_truth_table( multilinear_poly const& p )
{
  auto const n = p.num_vars();
  require_capacity( n, limits::dense_table, "to_truth_table" );
  std::vector<rational> values( std::size_t{ 1 } << n );
  for ( auto const& [support, coeff] : p.terms() )
  {
    values[static_cast<std::size_t>( support )] = coeff;
  }
  for ( uint32_t i = 0; i < n; ++i )
  {
    auto const bit = std::size_t{ 1 } << i;
    for ( std::size_t j = 0; j < values.size(); ++j )
    {
      if ( j & bit )
      {
        values[j] += values[j ^ bit];
      }
    }
  }
  return truth_table( n, std::move( values ) );
}

/*!
  \brief Recovers the multilinear coefficients alpha_T = sum_{S subset T} (-1)^{|T|-|S|} f(S).

  In-place subset Mobius transform, n * 2^n additions.
*/
inline multilinear_poly mobius_invert( truth_table const& t )
{
  auto const n = t.num_vars();
  require_capacity( n, limits::dense_table, "mobius_invert" );
  std::vector<rational> coeffs = t.values();
  for ( uint32_t i = 0; i < n; ++i )
  {
    auto const bit = std::size_t{ 1 } << i;
    for ( std::size_t j = 0; j < coeffs.size(); ++j )
    {
      if ( j & bit )
      {
        coeffs[j] -= coeffs[j ^ bit];
      }
    }
  }
  multilinear_poly p( n );
  for ( std::size_t j = 0; j < coeffs.size(); ++j )
  {
    p.add_term( static_cast<mask_t>( j ), coeffs[j] );
  }
  return p;
}

/*! \brief The literal 3^n double sum; reference for the fast transform. */
inline multilinear_poly mobius_invert_naive( truth_table const& t )
{
  auto const n = t.num_vars();
  multilinear_poly p( n );
  for ( mask_t T = 0; T < ( mask_t{ 1 } << n ); ++T )
  {
    rational sum = 0;
    /* enumerate all S subset T, including T itself and the empty set */
    for ( mask_t S = T;; S = ( S - 1 ) & T )
    {
      if ( ( popcount( T ) - popcount( S ) ) % 2 == 0 )
        sum += t[S];
      else
        sum -= t[S];
      if ( S == 0 )
        break;
    }
    p.add_term( T, sum );
  }
  return p;
}

/*!
  \brief f_z: the restriction of f to inputs above z (variables in z fixed to 1).

  Each monomial S maps to S \ z, coefficients summed. The result keeps n
  variables; those in z no longer occur.
*/
inline multilinear_poly restrict_ones( multilinear_poly const& p, mask_t z )
{
  multilinear_poly out( p.num_vars() );
  for ( auto const& [support, coeff] : p.terms() )
  {
    out.add_term( support & ~z, coeff );
  }
  return out;
}

inline multilinear_poly restrict_ones( multilinear_poly const& p, bitvec const& z )
{
  return restrict_ones( p, z.bits() );
}

/*! \brief Sets x_i = 0 (i is 0-based): every monomial containing i vanishes. */
inline multilinear_poly restrict_zero( multilinear_poly const& p, uint32_t i )
{
  if ( i >= p.num_vars() )
  {
    throw std::invalid_argument( "restrict_zero: variable outside [n]" );
  }
  multilinear_poly out( p.num_vars() );
  for ( auto const& [support, coeff] : p.terms() )
  {
    if ( !( ( support >> i ) & 1u ) )
    {
      out.add_term( support, coeff );
    }
  }
  return out;
}

/*! \brief ||f||_1 = sum of absolute coefficients. */
inline rational l1_norm( multilinear_poly const& p )
{
  rational sum = 0;
  for ( auto const& [support, coeff] : p.terms() )
  {
    sum += abs( coeff );
  }
  return sum;
}

inline multilinear_poly operator+( multilinear_poly const& a, multilinear_poly const& b )
{
  multilinear_poly out( std::max( a.num_vars(), b.num_vars() ) );
  for ( auto const& [s, c] : a.terms() )
    out.add_term( s, c );
  for ( auto const& [s, c] : b.terms() )
    out.add_term( s, c );
  return out;
}

inline multilinear_poly operator*( rational const& k, multilinear_poly const& a )
{
  multilinear_poly out( a.num_vars() );
  for ( auto const& [s, c] : a.terms() )
    out.add_term( s, k * c );
  return out;
}

/*! \brief Product reduced with x_i^2 = x_i (supports combine by union). */
inline multilinear_poly operator*( multilinear_poly const& a, multilinear_poly const& b )
{
  multilinear_poly out( std::max( a.num_vars(), b.num_vars() ) );
  for ( auto const& [sa, ca] : a.terms() )
    for ( auto const& [sb, cb] : b.terms() )
      out.add_term( sa | sb, ca * cb );
  return out;
}

inline multilinear_poly constant_poly( uint32_t n, rational const& c )
{
  multilinear_poly p( n );
  p.add_term( 0, c );
  return p;
}

/*! \brief Minimal elements (under inclusion) of a family of masks; output sorted. */
inline std::vector<mask_t> minimal_elements( std::vector<mask_t> family )
{
  std::sort( family.begin(), family.end(), []( mask_t a, mask_t b ) {
    auto const pa = popcount( a ), pb = popcount( b );
    return pa != pb ? pa < pb : a < b;
  } );
  family.erase( std::unique( family.begin(), family.end() ), family.end() );
  std::vector<mask_t> out;
  for ( auto s : family )
  {
    bool dominated = false;
    for ( auto m : out )
    {
      if ( is_subset( m, s ) )
      {
        dominated = true;
        break;
      }
    }
    if ( !dominated )
    {
      out.push_back( s );
    }
  }
  std::sort( out.begin(), out.end() );
  return out;
}

/*! \brief Minimal elements of mon[p]. */
inline std::vector<mask_t> minimal_monomials( multilinear_poly const& p )
{
  return minimal_elements( p.monomials() );
}

} // namespace andlift
