/*!
  \file lp.hpp
  \brief Exact two-phase simplex over the rationals with Bland's rule

  Every optimal answer carries a dual solution, and the triple
  (primal feasibility, dual feasibility, equal objective values) is checked
  exactly before the result is returned.
*/

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace andlift
{

enum class objective_sense
{
  maximize,
  minimize
};

enum class row_relation
{
  less_equal,
  greater_equal,
  equal
};

/*! \brief optimize c.x subject to A x (rel) b, x >= 0. */
struct lp_problem
{
  objective_sense sense{ objective_sense::maximize };
  std::vector<rational> objective;
  std::vector<std::vector<rational>> rows;
  std::vector<row_relation> relations;
  std::vector<rational> rhs;

  std::size_t num_vars() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }

  void add_row( std::vector<rational> coeffs, row_relation rel, rational b )
  {
    rows.push_back( std::move( coeffs ) );
    relations.push_back( rel );
    rhs.push_back( std::move( b ) );
  }
};

enum class lp_status
{
  optimal,
  infeasible,
  unbounded
};

/*!
  \brief Outcome of a solve.

  For `optimal`, `primal` and `dual` are exact optimal solutions. Duals use the
  sign convention of the original problem: for maximization y >= 0 on <= rows,
  y <= 0 on >= rows, and A^T y >= c; for minimization the signs flip and
  A^T y <= c. In both cases b.y == value.
*/
struct lp_result
{
  lp_status status{ lp_status::infeasible };
  rational value;
  std::vector<rational> primal;
  std::vector<rational> dual;
  std::size_t pivots{ 0 };
};

/*! \brief Checks the optimality certificate; returns a description of the first failure. */
inline std::optional<std::string> certificate_failure( lp_problem const& lp, lp_result const& r )
{
  auto const nv = lp.num_vars();
  auto const m = lp.num_rows();
  if ( r.primal.size() != nv || r.dual.size() != m )
  {
    return "certificate has wrong dimensions";
  }
  bool const maximize = lp.sense == objective_sense::maximize;
  for ( std::size_t j = 0; j < nv; ++j )
  {
    if ( r.primal[j] < 0 )
      return "primal variable negative";
  }
  rational objective = 0;
  for ( std::size_t j = 0; j < nv; ++j )
    objective += lp.objective[j] * r.primal[j];
  if ( objective != r.value )
    return "primal objective differs from reported value";

  rational dual_objective = 0;
  for ( std::size_t i = 0; i < m; ++i )
  {
    rational lhs = 0;
    for ( std::size_t j = 0; j < nv; ++j )
      lhs += lp.rows[i][j] * r.primal[j];
    auto const rel = lp.relations[i];
    if ( ( rel == row_relation::less_equal && lhs > lp.rhs[i] ) || ( rel == row_relation::greater_equal && lhs < lp.rhs[i] ) ||
         ( rel == row_relation::equal && lhs != lp.rhs[i] ) )
      return "primal row " + std::to_string( i ) + " violated";

    auto const& y = r.dual[i];
    bool const nonneg_expected = maximize ? rel == row_relation::less_equal : rel == row_relation::greater_equal;
    bool const nonpos_expected = maximize ? rel == row_relation::greater_equal : rel == row_relation::less_equal;
    if ( ( nonneg_expected && y < 0 ) || ( nonpos_expected && y > 0 ) )
      return "dual sign wrong on row " + std::to_string( i );
    dual_objective += lp.rhs[i] * y;
  }
  for ( std::size_t j = 0; j < nv; ++j )
  {
    rational aty = 0;
    for ( std::size_t i = 0; i < m; ++i )
      aty += lp.rows[i][j] * r.dual[i];
    if ( maximize ? aty < lp.objective[j] : aty > lp.objective[j] )
      return "dual constraint " + std::to_string( j ) + " violated";
  }
  if ( dual_objective != r.value )
    return "duality gap is nonzero";
  return std::nullopt;
}

namespace detail
{

class simplex_tableau
{
public:
  explicit simplex_tableau( lp_problem const& lp ) : m_( lp.num_rows() ), nv_( lp.num_vars() )
  {
    flipped_.assign( m_, false );
    std::vector<row_relation> rel( lp.relations );
    for ( std::size_t i = 0; i < m_; ++i )
    {
      if ( lp.rhs[i] < 0 )
      {
        flipped_[i] = true;
        if ( rel[i] == row_relation::less_equal )
          rel[i] = row_relation::greater_equal;
        else if ( rel[i] == row_relation::greater_equal )
          rel[i] = row_relation::less_equal;
      }
    }

    /* column layout: originals, then per-row slack/surplus, then artificials */
    ncols_ = nv_;
    std::vector<std::size_t> aux_col( m_, npos ), art_col( m_, npos );
    for ( std::size_t i = 0; i < m_; ++i )
    {
      if ( rel[i] != row_relation::equal )
        aux_col[i] = ncols_++;
    }
    first_artificial_ = ncols_;
    for ( std::size_t i = 0; i < m_; ++i )
    {
      if ( rel[i] != row_relation::less_equal )
        art_col[i] = ncols_++;
    }

    tab_.assign( m_, std::vector<rational>( ncols_ + 1 ) );
    basis_.assign( m_, npos );
    identity_col_.assign( m_, npos );
    for ( std::size_t i = 0; i < m_; ++i )
    {
      auto const sign = flipped_[i] ? -1 : 1;
      for ( std::size_t j = 0; j < nv_; ++j )
        tab_[i][j] = sign * lp.rows[i][j];
      tab_[i][ncols_] = sign * lp.rhs[i];
      if ( rel[i] == row_relation::less_equal )
      {
        tab_[i][aux_col[i]] = 1;
        identity_col_[i] = aux_col[i];
      }
      else
      {
        if ( aux_col[i] != npos )
          tab_[i][aux_col[i]] = -1;
        tab_[i][art_col[i]] = 1;
        identity_col_[i] = art_col[i];
      }
      basis_[i] = identity_col_[i];
    }
  }

  /*! Runs both phases; `cost` is the maximization objective over original columns. */
  lp_status solve( std::vector<rational> const& cost )
  {
    if ( first_artificial_ < ncols_ )
    {
      std::vector<rational> phase1( ncols_ );
      for ( auto j = first_artificial_; j < ncols_; ++j )
        phase1[j] = -1;
      if ( run( phase1, true ) != lp_status::optimal )
        throw invariant_error( "simplex: phase 1 cannot be unbounded" );
      if ( objective_value( phase1 ) < 0 )
        return lp_status::infeasible;
      drive_out_artificials();
    }
    cost_.assign( ncols_, rational( 0 ) );
    for ( std::size_t j = 0; j < nv_; ++j )
      cost_[j] = cost[j];
    return run( cost_, false );
  }

  rational objective_value( std::vector<rational> const& cost ) const
  {
    rational v = 0;
    for ( std::size_t i = 0; i < m_; ++i )
      v += cost[basis_[i]] * tab_[i][ncols_];
    return v;
  }

  std::vector<rational> primal() const
  {
    std::vector<rational> x( nv_ );
    for ( std::size_t i = 0; i < m_; ++i )
      if ( basis_[i] < nv_ )
        x[basis_[i]] = tab_[i][ncols_];
    return x;
  }

  /*! y = c_B^T B^{-1}, mapped back through any row negation. */
  std::vector<rational> dual() const
  {
    std::vector<rational> y( m_ );
    for ( std::size_t i = 0; i < m_; ++i )
    {
      rational sum = 0;
      for ( std::size_t r = 0; r < m_; ++r )
        sum += cost_[basis_[r]] * tab_[r][identity_col_[i]];
      y[i] = flipped_[i] ? rational( -sum ) : sum;
    }
    return y;
  }

  std::size_t pivots() const noexcept { return pivots_; }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>( -1 );
  static constexpr std::size_t pivot_limit = 1000000;

  lp_status run( std::vector<rational> const& cost, bool allow_artificial )
  {
    auto const limit = allow_artificial ? ncols_ : first_artificial_;
    std::vector<rational> reduced( ncols_ );
    for ( ;; )
    {
      /* reduced cost d_j = c_j - c_B^T B^{-1} A_j */
      std::optional<std::size_t> entering;
      for ( std::size_t j = 0; j < limit && !entering; ++j )
      {
        rational d = cost[j];
        for ( std::size_t i = 0; i < m_; ++i )
          if ( tab_[i][j] != 0 )
            d -= cost[basis_[i]] * tab_[i][j];
        if ( d > 0 )
          entering = j;
      }
      if ( !entering )
        return lp_status::optimal;

      auto const col = *entering;
      std::optional<std::size_t> leaving;
      rational best_ratio;
      for ( std::size_t i = 0; i < m_; ++i )
      {
        if ( tab_[i][col] <= 0 )
          continue;
        rational const ratio = tab_[i][ncols_] / tab_[i][col];
        if ( !leaving || ratio < best_ratio || ( ratio == best_ratio && basis_[i] < basis_[*leaving] ) )
        {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if ( !leaving )
        return lp_status::unbounded;
      pivot( *leaving, col );
      if ( pivots_ > pivot_limit )
        throw invariant_error( "simplex: pivot limit reached (cycling under Bland's rule is impossible)" );
    }
  }

  void pivot( std::size_t row, std::size_t col )
  {
    ++pivots_;
    auto& prow = tab_[row];
    rational const inv = 1 / prow[col];
    std::vector<std::size_t> nz;
    for ( std::size_t j = 0; j <= ncols_; ++j )
    {
      if ( prow[j] != 0 )
      {
        prow[j] *= inv;
        nz.push_back( j );
      }
    }
    for ( std::size_t i = 0; i < m_; ++i )
    {
      if ( i == row || tab_[i][col] == 0 )
        continue;
      rational const factor = tab_[i][col];
      for ( auto j : nz )
        tab_[i][j] -= factor * prow[j];
    }
    basis_[row] = col;
  }

  void drive_out_artificials()
  {
    for ( std::size_t i = 0; i < m_; ++i )
    {
      if ( basis_[i] < first_artificial_ )
        continue;
      for ( std::size_t j = 0; j < first_artificial_; ++j )
      {
        if ( tab_[i][j] != 0 )
        {
          pivot( i, j );
          break;
        }
      }
      /* otherwise the row is redundant; its artificial stays basic at zero */
    }
  }

  std::size_t m_, nv_, ncols_{ 0 }, first_artificial_{ 0 };
  std::vector<std::vector<rational>> tab_;
  std::vector<std::size_t> basis_, identity_col_;
  std::vector<bool> flipped_;
  std::vector<rational> cost_;
  std::size_t pivots_{ 0 };
};

} // namespace detail

/*!
  \brief Solves an LP exactly.

  Returns an explicit infeasible/unbounded verdict, or an optimum whose
  certificate has been checked; a failed check throws invariant_error.
*/
inline lp_result simplex_solve( lp_problem const& lp )
{
  auto const nv = lp.num_vars();
  if ( lp.relations.size() != lp.num_rows() || lp.rhs.size() != lp.num_rows() )
  {
    throw std::invalid_argument( "simplex_solve: rows, relations and rhs differ in length" );
  }
  for ( auto const& row : lp.rows )
  {
    if ( row.size() != nv )
      throw std::invalid_argument( "simplex_solve: row length differs from objective length" );
  }

  std::vector<rational> cost( lp.objective );
  if ( lp.sense == objective_sense::minimize )
  {
    for ( auto& c : cost )
      c = -c;
  }

  detail::simplex_tableau tableau( lp );
  lp_result result;
  result.status = tableau.solve( cost );
  result.pivots = tableau.pivots();
  if ( result.status != lp_status::optimal )
  {
    return result;
  }
  result.primal = tableau.primal();
  result.dual = tableau.dual();
  result.value = 0;
  for ( std::size_t j = 0; j < nv; ++j )
    result.value += lp.objective[j] * result.primal[j];
  if ( lp.sense == objective_sense::minimize )
  {
    for ( auto& y : result.dual )
      y = -y;
  }
  if ( auto const failure = certificate_failure( lp, result ) )
  {
    throw invariant_error( "simplex certificate check failed: " + *failure );
  }
  return result;
}

} // namespace andlift
