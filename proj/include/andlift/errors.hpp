/*!
  \file errors.hpp
  \brief Error types and capacity guards shared by all modules
*/

#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace andlift
{

/*! \brief Malformed input text; carries the 1-based line number (0 if unknown). */
class parse_error : public std::runtime_error
{
public:
  parse_error( std::string const& what, std::size_t line = 0 )
      : std::runtime_error( line == 0 ? what : "line " + std::to_string( line ) + ": " + what ),
        line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/*! \brief An operation was asked to enumerate more than the configured size guard. */
class capacity_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A post-hoc certificate or internal invariant failed. Always a bug. */
class invariant_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

namespace limits
{

/* default guards; the ANDLIFT_CAPACITY environment variable overrides all of them */
inline constexpr uint32_t dense_table = 24;
inline constexpr uint32_t enumeration = 20;
inline constexpr uint32_t comm_matrix = 10;

} // namespace limits

/*! \brief Effective variable-count limit for a guard with the given default. */
inline uint32_t capacity_limit( uint32_t default_limit )
{
  if ( char const* env = std::getenv( "ANDLIFT_CAPACITY" ); env != nullptr && *env != '\0' )
  {
    char* end = nullptr;
    auto const value = std::strtoul( env, &end, 10 );
    if ( end != nullptr && *end == '\0' )
    {
      return static_cast<uint32_t>( value );
    }
  }
  return default_limit;
}

inline void require_capacity( uint32_t n, uint32_t default_limit, char const* what )
{
  if ( auto const limit = capacity_limit( default_limit ); n > limit )
  {
    throw capacity_error( std::string( what ) + ": n = " + std::to_string( n ) + " exceeds the capacity guard " +
                          std::to_string( limit ) + " (set ANDLIFT_CAPACITY to override)" );
  }
}

inline void ensure( bool condition, char const* what )
{
  if ( !condition )
  {
    throw invariant_error( what );
  }
}

} // namespace andlift
