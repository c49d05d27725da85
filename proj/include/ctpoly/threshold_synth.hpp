/*!
  \file threshold_synth.hpp
  \brief Integer coupling-weight search for (polymorphic) threshold gates

  Weights range over 0..max_weight (at least one positive data weight), the
  control weight over 1..max_weight. Candidates are visited in order of total
  coupling, then lexicographically (data weights first, control weight last);
  the first realizable candidate is returned with the smallest admissible
  theta. The search is exhaustive inside that box.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "charge_model.hpp"
#include "gate_library.hpp"

namespace ctpoly
{

/*! \brief Raised for problems that have no meaningful margin realization */
struct degenerate_function_error : contract_error
{
  using contract_error::contract_error;
};

struct synth_problem
{
  truth_table f0;
  std::optional<truth_table> f1;
  uint32_t max_weight{default_max_weight};

  uint32_t arity() const { return truth_table_arity( f0 ); }
};

inline constexpr uint32_t max_synth_arity = 5u;

struct threshold_solution
{
  coupling_weights weights;
  margin_spec margin;
};

struct realization_check
{
  bool pass{true};
  /*! \brief first offending input vector (LSB-first index) and control value */
  uint64_t input{0};
  bool ctrl{false};
};

inline bool is_constant( truth_table const& tt, uint8_t value )
{
  return std::all_of( tt.begin(), tt.end(), [value]( auto b ) { return b == value; } );
}

/*! \brief True iff raising any input never lowers the function */
inline bool is_monotone( truth_table const& tt )
{
  for ( std::size_t x = 0u; x < tt.size(); ++x )
  {
    for ( std::size_t bit = 1u; bit < tt.size(); bit <<= 1u )
    {
      if ( !( x & bit ) && tt[x] > tt[x | bit] )
        return false;
    }
  }
  return true;
}

/*! \brief True iff f1 >= f0 pointwise; a control aggressor can only add charge */
inline bool dominates( truth_table const& f1, truth_table const& f0 )
{
  for ( std::size_t x = 0u; x < f0.size(); ++x )
  {
    if ( f0[x] > f1[x] )
      return false;
  }
  return true;
}

namespace detail
{

inline void check_problem_shape( synth_problem const& p )
{
  auto const n = p.arity();
  if ( p.f0.empty() || ( std::size_t{1} << n ) != p.f0.size() )
    throw contract_error( "synthesis: truth table length must be a power of two" );
  if ( n == 0u || n > max_synth_arity )
    throw contract_error( "synthesis: arity must be in [1, " + std::to_string( max_synth_arity ) + "]" );
  if ( p.f1 && p.f1->size() != p.f0.size() )
    throw contract_error( "synthesis: f0 and f1 differ in arity" );
  if ( p.max_weight == 0u )
    throw contract_error( "synthesis: max_weight must be positive" );
}

/* smallest admissible theta for fixed weights, if any */
inline std::optional<uint32_t> admissible_theta( std::vector<uint32_t> const& w, uint32_t ctrl, truth_table const& f0,
                                                 truth_table const* f1 )
{
  int64_t lower = 1;
  int64_t upper = static_cast<int64_t>( std::accumulate( w.begin(), w.end(), 0u ) + ctrl );
  for ( std::size_t x = 0u; x < f0.size(); ++x )
  {
    int64_t s = 0;
    for ( std::size_t i = 0u; i < w.size(); ++i )
    {
      if ( ( x >> i ) & 1u )
        s += w[i];
    }
    if ( f0[x] )
      upper = std::min( upper, s );
    else
      lower = std::max( lower, s + 1 );
    if ( f1 )
    {
      if ( ( *f1 )[x] )
        upper = std::min( upper, s + ctrl );
      else
        lower = std::max( lower, s + ctrl + 1 );
    }
    if ( lower > upper )
      return std::nullopt;
  }
  return static_cast<uint32_t>( lower );
}

/* visits vectors of `slots` entries with entry ranges [lo_i, hi] summing to `total`, lexicographically */
template<typename Fn>
bool for_each_composition( std::vector<uint32_t>& v, std::size_t pos, uint32_t remaining, std::vector<uint32_t> const& lo,
                           uint32_t hi, Fn&& fn )
{
  if ( pos + 1u == v.size() )
  {
    if ( remaining < lo[pos] || remaining > hi )
      return false;
    v[pos] = remaining;
    return fn( v );
  }
  uint32_t rest_min = 0u;
  for ( auto i = pos + 1u; i < v.size(); ++i )
    rest_min += lo[i];
  auto const rest_max = hi * static_cast<uint32_t>( v.size() - pos - 1u );
  for ( uint32_t x = lo[pos]; x <= hi && x + rest_min <= remaining; ++x )
  {
    if ( remaining - x > rest_max )
      continue;
    v[pos] = x;
    if ( for_each_composition( v, pos + 1u, remaining - x, lo, hi, fn ) )
      return true;
  }
  return false;
}

inline std::optional<threshold_solution> search( uint32_t arity, truth_table const& f0, truth_table const* f1, uint32_t max_weight )
{
  auto const slots = arity + ( f1 ? 1u : 0u );
  std::vector<uint32_t> lo( slots, 0u );
  if ( f1 )
    lo.back() = 1u;
  std::vector<uint32_t> v( slots, 0u );

  std::optional<threshold_solution> found;
  for ( uint32_t total = 1u; total <= slots * max_weight && !found; ++total )
  {
    for_each_composition( v, 0u, total, lo, max_weight, [&]( std::vector<uint32_t> const& cand ) {
      std::vector<uint32_t> data( cand.begin(), cand.begin() + arity );
      uint32_t const ctrl = f1 ? cand.back() : 0u;
      if ( std::all_of( data.begin(), data.end(), []( auto w ) { return w == 0u; } ) )
        return false;
      if ( auto theta = admissible_theta( data, ctrl, f0, f1 ) )
      {
        found = threshold_solution{ coupling_weights{ std::move( data ), ctrl }, margin_spec{ *theta } };
        return true;
      }
      return false;
    } );
  }
  return found;
}

} // namespace detail

/*! \brief Finds integer weights and theta with [sum w_i x_i >= theta] == f0

  Returns `std::nullopt` when no realization exists within the weight bound.
  Constant functions are rejected: they need theta = 0 or theta > total coupling.
*/
inline std::optional<threshold_solution> solve_threshold( synth_problem const& p )
{
  detail::check_problem_shape( p );
  if ( is_constant( p.f0, 0u ) || is_constant( p.f0, 1u ) )
    throw degenerate_function_error( "synthesis: constant function needs no crosstalk gate" );
  if ( !is_monotone( p.f0 ) )
    return std::nullopt;
  return detail::search( p.arity(), p.f0, nullptr, p.max_weight );
}

/*! \brief Finds a single-victim gate whose control aggressor switches f0 to f1

  The returned GENERIC_CT spec has two stages. f0 == f1 is rejected, since
  the control would be useless.
*/
inline std::optional<gate_spec> solve_polymorphic( synth_problem const& p )
{
  detail::check_problem_shape( p );
  if ( !p.f1 )
    throw contract_error( "polymorphic synthesis needs f1" );
  if ( p.f0 == *p.f1 )
    throw degenerate_function_error( "synthesis: f0 equals f1, control aggressor would be useless" );
  if ( !dominates( *p.f1, p.f0 ) || !is_monotone( p.f0 ) || !is_monotone( *p.f1 ) )
    return std::nullopt;
  auto sol = detail::search( p.arity(), p.f0, &*p.f1, p.max_weight );
  if ( !sol )
    return std::nullopt;
  return gate_spec{ gate_kind::generic_ct, std::move( sol->weights ), sol->margin, 2u };
}

/*! \brief Exhaustively compares a gate against f0 (ctrl = 0) and optionally f1 (ctrl = 1) */
inline realization_check validate_realization( gate_spec const& g, truth_table const& f0, std::optional<truth_table> const& f1 = std::nullopt )
{
  if ( ( std::size_t{1} << g.arity() ) != f0.size() || ( f1 && f1->size() != f0.size() ) )
    throw contract_error( "validate_realization: gate arity does not match function size" );
  for ( uint32_t c = 0u; c < ( f1 ? 2u : 1u ); ++c )
  {
    auto const& f = c == 0u ? f0 : *f1;
    for ( uint64_t x = 0u; x < f.size(); ++x )
    {
      if ( static_cast<uint8_t>( evaluate( g, x, c == 1u ) ) != f[x] )
        return { false, x, c == 1u };
    }
  }
  return {};
}

} // namespace ctpoly
