/*!
  \file gate_library.hpp
  \brief Canonical crosstalk gates and truth-table extraction
*/

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charge_model.hpp"

namespace ctpoly
{

enum class gate_kind
{
  ct_nand,
  ct_nor,
  ct_and,
  ct_or,
  ct_aoi21,
  ct_ao21,
  poly_and_or,
  poly_oa21_ao21,
  poly_and3_ao21,
  poly_ao21_or3,
  inv,
  generic_ct
};

namespace detail
{

inline constexpr std::array<std::pair<gate_kind, std::string_view>, 12> gate_kind_names{ {
    { gate_kind::ct_nand, "CT_NAND" },
    { gate_kind::ct_nor, "CT_NOR" },
    { gate_kind::ct_and, "CT_AND" },
    { gate_kind::ct_or, "CT_OR" },
    { gate_kind::ct_aoi21, "CT_AOI21" },
    { gate_kind::ct_ao21, "CT_AO21" },
    { gate_kind::poly_and_or, "POLY_AND_OR" },
    { gate_kind::poly_oa21_ao21, "POLY_OA21_AO21" },
    { gate_kind::poly_and3_ao21, "POLY_AND3_AO21" },
    { gate_kind::poly_ao21_or3, "POLY_AO21_OR3" },
    { gate_kind::inv, "INV" },
    { gate_kind::generic_ct, "GENERIC_CT" },
} };

} // namespace detail

inline std::string_view to_string( gate_kind k )
{
  for ( auto const& [kind, name] : detail::gate_kind_names )
  {
    if ( kind == k )
      return name;
  }
  return "?";
}

inline std::optional<gate_kind> gate_kind_from_string( std::string_view s )
{
  for ( auto const& [kind, name] : detail::gate_kind_names )
  {
    if ( name == s )
      return kind;
  }
  return std::nullopt;
}

inline constexpr auto all_named_kinds = std::array{
    gate_kind::ct_nand, gate_kind::ct_nor, gate_kind::ct_and, gate_kind::ct_or,
    gate_kind::ct_aoi21, gate_kind::ct_ao21, gate_kind::poly_and_or, gate_kind::poly_oa21_ao21,
    gate_kind::poly_and3_ao21, gate_kind::poly_ao21_or3, gate_kind::inv };

inline constexpr auto polymorphic_kinds = std::array{
    gate_kind::poly_and_or, gate_kind::poly_oa21_ao21, gate_kind::poly_and3_ao21, gate_kind::poly_ao21_or3 };

/*! \brief Thrown by `build_gate` for kinds that are not determined by their name */
struct missing_parameters_error : contract_error
{
  using contract_error::contract_error;
};

struct gate_spec
{
  gate_kind kind{gate_kind::generic_ct};
  coupling_weights weights;
  margin_spec margin;

  /*! \brief 1 = inverting output (F_I), 2 = non-inverting output (F) */
  uint32_t n_stages{2};

  uint32_t arity() const { return static_cast<uint32_t>( weights.data.size() ); }
  bool has_ctrl() const { return weights.ctrl > 0u; }

  bool operator==( gate_spec const& ) const = default;
};

/*! \brief Evaluates the gate output for packed data inputs */
inline bool evaluate( gate_spec const& g, uint64_t input_mask, bool ctrl )
{
  return stage_output( fires( g.weights, g.margin, input_mask, ctrl ), g.n_stages );
}

inline void validate( gate_spec const& g, uint32_t max_weight = default_max_weight )
{
  validate_weights( g.weights, max_weight );
  validate_margin( g.weights, g.margin );
  stage_output( false, g.n_stages );
  if ( g.kind == gate_kind::inv && ( g.arity() != 1u || g.has_ctrl() ) )
    throw contract_error( "INV takes exactly one data input" );
}

/*! \brief Returns the canonical parametrization of a named gate

  Two-input gates use unit couplings; OR-type behavior comes from a lower
  margin rather than stronger coupling. Three-input composites give input C
  double coupling. Polymorphic cells drive two stages (non-inverting F).
*/
inline gate_spec build_gate( gate_kind kind )
{
  auto make = [kind]( std::vector<uint32_t> data, uint32_t ctrl, uint32_t theta, uint32_t stages ) {
    return gate_spec{ kind, coupling_weights{ std::move( data ), ctrl }, margin_spec{ theta }, stages };
  };

  switch ( kind )
  {
  case gate_kind::ct_nand:
    return make( { 1, 1 }, 0, 2, 1 );
  case gate_kind::ct_and:
    return make( { 1, 1 }, 0, 2, 2 );
  case gate_kind::ct_nor:
    return make( { 1, 1 }, 0, 1, 1 );
  case gate_kind::ct_or:
    return make( { 1, 1 }, 0, 1, 2 );
  case gate_kind::ct_aoi21:
    return make( { 1, 1, 2 }, 0, 2, 1 );
  case gate_kind::ct_ao21:
    return make( { 1, 1, 2 }, 0, 2, 2 );
  case gate_kind::poly_and_or:
    return make( { 1, 1 }, 1, 2, 2 );
  case gate_kind::poly_oa21_ao21:
    return make( { 1, 1, 2 }, 1, 3, 2 );
  case gate_kind::poly_and3_ao21:
    return make( { 1, 1, 2 }, 2, 4, 2 );
  case gate_kind::poly_ao21_or3:
    return make( { 1, 1, 2 }, 1, 2, 2 );
  case gate_kind::inv:
    return make( { 1 }, 0, 1, 1 );
  case gate_kind::generic_ct:
    break;
  }
  throw missing_parameters_error( "GENERIC_CT requires explicit weights, theta and stages" );
}

/*! \brief Builds a GENERIC_CT spec and checks its invariants */
inline gate_spec make_generic( std::vector<uint32_t> data_weights, uint32_t ctrl_weight, uint32_t theta, uint32_t n_stages,
                               uint32_t max_weight = default_max_weight )
{
  gate_spec g{ gate_kind::generic_ct, coupling_weights{ std::move( data_weights ), ctrl_weight }, margin_spec{ theta }, n_stages };
  validate( g, max_weight );
  return g;
}

/*! \brief Truth table stored LSB-first: entry i is the value for input vector i (input 0 = bit 0) */
using truth_table = std::vector<uint8_t>;

inline truth_table gate_truth_table( gate_spec const& g, bool ctrl )
{
  if ( g.arity() >= 32u )
    throw contract_error( "truth table: arity too large" );
  truth_table tt( std::size_t{1} << g.arity() );
  for ( uint64_t x = 0u; x < tt.size(); ++x )
    tt[x] = evaluate( g, x, ctrl ) ? 1u : 0u;
  return tt;
}

inline std::string to_string( truth_table const& tt )
{
  std::string s;
  s.reserve( tt.size() );
  for ( auto b : tt )
    s.push_back( b ? '1' : '0' );
  return s;
}

/*! \brief Parses an LSB-first binary string; length must be a power of two */
inline truth_table truth_table_from_string( std::string_view s )
{
  if ( s.empty() || ( s.size() & ( s.size() - 1u ) ) != 0u )
    throw contract_error( "truth table string length must be a power of two: '" + std::string( s ) + "'" );
  truth_table tt;
  tt.reserve( s.size() );
  for ( auto c : s )
  {
    if ( c != '0' && c != '1' )
      throw contract_error( "truth table string may only contain 0 and 1: '" + std::string( s ) + "'" );
    tt.push_back( c == '1' ? 1u : 0u );
  }
  return tt;
}

inline uint32_t truth_table_arity( truth_table const& tt )
{
  uint32_t n = 0u;
  while ( ( std::size_t{1} << n ) < tt.size() )
    ++n;
  return n;
}

/*! \brief Transistor cost: two per inverter stage plus the discharge transistor; INV is a plain pair */
inline uint32_t transistor_count( gate_spec const& g )
{
  if ( g.kind == gate_kind::inv )
    return 2u;
  return 2u * g.n_stages + 1u;
}

} // namespace ctpoly
