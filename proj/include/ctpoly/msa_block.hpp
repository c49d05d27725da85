/*!
  \file msa_block.hpp
  \brief Polymorphic 2-bit Multiplier/Sorter/Adder block

  Inputs A1 A0 B1 B0, controls C1 C2, outputs Y3..Y0. Mode encodings
  (C1,C2): multiplier 01, sorter 11, adder 10; 00 is undefined and yields
  Y = 0000 in this construction.

  Structure:
    - `control`: derives one select line per mode (C3 multiplier, C4 sorter,
      C5 adder) from C1 and C2.
    - `shared`: partial products and complemented helper signals used by
      more than one term.
    - `mul`, `sort`, `add`: one polymorphic gate per output bit and mode.
      Its control aggressor is the mode select; with the select low the gate
      can never reach its margin, with it high the gate computes that mode's
      bit. Non-threshold bits (XORs, the sum bit) become threshold functions
      once a complemented helper is fed as an extra aggressor.
    - `merge`: one OR per output bit.

  The sorter orders the four operand bits (thermometer code of their
  popcount), so every sorter term is a unit-weight threshold gate.
*/

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "gate_library.hpp"
#include "netlist.hpp"
#include "simulator.hpp"

namespace ctpoly
{

enum class msa_mode
{
  multiplier,
  sorter,
  adder
};

inline constexpr std::array<msa_mode, 3> all_msa_modes{ msa_mode::multiplier, msa_mode::sorter, msa_mode::adder };

inline std::string_view to_string( msa_mode m )
{
  switch ( m )
  {
  case msa_mode::multiplier:
    return "mul";
  case msa_mode::sorter:
    return "sort";
  case msa_mode::adder:
    return "add";
  }
  return "?";
}

/*! \brief Accepts `mul`/`sort`/`add` and the single letters M/S/A */
inline std::optional<msa_mode> msa_mode_from_string( std::string_view s )
{
  if ( s == "mul" || s == "M" || s == "m" )
    return msa_mode::multiplier;
  if ( s == "sort" || s == "S" || s == "s" )
    return msa_mode::sorter;
  if ( s == "add" || s == "A" || s == "a" )
    return msa_mode::adder;
  return std::nullopt;
}

struct msa_controls
{
  bool c1{false};
  bool c2{false};
};

inline msa_controls mode_controls( msa_mode m )
{
  switch ( m )
  {
  case msa_mode::multiplier:
    return { false, true };
  case msa_mode::sorter:
    return { true, true };
  case msa_mode::adder:
    return { true, false };
  }
  return {};
}

inline uint8_t oracle_multiply( uint8_t a, uint8_t b )
{
  return static_cast<uint8_t>( ( a & 3u ) * ( b & 3u ) );
}

/*! \brief The four operand bits sorted descending: Y_{3-k} = 1 iff popcount > k */
inline uint8_t oracle_sort( uint8_t a, uint8_t b )
{
  auto const ones = std::popcount( static_cast<unsigned>( ( ( a & 3u ) << 2u ) | ( b & 3u ) ) );
  return static_cast<uint8_t>( ( 0xFu << ( 4 - ones ) ) & 0xFu );
}

inline uint8_t oracle_add( uint8_t a, uint8_t b )
{
  return static_cast<uint8_t>( ( a & 3u ) + ( b & 3u ) );
}

inline uint8_t msa_oracle( msa_mode m, uint8_t a, uint8_t b )
{
  switch ( m )
  {
  case msa_mode::multiplier:
    return oracle_multiply( a, b );
  case msa_mode::sorter:
    return oracle_sort( a, b );
  case msa_mode::adder:
    return oracle_add( a, b );
  }
  return 0u;
}

inline constexpr std::array<std::string_view, 4> msa_output_ports{ "Y3", "Y2", "Y1", "Y0" };

inline assignment msa_inputs( uint8_t a, uint8_t b )
{
  return { { "A1", ( a >> 1u ) & 1u }, { "A0", a & 1u }, { "B1", ( b >> 1u ) & 1u }, { "B0", b & 1u } };
}

inline assignment msa_ctrls( msa_mode m )
{
  auto const c = mode_controls( m );
  return { { "C1", c.c1 }, { "C2", c.c2 } };
}

/*! \brief Y3..Y0 packed as a 4-bit value */
inline uint8_t msa_result( cycle_record const& rec )
{
  uint8_t y = 0u;
  for ( auto const port : msa_output_ports )
    y = static_cast<uint8_t>( ( y << 1u ) | ( rec.output( port ) ? 1u : 0u ) );
  return y;
}

inline std::string bits_string( uint8_t value, uint32_t width )
{
  std::string s;
  for ( auto i = width; i-- > 0u; )
    s.push_back( ( ( value >> i ) & 1u ) ? '1' : '0' );
  return s;
}

/*! \brief Oracle over netlist input assignments for `exhaustive_verify` */
inline output_oracle msa_output_oracle( msa_mode m )
{
  return [m]( assignment const& in ) {
    uint8_t const a = static_cast<uint8_t>( ( in.at( "A1" ) << 1u ) | in.at( "A0" ) );
    uint8_t const b = static_cast<uint8_t>( ( in.at( "B1" ) << 1u ) | in.at( "B0" ) );
    auto const y = msa_oracle( m, a, b );
    assignment out;
    for ( std::size_t i = 0u; i < 4u; ++i )
      out[std::string( msa_output_ports[i] )] = ( y >> ( 3u - i ) ) & 1u;
    return out;
  };
}

namespace detail
{

class netlist_writer
{
public:
  explicit netlist_writer( netlist& n )
      : n_( n )
  {
  }

  void block( std::string name ) { block_ = std::move( name ); }

  void named( std::string name, gate_kind kind, std::vector<std::string> in, std::string out,
              std::optional<std::string> ctrl = std::nullopt )
  {
    push( std::move( name ), build_gate( kind ), std::move( in ), std::move( out ), std::move( ctrl ) );
  }

  void generic( std::string name, std::vector<uint32_t> weights, uint32_t ctrl_weight, uint32_t theta, uint32_t stages,
                std::vector<std::string> in, std::string out, std::optional<std::string> ctrl = std::nullopt )
  {
    push( std::move( name ), make_generic( std::move( weights ), ctrl_weight, theta, stages ), std::move( in ), std::move( out ),
          std::move( ctrl ) );
  }

private:
  void push( std::string name, gate_spec spec, std::vector<std::string> in, std::string out, std::optional<std::string> ctrl )
  {
    n_.gates.push_back( gate_instance{ std::move( name ), std::move( spec ), std::move( in ), std::move( ctrl ), std::move( out ), block_ } );
  }

  netlist& n_;
  std::string block_{top_block};
};

inline void declare_msa_ports( netlist& n )
{
  n.inputs = { "A1", "A0", "B1", "B0" };
  n.ctrls = { "C1", "C2" };
  for ( auto const port : msa_output_ports )
    n.outputs.push_back( { std::string( port ), std::string( port ) } );
}

/* C3/C4/C5: one-hot mode selects from (C1,C2) */
inline void write_mode_decoder( netlist_writer& w )
{
  w.block( "control" );
  w.named( "inv_c1", gate_kind::inv, { "C1" }, "nC1" );
  w.named( "inv_c2", gate_kind::inv, { "C2" }, "nC2" );
  w.named( "sel_mul", gate_kind::ct_and, { "nC1", "C2" }, "C3" );
  w.named( "sel_sort", gate_kind::ct_and, { "C1", "C2" }, "C4" );
  w.named( "sel_add", gate_kind::ct_and, { "C1", "nC2" }, "C5" );
}

} // namespace detail

/*! \brief Builds the polymorphic block (see file comment for the structure) */
inline netlist build_msa()
{
  netlist n;
  detail::declare_msa_ports( n );
  detail::netlist_writer w( n );

  detail::write_mode_decoder( w );

  w.block( "shared" );
  w.named( "and_a0b0", gate_kind::ct_and, { "A0", "B0" }, "a0b0" );
  w.named( "nand_a0b0", gate_kind::ct_nand, { "A0", "B0" }, "a0b0_n" );
  w.named( "and_a1b0", gate_kind::ct_and, { "A1", "B0" }, "a1b0" );
  w.named( "and_a0b1", gate_kind::ct_and, { "A0", "B1" }, "a0b1" );
  /* NOT(a1b0 AND a0b1) = NOT(all four bits set) */
  w.generic( "nand_all", { 1, 1, 1, 1 }, 0, 4, 1, { "A1", "A0", "B1", "B0" }, "all_n" );
  /* complemented carry out of bit 1 */
  w.generic( "carry_n", { 1, 1, 1 }, 0, 2, 1, { "A1", "B1", "a0b0" }, "c1_n" );

  w.block( "mul" );
  w.generic( "mul_y0", { 1, 1 }, 1, 3, 2, { "A0", "B0" }, "m0", "C3" );
  /* a1b0 XOR a0b1 */
  w.generic( "mul_y1", { 1, 1, 2 }, 1, 4, 2, { "a1b0", "a0b1", "all_n" }, "m1", "C3" );
  /* a1b1 AND NOT a0b0 */
  w.generic( "mul_y2", { 1, 1, 1 }, 1, 4, 2, { "A1", "B1", "a0b0_n" }, "m2", "C3" );
  w.generic( "mul_y3", { 1, 1, 1, 1 }, 1, 5, 2, { "A1", "A0", "B1", "B0" }, "m3", "C3" );

  /* popcount >= 4 - k, k = output bit */
  w.block( "sort" );
  w.generic( "sort_y0", { 1, 1, 1, 1 }, 1, 5, 2, { "A1", "A0", "B1", "B0" }, "s0", "C4" );
  w.generic( "sort_y1", { 1, 1, 1, 1 }, 2, 5, 2, { "A1", "A0", "B1", "B0" }, "s1", "C4" );
  w.generic( "sort_y2", { 1, 1, 1, 1 }, 3, 5, 2, { "A1", "A0", "B1", "B0" }, "s2", "C4" );
  w.generic( "sort_y3", { 1, 1, 1, 1 }, 4, 5, 2, { "A1", "A0", "B1", "B0" }, "s3", "C4" );

  w.block( "add" );
  /* A0 XOR B0 */
  w.generic( "add_y0", { 1, 1, 2 }, 1, 4, 2, { "A0", "B0", "a0b0_n" }, "a0", "C5" );
  /* A1 XOR B1 XOR carry0 */
  w.generic( "add_y1", { 1, 1, 1, 2 }, 1, 4, 2, { "A1", "B1", "a0b0", "c1_n" }, "a1", "C5" );
  /* majority(A1, B1, carry0) */
  w.generic( "add_y2", { 1, 1, 1 }, 2, 4, 2, { "A1", "B1", "a0b0" }, "a2", "C5" );

  w.block( "merge" );
  w.generic( "or_y0", { 1, 1, 1 }, 0, 1, 2, { "m0", "s0", "a0" }, "Y0" );
  w.generic( "or_y1", { 1, 1, 1 }, 0, 1, 2, { "m1", "s1", "a1" }, "Y1" );
  w.generic( "or_y2", { 1, 1, 1 }, 0, 1, 2, { "m2", "s2", "a2" }, "Y2" );
  w.named( "or_y3", gate_kind::ct_or, { "m3", "s3" }, "Y3" );

  validate( n );
  return n;
}

/*! \brief Reference design without polymorphism: three stand-alone fixed-function
           circuits plus an output multiplexer, same gate technology and accounting */
inline netlist build_msa_baseline()
{
  netlist n;
  detail::declare_msa_ports( n );
  detail::netlist_writer w( n );

  detail::write_mode_decoder( w );

  w.block( "multiplier" );
  w.named( "mp0", gate_kind::ct_and, { "A0", "B0" }, "mul_p0" );
  w.named( "mpp1", gate_kind::ct_and, { "A1", "B0" }, "mul_pp1" );
  w.named( "mpp2", gate_kind::ct_and, { "A0", "B1" }, "mul_pp2" );
  w.generic( "mall_n", { 1, 1, 1, 1 }, 0, 4, 1, { "A1", "A0", "B1", "B0" }, "mul_all_n" );
  w.generic( "mp1", { 1, 1, 2 }, 0, 3, 2, { "mul_pp1", "mul_pp2", "mul_all_n" }, "mul_p1" );
  w.named( "mp0_n", gate_kind::ct_nand, { "A0", "B0" }, "mul_p0_n" );
  w.generic( "mp2", { 1, 1, 1 }, 0, 3, 2, { "A1", "B1", "mul_p0_n" }, "mul_p2" );
  w.generic( "mp3", { 1, 1, 1, 1 }, 0, 4, 2, { "A1", "A0", "B1", "B0" }, "mul_p3" );

  w.block( "sorter" );
  for ( uint32_t k = 0u; k < 4u; ++k )
  {
    w.generic( "st" + std::to_string( k ), { 1, 1, 1, 1 }, 0, 4u - k, 2, { "A1", "A0", "B1", "B0" }, "sort_t" + std::to_string( k ) );
  }

  w.block( "adder" );
  w.named( "ac0", gate_kind::ct_and, { "A0", "B0" }, "add_c0" );
  w.named( "ac0_n", gate_kind::ct_nand, { "A0", "B0" }, "add_c0_n" );
  w.generic( "as0", { 1, 1, 2 }, 0, 3, 2, { "A0", "B0", "add_c0_n" }, "add_s0" );
  w.generic( "ac1_n", { 1, 1, 1 }, 0, 2, 1, { "A1", "B1", "add_c0" }, "add_c1_n" );
  w.generic( "as1", { 1, 1, 1, 2 }, 0, 3, 2, { "A1", "B1", "add_c0", "add_c1_n" }, "add_s1" );
  w.generic( "ac1", { 1, 1, 1 }, 0, 2, 2, { "A1", "B1", "add_c0" }, "add_c1" );

  /* select AND per (bit, mode), then OR per bit; the adder's Y3 is constant 0 */
  w.block( "mux" );
  std::array<std::array<std::string, 3>, 4> const sources{ { { "mul_p0", "sort_t0", "add_s0" },
                                                            { "mul_p1", "sort_t1", "add_s1" },
                                                            { "mul_p2", "sort_t2", "add_c1" },
                                                            { "mul_p3", "sort_t3", "" } } };
  std::array<std::string, 3> const selects{ "C3", "C4", "C5" };
  for ( std::size_t bit = 0u; bit < 4u; ++bit )
  {
    std::vector<std::string> terms;
    for ( std::size_t m = 0u; m < 3u; ++m )
    {
      if ( sources[bit][m].empty() )
        continue;
      auto const net = "mux_y" + std::to_string( bit ) + "_" + std::to_string( m );
      w.named( "g_" + net, gate_kind::ct_and, { selects[m], sources[bit][m] }, net );
      terms.push_back( net );
    }
    auto const y = "Y" + std::to_string( bit );
    if ( terms.size() == 2u )
      w.named( "or_" + y, gate_kind::ct_or, terms, y );
    else
      w.generic( "or_" + y, std::vector<uint32_t>( terms.size(), 1u ), 0, 1, 2, terms, y );
  }

  validate( n );
  return n;
}

/*! \brief Reference figures for the block: gate census and transistor total */
struct msa_reference_figures
{
  static constexpr uint32_t gates = 31u;
  static constexpr uint32_t crosstalk_gates = 25u;
  static constexpr uint32_t inverters = 6u;
  static constexpr uint32_t polymorphic_gates = 16u;
  static constexpr uint32_t transistors = 155u;
};

} // namespace ctpoly
