/*!
  \file ft_runtime.hpp
  \brief Fault discovery and recovery over a bank of polymorphic blocks

  Discovery configures every block for every functionality, drives known
  operand pairs and records in a health table whether all outputs matched.
  Recovery routes each instruction to the lowest-index block recorded as
  correct for its operation, configures it and reads its outputs.
*/

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "msa_block.hpp"
#include "netlist.hpp"
#include "simulator.hpp"

namespace ctpoly
{

struct bank_block
{
  std::string name;
  std::shared_ptr<simulator const> sim;
  fault_map faults;
};

/*! \brief Blocks sharing the multiplier/sorter/adder functionality universe */
class block_bank
{
public:
  block_bank() = default;

  /*! \brief `count` copies of the polymorphic block named block1..blockN */
  static block_bank msa_bank( std::size_t count )
  {
    block_bank bank;
    auto const sim = std::make_shared<simulator const>( build_msa() );
    for ( std::size_t i = 0u; i < count; ++i )
      bank.add( "block" + std::to_string( i + 1u ), sim );
    return bank;
  }

  void add( std::string name, std::shared_ptr<simulator const> sim )
  {
    if ( find( name ) )
      throw contract_error( "block bank: duplicate block name '" + name + "'" );
    blocks_.push_back( bank_block{ std::move( name ), std::move( sim ), {} } );
  }

  std::vector<bank_block> const& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  std::optional<std::size_t> find( std::string_view name ) const
  {
    for ( std::size_t i = 0u; i < blocks_.size(); ++i )
    {
      if ( blocks_[i].name == name )
        return i;
    }
    return std::nullopt;
  }

  /*! \brief Adds a fault to a block; the fault must reference an element of its netlist */
  void inject( std::string_view block, fault const& f )
  {
    auto& b = at( block );
    auto next = b.faults;
    next.insert( f );
    b.sim->check_faults( next );
    b.faults = std::move( next );
  }

  /*! \brief Kills every gate of a block */
  void kill( std::string_view block )
  {
    auto& b = at( block );
    for ( auto const& f : kill_all( b.sim->network() ) )
      b.faults.insert( f );
  }

private:
  bank_block& at( std::string_view name )
  {
    auto const idx = find( name );
    if ( !idx )
      throw contract_error( "block bank: unknown block '" + std::string( name ) + "'" );
    return blocks_[*idx];
  }

  std::vector<bank_block> blocks_;
};

enum class health
{
  untested,
  correct,
  incorrect
};

inline std::string_view to_string( health h )
{
  switch ( h )
  {
  case health::untested:
    return "untested";
  case health::correct:
    return "correct";
  case health::incorrect:
    return "incorrect";
  }
  return "?";
}

/*! \brief (block, functionality) -> verified status; the recovery lookup table */
class health_table
{
public:
  health get( std::string const& block, msa_mode op ) const
  {
    auto it = entries_.find( { block, op } );
    return it == entries_.end() ? health::untested : it->second;
  }

  void set( std::string const& block, msa_mode op, health h ) { entries_[{ block, op }] = h; }

  bool fully_discovered( block_bank const& bank ) const
  {
    for ( auto const& b : bank.blocks() )
    {
      for ( auto op : all_msa_modes )
      {
        if ( get( b.name, op ) == health::untested )
          return false;
      }
    }
    return true;
  }

  bool operator==( health_table const& ) const = default;

private:
  std::map<std::pair<std::string, msa_mode>, health> entries_;
};

struct operand_pair
{
  uint8_t a{0};
  uint8_t b{0};
};

using test_vector_sets = std::map<msa_mode, std::vector<operand_pair>>;

/*! \brief All 16 operand pairs for every functionality; discovery is then sound */
inline test_vector_sets exhaustive_test_vectors()
{
  test_vector_sets sets;
  for ( auto op : all_msa_modes )
  {
    for ( uint8_t a = 0u; a < 4u; ++a )
    {
      for ( uint8_t b = 0u; b < 4u; ++b )
        sets[op].push_back( { a, b } );
    }
  }
  return sets;
}

/*! \brief The six operand/mode combinations shown in the block's reference waveform

  Far from exhaustive: a block may pass these and still be wrong elsewhere.
*/
inline test_vector_sets reduced_test_vectors()
{
  test_vector_sets sets;
  for ( auto op : all_msa_modes )
    sets[op] = { { 3u, 2u }, { 2u, 1u } };
  return sets;
}

/*! \brief Runs the discovery routine over every block and functionality */
inline health_table discover( block_bank const& bank, test_vector_sets const& tests = exhaustive_test_vectors(),
                              sim_mode const& mode = discrete_mode{} )
{
  health_table table;
  for ( auto const& b : bank.blocks() )
  {
    for ( auto op : all_msa_modes )
    {
      auto it = tests.find( op );
      if ( it == tests.end() || it->second.empty() )
        throw contract_error( "discover: empty test vector set for " + std::string( to_string( op ) ) );
      auto const ctrls = msa_ctrls( op );
      bool ok = true;
      for ( auto const& v : it->second )
      {
        auto const rec = b.sim->run_cycle( msa_inputs( v.a, v.b ), ctrls, mode, b.faults );
        if ( msa_result( rec ) != msa_oracle( op, v.a, v.b ) )
        {
          ok = false;
          break;
        }
      }
      table.set( b.name, op, ok ? health::correct : health::incorrect );
    }
  }
  return table;
}

struct instruction
{
  msa_mode op{msa_mode::multiplier};
  uint8_t a{0};
  uint8_t b{0};
  std::size_t id{0};
};

struct dispatch_result
{
  /*! \brief 4-bit block output; empty when the instruction is unrecoverable */
  std::optional<uint8_t> value;
  std::optional<std::size_t> block;

  bool unrecoverable() const { return !value.has_value(); }
};

/*! \brief Routes one instruction to the first block recorded correct for its op */
inline dispatch_result dispatch( instruction const& instr, health_table const& table, block_bank const& bank,
                                 sim_mode const& mode = discrete_mode{} )
{
  auto const& blocks = bank.blocks();
  for ( std::size_t i = 0u; i < blocks.size(); ++i )
  {
    if ( table.get( blocks[i].name, instr.op ) != health::correct )
      continue;
    auto const rec = blocks[i].sim->run_cycle( msa_inputs( instr.a, instr.b ), msa_ctrls( instr.op ), mode, blocks[i].faults );
    return { msa_result( rec ), i };
  }
  return {};
}

/*! \brief Marker for a schedule entry that kills a whole bank block */
struct block_kill
{
  bool operator==( block_kill const& ) const = default;
};

struct scheduled_fault
{
  /*! \brief the fault is injected before the instruction with this id executes */
  std::size_t before_instruction{0};
  std::variant<fault, block_kill> what;
  std::string block;
};

struct workload_event
{
  std::size_t time{0};
  std::string kind;
  std::string detail;

  bool operator==( workload_event const& ) const = default;
};

struct workload_config
{
  /*! \brief re-run discovery before every N-th instruction; empty = only once at start */
  std::optional<std::size_t> rediscover_every;
  test_vector_sets tests = exhaustive_test_vectors();
  sim_mode mode = discrete_mode{};
};

struct workload_result
{
  std::vector<dispatch_result> results;
  std::vector<workload_event> log;
  block_bank final_bank;
};

namespace detail
{

inline std::string describe( health_table const& t, block_bank const& bank )
{
  std::ostringstream os;
  bool first = true;
  for ( auto const& b : bank.blocks() )
  {
    for ( auto op : all_msa_modes )
    {
      os << ( first ? "" : " " ) << b.name << "." << to_string( op ) << "=" << to_string( t.get( b.name, op ) );
      first = false;
    }
  }
  return os.str();
}

} // namespace detail

/*! \brief Executes a program over the bank with scheduled faults and periodic discovery

  Per instruction: scheduled faults are injected, discovery runs if due (the
  first instruction always triggers it), then the instruction is dispatched.
  Routing to any block other than the first is logged as a reroute; routing
  with a table older than the latest injected fault is flagged stale.
*/
inline workload_result run_workload( std::vector<instruction> const& program, block_bank bank, workload_config const& cfg = {},
                                     std::vector<scheduled_fault> const& schedule = {} )
{
  if ( cfg.rediscover_every && *cfg.rediscover_every == 0u )
    throw contract_error( "run_workload: rediscover_every must be positive" );

  workload_result out;
  health_table table;
  bool stale = false;

  for ( std::size_t i = 0u; i < program.size(); ++i )
  {
    auto const& instr = program[i];
    for ( auto const& s : schedule )
    {
      if ( s.before_instruction != instr.id )
        continue;
      if ( std::holds_alternative<block_kill>( s.what ) )
      {
        bank.kill( s.block );
        out.log.push_back( { i, "fault", "block=" + s.block + " fault=dead" } );
      }
      else
      {
        auto const& f = std::get<fault>( s.what );
        bank.inject( s.block, f );
        out.log.push_back( { i, "fault", "block=" + s.block + " fault=" + to_string( f ) } );
      }
      stale = true;
    }

    if ( i == 0u || ( cfg.rediscover_every && i % *cfg.rediscover_every == 0u ) )
    {
      table = discover( bank, cfg.tests, cfg.mode );
      stale = false;
      out.log.push_back( { i, "discover", detail::describe( table, bank ) } );
    }

    auto r = dispatch( instr, table, bank, cfg.mode );
    std::ostringstream os;
    os << "id=" << instr.id << " op=" << to_string( instr.op ) << " a=" << bits_string( instr.a, 2u ) << " b=" << bits_string( instr.b, 2u );
    if ( r.unrecoverable() )
    {
      out.log.push_back( { i, "unrecoverable", os.str() } );
    }
    else
    {
      os << " block=" << bank.blocks()[*r.block].name << " result=" << bits_string( *r.value, 4u ) << " stale=" << ( stale ? 1 : 0 );
      out.log.push_back( { i, *r.block == 0u ? "route" : "reroute", os.str() } );
    }
    out.results.push_back( r );
  }
  out.final_bank = std::move( bank );
  return out;
}

struct format_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::optional<uint8_t> parse_bits2( std::string_view s )
{
  if ( s.size() != 2u || ( s[0] != '0' && s[0] != '1' ) || ( s[1] != '0' && s[1] != '1' ) )
    return std::nullopt;
  return static_cast<uint8_t>( ( ( s[0] - '0' ) << 1 ) | ( s[1] - '0' ) );
}

} // namespace detail

/*! \brief Program format: one `<op> <a:2 bits> <b:2 bits>` per line; ids count from 0 */
inline std::vector<instruction> parse_program( std::string_view text )
{
  std::vector<instruction> program;
  std::size_t line_no = 0u;
  for ( auto raw : detail::split( text, '\n' ) )
  {
    ++line_no;
    if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
      raw = raw.substr( 0u, hash );
    auto const line = detail::trim( raw );
    if ( line.empty() )
      continue;
    auto const tok = detail::tokenize( line );
    auto const op = tok.size() == 3u ? msa_mode_from_string( tok[0] ) : std::nullopt;
    auto const a = tok.size() == 3u ? detail::parse_bits2( tok[1] ) : std::nullopt;
    auto const b = tok.size() == 3u ? detail::parse_bits2( tok[2] ) : std::nullopt;
    if ( !op || !a || !b )
      throw format_error( "program line " + std::to_string( line_no ) + ": expected '<mul|sort|add> <2 bits> <2 bits>'" );
    program.push_back( instruction{ *op, *a, *b, program.size() } );
  }
  return program;
}

/*! \brief Schedule format: `<instr-id> <fault-spec> <block>` per line

  fault-spec is `dead` (whole block) or a netlist fault as accepted by `parse_fault`.
*/
inline std::vector<scheduled_fault> parse_fault_schedule( std::string_view text )
{
  std::vector<scheduled_fault> schedule;
  std::size_t line_no = 0u;
  for ( auto raw : detail::split( text, '\n' ) )
  {
    ++line_no;
    if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
      raw = raw.substr( 0u, hash );
    auto const line = detail::trim( raw );
    if ( line.empty() )
      continue;
    auto const tok = detail::tokenize( line );
    auto const where = "schedule line " + std::to_string( line_no ) + ": ";
    if ( tok.size() != 3u )
      throw format_error( where + "expected '<instr-id> <fault-spec> <block>'" );
    auto const id = detail::parse_uint( tok[0] );
    if ( !id )
      throw format_error( where + "bad instruction id '" + std::string( tok[0] ) + "'" );
    scheduled_fault s;
    s.before_instruction = *id;
    s.block = std::string( tok[2] );
    if ( tok[1] == "dead" )
    {
      s.what = block_kill{};
    }
    else if ( auto f = parse_fault( tok[1] ) )
    {
      s.what = *f;
    }
    else
    {
      throw format_error( where + "bad fault spec '" + std::string( tok[1] ) + "'" );
    }
    schedule.push_back( std::move( s ) );
  }
  return schedule;
}

/*! \brief Deterministic mixed program cycling through the three operations */
inline std::vector<instruction> mixed_program( std::size_t length )
{
  std::vector<instruction> program;
  for ( std::size_t i = 0u; i < length; ++i )
  {
    auto const op = all_msa_modes[i % 3u];
    auto const a = static_cast<uint8_t>( ( i * 7u + 3u ) % 4u );
    auto const b = static_cast<uint8_t>( ( i * 5u + 2u ) % 4u );
    program.push_back( instruction{ op, a, b, i } );
  }
  return program;
}

} // namespace ctpoly
