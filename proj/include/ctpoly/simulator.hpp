/*!
  \file simulator.hpp
  \brief Two-phase (discharge/evaluate) netlist simulation with fault injection
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "charge_model.hpp"
#include "netlist.hpp"

namespace ctpoly
{

struct stuck_at
{
  std::string net;
  bool value{false};

  auto operator<=>( stuck_at const& ) const = default;
};

/*! \brief Victim shorted to ground; the gate output reads 0 */
struct dead_gate
{
  std::string gate;

  auto operator<=>( dead_gate const& ) const = default;
};

/*! \brief Every gate of a netlist block is dead */
struct dead_block
{
  std::string block;

  auto operator<=>( dead_block const& ) const = default;
};

using fault = std::variant<stuck_at, dead_gate, dead_block>;

using fault_map = std::set<fault>;

inline std::string to_string( fault const& f )
{
  return std::visit(
      []( auto const& x ) -> std::string {
        using T = std::decay_t<decltype( x )>;
        if constexpr ( std::is_same_v<T, stuck_at> )
          return std::string( x.value ? "stuck-at-1:" : "stuck-at-0:" ) + x.net;
        else if constexpr ( std::is_same_v<T, dead_gate> )
          return "dead-gate:" + x.gate;
        else
          return "dead-block:" + x.block;
      },
      f );
}

/*! \brief Parses `stuck-at-0:<net>`, `stuck-at-1:<net>`, `dead-gate:<gate>` or `dead-block:<block>` */
inline std::optional<fault> parse_fault( std::string_view s )
{
  auto const colon = s.find( ':' );
  if ( colon == std::string_view::npos )
    return std::nullopt;
  auto const kind = s.substr( 0u, colon );
  auto const target = std::string( s.substr( colon + 1u ) );
  if ( !is_identifier( target ) )
    return std::nullopt;
  if ( kind == "stuck-at-0" || kind == "stuck-at-1" )
    return stuck_at{ target, kind == "stuck-at-1" };
  if ( kind == "dead-gate" )
    return dead_gate{ target };
  if ( kind == "dead-block" )
    return dead_block{ target };
  return std::nullopt;
}

/*! \brief Faults that kill every gate of the netlist */
inline fault_map kill_all( netlist const& n )
{
  fault_map m;
  for ( auto const& b : n.blocks() )
    m.insert( dead_block{ b } );
  return m;
}

struct discrete_mode
{
};

/*! \brief Threshold by induced level; without an explicit `v_threshold` every gate
           uses its default (midpoint) inverter level */
struct analog_mode
{
  rational c_parasitic{0};
  std::optional<rational> v_threshold;
};

using sim_mode = std::variant<discrete_mode, analog_mode>;

/*! \brief Net name to bit; ordered so traces print deterministically */
using assignment = std::map<std::string, bool>;

struct sim_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct cycle_record
{
  assignment inputs;
  assignment ctrls;
  /*! \brief victim level per gate, in netlist gate order */
  std::vector<rational> victim_levels;
  /*! \brief final value of every net */
  assignment nets;
  /*! \brief port values in declared output order */
  std::vector<std::pair<std::string, bool>> outputs;

  bool operator==( cycle_record const& ) const = default;

  bool output( std::string_view port ) const
  {
    for ( auto const& [p, v] : outputs )
    {
      if ( p == port )
        return v;
    }
    throw sim_error( "no output port '" + std::string( port ) + "'" );
  }
};

using sim_trace = std::vector<cycle_record>;

/*! \brief One expected cycle: the applied inputs and controls */
struct sim_vector
{
  assignment inputs;
  assignment ctrls;
};

/*! \brief Reusable evaluator for one netlist

  Caches the topological order and net indices; the netlist is copied in
  and never modified, so one simulator may serve concurrent callers.
*/
class simulator
{
public:
  explicit simulator( netlist n )
      : ntk_( std::move( n ) )
  {
    validate( ntk_ );
    order_ = topo_order( ntk_ );
    auto add_net = [this]( std::string const& name ) {
      if ( !net_index_.contains( name ) )
      {
        net_index_.emplace( name, net_names_.size() );
        net_names_.push_back( name );
      }
    };
    for ( auto const& i : ntk_.inputs )
      add_net( i );
    for ( auto const& c : ntk_.ctrls )
      add_net( c );
    for ( auto const& g : ntk_.gates )
      add_net( g.out_net );

    gate_in_.resize( ntk_.gates.size() );
    gate_ctrl_.resize( ntk_.gates.size() );
    gate_out_.resize( ntk_.gates.size() );
    for ( std::size_t i = 0u; i < ntk_.gates.size(); ++i )
    {
      auto const& g = ntk_.gates[i];
      for ( auto const& net : g.in_nets )
        gate_in_[i].push_back( net_index_.at( net ) );
      gate_ctrl_[i] = g.ctrl_net ? std::optional<std::size_t>( net_index_.at( *g.ctrl_net ) ) : std::nullopt;
      gate_out_[i] = net_index_.at( g.out_net );
    }
  }

  netlist const& network() const { return ntk_; }

  /*! \brief Throws `sim_error` if a fault names an element missing from the netlist */
  void check_faults( fault_map const& faults ) const { resolve( faults ); }

  /*! \brief One discharge phase followed by one evaluation phase

    Stuck-at faults override a net after its driver has evaluated; dead gates
    read 0 with a grounded victim. When both hit the same net, stuck-at wins.
  */
  cycle_record run_cycle( assignment const& inputs, assignment const& ctrls, sim_mode const& mode = discrete_mode{},
                          fault_map const& faults = {} ) const
  {
    auto const resolved = resolve( faults );

    std::vector<uint8_t> value( net_names_.size(), 0u );
    auto drive = [&]( std::vector<std::string> const& declared, assignment const& given, std::string_view what ) {
      for ( auto const& net : declared )
      {
        auto it = given.find( net );
        if ( it == given.end() )
          throw sim_error( "missing assignment for " + std::string( what ) + " '" + net + "'" );
        auto const idx = net_index_.at( net );
        value[idx] = it->second ? 1u : 0u;
        if ( resolved.stuck[idx] )
          value[idx] = *resolved.stuck[idx];
      }
      for ( auto const& [net, v] : given )
      {
        if ( std::find( declared.begin(), declared.end(), net ) == declared.end() )
          throw sim_error( "assignment names undeclared " + std::string( what ) + " '" + net + "'" );
      }
    };
    drive( ntk_.inputs, inputs, "input" );
    drive( ntk_.ctrls, ctrls, "ctrl" );

    cycle_record rec;
    rec.inputs = inputs;
    rec.ctrls = ctrls;
    /* discharge: every victim at ground */
    rec.victim_levels.assign( ntk_.gates.size(), rational( 0 ) );

    for ( auto const i : order_ )
    {
      auto const& g = ntk_.gates[i];
      uint64_t mask = 0u;
      for ( std::size_t k = 0u; k < gate_in_[i].size(); ++k )
      {
        if ( value[gate_in_[i][k]] )
          mask |= uint64_t{1} << k;
      }
      bool const ctrl = gate_ctrl_[i] && value[*gate_ctrl_[i]];

      bool out = false;
      if ( !resolved.dead[i] )
      {
        auto const analog = analog_for( g.spec, mode );
        rec.victim_levels[i] = induced_level( g.spec.weights, mask, ctrl, analog );
        bool const fire = std::holds_alternative<discrete_mode>( mode ) ? fires( g.spec.weights, g.spec.margin, mask, ctrl )
                                                                         : rec.victim_levels[i] >= analog.v_threshold;
        out = stage_output( fire, g.spec.n_stages );
      }
      auto const idx = gate_out_[i];
      value[idx] = out ? 1u : 0u;
      if ( resolved.stuck[idx] )
        value[idx] = *resolved.stuck[idx];
    }

    for ( std::size_t i = 0u; i < net_names_.size(); ++i )
      rec.nets.emplace( net_names_[i], value[i] != 0u );
    for ( auto const& o : ntk_.outputs )
      rec.outputs.emplace_back( o.port, value[net_index_.at( o.net )] != 0u );
    return rec;
  }

  /*! \brief Independent cycles; the discharge phase isolates each one */
  sim_trace run_sequence( std::vector<sim_vector> const& vectors, sim_mode const& mode = discrete_mode{}, fault_map const& faults = {} ) const
  {
    sim_trace trace;
    trace.reserve( vectors.size() );
    for ( auto const& v : vectors )
      trace.push_back( run_cycle( v.inputs, v.ctrls, mode, faults ) );
    return trace;
  }

private:
  struct resolved_faults
  {
    std::vector<std::optional<uint8_t>> stuck;
    std::vector<bool> dead;
  };

  resolved_faults resolve( fault_map const& faults ) const
  {
    resolved_faults r{ std::vector<std::optional<uint8_t>>( net_names_.size() ), std::vector<bool>( ntk_.gates.size(), false ) };
    for ( auto const& f : faults )
    {
      if ( auto const* s = std::get_if<stuck_at>( &f ) )
      {
        auto it = net_index_.find( s->net );
        if ( it == net_index_.end() )
          throw sim_error( "fault references unknown net '" + s->net + "'" );
        r.stuck[it->second] = s->value ? 1u : 0u;
      }
      else if ( auto const* d = std::get_if<dead_gate>( &f ) )
      {
        auto const idx = ntk_.find_gate( d->gate );
        if ( !idx )
          throw sim_error( "fault references unknown gate '" + d->gate + "'" );
        r.dead[*idx] = true;
      }
      else
      {
        auto const& b = std::get<dead_block>( f ).block;
        bool any = false;
        for ( std::size_t i = 0u; i < ntk_.gates.size(); ++i )
        {
          if ( ntk_.gates[i].block == b )
          {
            r.dead[i] = true;
            any = true;
          }
        }
        if ( !any )
          throw sim_error( "fault references unknown block '" + b + "'" );
      }
    }
    return r;
  }

  static analog_params analog_for( gate_spec const& spec, sim_mode const& mode )
  {
    if ( auto const* a = std::get_if<analog_mode>( &mode ) )
    {
      auto p = default_analog_params( spec.weights, spec.margin, a->c_parasitic );
      if ( a->v_threshold )
        p.v_threshold = *a->v_threshold;
      return p;
    }
    return analog_params{};
  }

  netlist ntk_;
  std::vector<std::size_t> order_;
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, std::size_t> net_index_;
  std::vector<std::vector<std::size_t>> gate_in_;
  std::vector<std::optional<std::size_t>> gate_ctrl_;
  std::vector<std::size_t> gate_out_;
};

/*! \brief Expected port values for one input assignment */
using output_oracle = std::function<assignment( assignment const& )>;

struct verify_failure
{
  assignment inputs;
  assignment expected;
  assignment actual;
};

struct verify_report
{
  uint64_t total{0};
  uint64_t passed{0};
  std::vector<verify_failure> failures;

  bool all_passed() const { return passed == total; }
};

inline constexpr std::size_t max_exhaustive_inputs = 16u;

/*! \brief Compares the netlist with `oracle` on every input assignment

  Input i of the netlist is bit i of the enumeration counter. Only the ports
  named by the oracle are compared.
*/
inline verify_report exhaustive_verify( simulator const& sim, assignment const& ctrls, output_oracle const& oracle,
                                        sim_mode const& mode = discrete_mode{}, fault_map const& faults = {} )
{
  auto const& inputs = sim.network().inputs;
  if ( inputs.size() > max_exhaustive_inputs )
    throw contract_error( "exhaustive_verify: too many inputs to enumerate" );

  verify_report report;
  for ( uint64_t x = 0u; x < ( uint64_t{1} << inputs.size() ); ++x )
  {
    assignment in;
    for ( std::size_t i = 0u; i < inputs.size(); ++i )
      in[inputs[i]] = ( x >> i ) & 1u;
    auto const expected = oracle( in );
    auto const rec = sim.run_cycle( in, ctrls, mode, faults );
    assignment actual;
    for ( auto const& [port, v] : expected )
      actual[port] = rec.output( port );
    ++report.total;
    if ( actual == expected )
      ++report.passed;
    else
      report.failures.push_back( verify_failure{ std::move( in ), expected, std::move( actual ) } );
  }
  return report;
}

/*! \brief Parses the vector format: one cycle per line of `name=bit` pairs, `#` comments

  Names are sorted into inputs and controls by the netlist's declarations.
*/
inline std::vector<sim_vector> parse_vectors( std::string_view text, netlist const& n )
{
  std::vector<sim_vector> vectors;
  std::size_t line_no = 0u;
  for ( auto raw : detail::split( text, '\n' ) )
  {
    ++line_no;
    if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
      raw = raw.substr( 0u, hash );
    auto const line = detail::trim( raw );
    if ( line.empty() )
      continue;
    sim_vector v;
    for ( auto tok : detail::tokenize( line ) )
    {
      auto const eq = tok.find( '=' );
      auto const name = std::string( tok.substr( 0u, eq == std::string_view::npos ? 0u : eq ) );
      auto const bit = eq == std::string_view::npos ? std::string_view{} : tok.substr( eq + 1u );
      if ( name.empty() || ( bit != "0" && bit != "1" ) )
        throw sim_error( "vectors line " + std::to_string( line_no ) + ": expected name=bit, got '" + std::string( tok ) + "'" );
      bool const is_input = std::find( n.inputs.begin(), n.inputs.end(), name ) != n.inputs.end();
      bool const is_ctrl = std::find( n.ctrls.begin(), n.ctrls.end(), name ) != n.ctrls.end();
      if ( !is_input && !is_ctrl )
        throw sim_error( "vectors line " + std::to_string( line_no ) + ": '" + name + "' is not an input or ctrl net" );
      ( is_input ? v.inputs : v.ctrls )[name] = bit == "1";
    }
    vectors.push_back( std::move( v ) );
  }
  return vectors;
}

} // namespace ctpoly
