/*!
  \file netlist.hpp
  \brief Crosstalk gate netlists: text format, validation, ordering, accounting

  Text format, one statement per line, `#` starts a comment:

      input <net>
      ctrl <net>
      output <port>=<net>
      gate <name> kind=<KIND> in=<net>(,<net>)* [ctrl=<net>] out=<net>
           [weights=<int>(,<int>)* theta=<int> ctrl_weight=<int> stages=<1|2>]
      block <name> {
        <gate lines>
      }

  The bracketed parameter group is mandatory for GENERIC_CT and forbidden
  for every named kind. Gates outside a block belong to block `_top`. The
  discharge signal is global to the simulator and never appears as a net.
*/

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gate_library.hpp"

namespace ctpoly
{

inline constexpr std::string_view top_block = "_top";

struct gate_instance
{
  std::string name;
  gate_spec spec;
  /*! \brief data aggressor nets, in coupling-weight order */
  std::vector<std::string> in_nets;
  std::optional<std::string> ctrl_net;
  std::string out_net;
  std::string block{top_block};

  bool operator==( gate_instance const& ) const = default;
};

struct output_port
{
  std::string port;
  std::string net;

  bool operator==( output_port const& ) const = default;
};

struct netlist
{
  std::vector<std::string> inputs;
  std::vector<std::string> ctrls;
  std::vector<output_port> outputs;
  std::vector<gate_instance> gates;

  bool operator==( netlist const& ) const = default;

  std::optional<std::size_t> find_gate( std::string_view name ) const
  {
    for ( std::size_t i = 0u; i < gates.size(); ++i )
    {
      if ( gates[i].name == name )
        return i;
    }
    return std::nullopt;
  }

  /*! \brief block names in order of first appearance */
  std::vector<std::string> blocks() const
  {
    std::vector<std::string> names;
    for ( auto const& g : gates )
    {
      if ( std::find( names.begin(), names.end(), g.block ) == names.end() )
        names.push_back( g.block );
    }
    return names;
  }
};

enum class netlist_errc
{
  syntax,
  undefined_net,
  multiple_drivers,
  cycle,
  arity_mismatch,
  missing_parameter,
  duplicate_name
};

inline std::string_view to_string( netlist_errc e )
{
  switch ( e )
  {
  case netlist_errc::syntax:
    return "syntax error";
  case netlist_errc::undefined_net:
    return "undefined net";
  case netlist_errc::multiple_drivers:
    return "multiple drivers";
  case netlist_errc::cycle:
    return "cycle detected";
  case netlist_errc::arity_mismatch:
    return "arity mismatch";
  case netlist_errc::missing_parameter:
    return "missing parameter";
  case netlist_errc::duplicate_name:
    return "duplicate name";
  }
  return "error";
}

struct diagnostic
{
  netlist_errc code;
  /*! \brief 1-based source line, 0 for netlists built in code */
  std::size_t line{0};
  std::string message;
};

inline std::string to_string( diagnostic const& d )
{
  std::string s = d.line > 0u ? "line " + std::to_string( d.line ) + ": " : std::string{};
  return s + std::string( to_string( d.code ) ) + ": " + d.message;
}

class netlist_error : public std::runtime_error
{
public:
  explicit netlist_error( std::vector<diagnostic> diags )
      : std::runtime_error( diags.empty() ? std::string( "netlist error" ) : to_string( diags.front() ) ),
        diagnostics_( std::move( diags ) )
  {
  }

  std::vector<diagnostic> const& diagnostics() const { return diagnostics_; }
  netlist_errc code() const { return diagnostics_.front().code; }

private:
  std::vector<diagnostic> diagnostics_;
};

inline bool is_identifier( std::string_view s )
{
  if ( s.empty() )
    return false;
  auto alpha = []( char c ) { return ( c >= 'A' && c <= 'Z' ) || ( c >= 'a' && c <= 'z' ) || c == '_'; };
  auto digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( s.front() ) )
    return false;
  return std::all_of( s.begin() + 1, s.end(), [&]( char c ) { return alpha( c ) || digit( c ); } );
}

namespace detail
{

/* source lines of declarations, filled by the parser */
struct source_map
{
  std::vector<std::size_t> input_lines;
  std::vector<std::size_t> ctrl_lines;
  std::vector<std::size_t> output_lines;
  std::vector<std::size_t> gate_lines;
};

inline std::size_t line_of( std::vector<std::size_t> const* lines, std::size_t i )
{
  return lines && i < lines->size() ? ( *lines )[i] : 0u;
}

/* Kahn's algorithm; smallest gate index first among ready gates. Returns the
   order and, when incomplete, leaves unplaced gates out. */
inline std::vector<std::size_t> kahn_order( netlist const& n )
{
  std::unordered_map<std::string, std::size_t> driver_gate;
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
    driver_gate.emplace( n.gates[i].out_net, i );

  std::vector<std::vector<std::size_t>> fanout( n.gates.size() );
  std::vector<std::size_t> pending( n.gates.size(), 0u );
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
  {
    auto const& g = n.gates[i];
    auto link = [&]( std::string const& net ) {
      if ( auto it = driver_gate.find( net ); it != driver_gate.end() )
      {
        fanout[it->second].push_back( i );
        ++pending[i];
      }
    };
    for ( auto const& net : g.in_nets )
      link( net );
    if ( g.ctrl_net )
      link( *g.ctrl_net );
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
  {
    if ( pending[i] == 0u )
      ready.push( i );
  }
  std::vector<std::size_t> order;
  order.reserve( n.gates.size() );
  while ( !ready.empty() )
  {
    auto const i = ready.top();
    ready.pop();
    order.push_back( i );
    for ( auto j : fanout[i] )
    {
      if ( --pending[j] == 0u )
        ready.push( j );
    }
  }
  return order;
}

inline std::vector<diagnostic> check_structure( netlist const& n, source_map const* src = nullptr )
{
  std::vector<diagnostic> diags;
  auto report = [&]( netlist_errc code, std::size_t line, std::string msg ) {
    diags.push_back( diagnostic{ code, line, std::move( msg ) } );
  };

  /* names */
  std::set<std::string> gate_names, port_names;
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
  {
    auto const& g = n.gates[i];
    auto const line = line_of( src ? &src->gate_lines : nullptr, i );
    if ( !is_identifier( g.name ) )
      report( netlist_errc::syntax, line, "invalid gate name '" + g.name + "'" );
    if ( !gate_names.insert( g.name ).second )
      report( netlist_errc::duplicate_name, line, "gate '" + g.name + "' declared twice" );
    if ( !is_identifier( g.block ) )
      report( netlist_errc::syntax, line, "invalid block name '" + g.block + "'" );
  }
  for ( std::size_t i = 0u; i < n.outputs.size(); ++i )
  {
    if ( !port_names.insert( n.outputs[i].port ).second )
      report( netlist_errc::duplicate_name, line_of( src ? &src->output_lines : nullptr, i ),
              "output port '" + n.outputs[i].port + "' declared twice" );
  }

  /* gate shapes */
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
  {
    auto const& g = n.gates[i];
    auto const line = line_of( src ? &src->gate_lines : nullptr, i );
    try
    {
      validate( g.spec );
    }
    catch ( contract_error const& e )
    {
      report( netlist_errc::syntax, line, "gate '" + g.name + "': " + e.what() );
      continue;
    }
    if ( g.in_nets.size() != g.spec.arity() )
    {
      report( netlist_errc::arity_mismatch, line,
              "gate '" + g.name + "' of kind " + std::string( to_string( g.spec.kind ) ) + " expects " +
                  std::to_string( g.spec.arity() ) + " inputs, got " + std::to_string( g.in_nets.size() ) );
    }
    if ( g.ctrl_net.has_value() != g.spec.has_ctrl() )
    {
      report( netlist_errc::arity_mismatch, line,
              "gate '" + g.name + "' " + ( g.spec.has_ctrl() ? "requires a ctrl net" : "has no control aggressor but a ctrl net is given" ) );
    }
  }

  /* drivers */
  std::map<std::string, std::vector<std::size_t>> drivers;
  for ( std::size_t i = 0u; i < n.inputs.size(); ++i )
    drivers[n.inputs[i]].push_back( line_of( src ? &src->input_lines : nullptr, i ) );
  for ( std::size_t i = 0u; i < n.ctrls.size(); ++i )
    drivers[n.ctrls[i]].push_back( line_of( src ? &src->ctrl_lines : nullptr, i ) );
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
    drivers[n.gates[i].out_net].push_back( line_of( src ? &src->gate_lines : nullptr, i ) );
  for ( auto const& [net, lines] : drivers )
  {
    if ( !is_identifier( net ) )
      report( netlist_errc::syntax, lines.front(), "invalid net name '" + net + "'" );
    if ( lines.size() > 1u )
      report( netlist_errc::multiple_drivers, lines[1], "net '" + net + "' has " + std::to_string( lines.size() ) + " drivers" );
  }

  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
  {
    auto const& g = n.gates[i];
    auto const line = line_of( src ? &src->gate_lines : nullptr, i );
    for ( auto const& net : g.in_nets )
    {
      if ( !drivers.contains( net ) )
        report( netlist_errc::undefined_net, line, "gate '" + g.name + "' reads undriven net '" + net + "'" );
    }
    if ( g.ctrl_net && !drivers.contains( *g.ctrl_net ) )
      report( netlist_errc::undefined_net, line, "gate '" + g.name + "' reads undriven ctrl net '" + *g.ctrl_net + "'" );
  }
  for ( std::size_t i = 0u; i < n.outputs.size(); ++i )
  {
    if ( !drivers.contains( n.outputs[i].net ) )
      report( netlist_errc::undefined_net, line_of( src ? &src->output_lines : nullptr, i ),
              "output '" + n.outputs[i].port + "' refers to undriven net '" + n.outputs[i].net + "'" );
  }

  /* acyclicity, only meaningful with unique drivers */
  if ( diags.empty() )
  {
    auto const order = kahn_order( n );
    if ( order.size() != n.gates.size() )
    {
      std::vector<bool> placed( n.gates.size(), false );
      for ( auto i : order )
        placed[i] = true;
      for ( std::size_t i = 0u; i < n.gates.size(); ++i )
      {
        if ( !placed[i] )
        {
          report( netlist_errc::cycle, line_of( src ? &src->gate_lines : nullptr, i ),
                  "gate '" + n.gates[i].name + "' lies on or behind a combinational cycle" );
          break;
        }
      }
    }
  }
  return diags;
}

inline std::string_view trim( std::string_view s )
{
  auto const b = s.find_first_not_of( " \t\r" );
  if ( b == std::string_view::npos )
    return {};
  auto const e = s.find_last_not_of( " \t\r" );
  return s.substr( b, e - b + 1u );
}

inline std::vector<std::string_view> split( std::string_view s, char sep )
{
  std::vector<std::string_view> parts;
  std::size_t start = 0u;
  while ( true )
  {
    auto const pos = s.find( sep, start );
    parts.push_back( s.substr( start, pos == std::string_view::npos ? std::string_view::npos : pos - start ) );
    if ( pos == std::string_view::npos )
      break;
    start = pos + 1u;
  }
  return parts;
}

inline std::vector<std::string_view> tokenize( std::string_view s )
{
  std::vector<std::string_view> tokens;
  std::size_t i = 0u;
  while ( i < s.size() )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' ) )
      ++i;
    auto const start = i;
    while ( i < s.size() && s[i] != ' ' && s[i] != '\t' )
      ++i;
    if ( i > start )
      tokens.push_back( s.substr( start, i - start ) );
  }
  return tokens;
}

inline std::optional<uint32_t> parse_uint( std::string_view s )
{
  uint32_t value{};
  auto const [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), value );
  if ( ec != std::errc{} || ptr != s.data() + s.size() )
    return std::nullopt;
  return value;
}

} // namespace detail

/*! \brief Checks every netlist invariant; throws `netlist_error` listing all violations */
inline void validate( netlist const& n )
{
  if ( auto diags = detail::check_structure( n ); !diags.empty() )
    throw netlist_error( std::move( diags ) );
}

/*! \brief Parses the netlist text format and validates the result */
inline netlist parse_netlist( std::string_view text )
{
  netlist n;
  detail::source_map src;
  std::vector<diagnostic> diags;
  std::optional<std::string> open_block;
  std::size_t open_block_line = 0u;

  auto syntax = [&]( std::size_t line, std::string msg ) {
    diags.push_back( diagnostic{ netlist_errc::syntax, line, std::move( msg ) } );
  };

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
    auto const& head = tok.front();

    if ( head == "}" )
    {
      if ( tok.size() != 1u )
        syntax( line_no, "unexpected tokens after '}'" );
      if ( !open_block )
        syntax( line_no, "'}' without open block" );
      open_block.reset();
      continue;
    }

    if ( head == "input" || head == "ctrl" )
    {
      if ( open_block )
        syntax( line_no, "only gate statements are allowed inside a block" );
      if ( tok.size() != 2u || !is_identifier( tok[1] ) )
      {
        syntax( line_no, "expected '" + std::string( head ) + " <net>'" );
        continue;
      }
      auto& list = head == "input" ? n.inputs : n.ctrls;
      auto& lines = head == "input" ? src.input_lines : src.ctrl_lines;
      list.emplace_back( tok[1] );
      lines.push_back( line_no );
      continue;
    }

    if ( head == "output" )
    {
      if ( open_block )
        syntax( line_no, "only gate statements are allowed inside a block" );
      auto const eq = tok.size() == 2u ? tok[1].find( '=' ) : std::string_view::npos;
      if ( eq == std::string_view::npos || !is_identifier( tok[1].substr( 0u, eq ) ) || !is_identifier( tok[1].substr( eq + 1u ) ) )
      {
        syntax( line_no, "expected 'output <port>=<net>'" );
        continue;
      }
      n.outputs.push_back( output_port{ std::string( tok[1].substr( 0u, eq ) ), std::string( tok[1].substr( eq + 1u ) ) } );
      src.output_lines.push_back( line_no );
      continue;
    }

    if ( head == "block" )
    {
      if ( open_block )
      {
        syntax( line_no, "nested block" );
        continue;
      }
      if ( tok.size() != 3u || tok[2] != "{" || !is_identifier( tok[1] ) )
      {
        syntax( line_no, "expected 'block <name> {'" );
        continue;
      }
      open_block = std::string( tok[1] );
      open_block_line = line_no;
      continue;
    }

    if ( head != "gate" )
    {
      syntax( line_no, "unknown statement '" + std::string( head ) + "'" );
      continue;
    }

    if ( tok.size() < 2u || !is_identifier( tok[1] ) )
    {
      syntax( line_no, "expected 'gate <name> key=value...'" );
      continue;
    }
    std::map<std::string, std::string, std::less<>> kv;
    bool ok = true;
    for ( std::size_t i = 2u; i < tok.size(); ++i )
    {
      auto const eq = tok[i].find( '=' );
      if ( eq == std::string_view::npos || eq == 0u || eq + 1u == tok[i].size() )
      {
        syntax( line_no, "malformed attribute '" + std::string( tok[i] ) + "'" );
        ok = false;
        break;
      }
      auto key = std::string( tok[i].substr( 0u, eq ) );
      static std::set<std::string, std::less<>> const known{ "kind", "in", "ctrl", "out", "weights", "theta", "ctrl_weight", "stages" };
      if ( !known.contains( key ) )
      {
        syntax( line_no, "unknown attribute '" + key + "'" );
        ok = false;
        break;
      }
      if ( !kv.emplace( key, std::string( tok[i].substr( eq + 1u ) ) ).second )
      {
        syntax( line_no, "attribute '" + key + "' given twice" );
        ok = false;
        break;
      }
    }
    if ( !ok )
      continue;

    for ( auto key : { "kind", "in", "out" } )
    {
      if ( !kv.contains( key ) )
      {
        diags.push_back( diagnostic{ netlist_errc::missing_parameter, line_no, "gate '" + std::string( tok[1] ) + "' lacks " + key + "=" } );
        ok = false;
      }
    }
    if ( !ok )
      continue;

    auto const kind = gate_kind_from_string( kv.at( "kind" ) );
    if ( !kind )
    {
      syntax( line_no, "unknown gate kind '" + kv.at( "kind" ) + "'" );
      continue;
    }

    gate_instance g;
    g.name = std::string( tok[1] );
    g.block = open_block.value_or( std::string( top_block ) );
    g.out_net = kv.at( "out" );
    for ( auto net : detail::split( kv.at( "in" ), ',' ) )
      g.in_nets.emplace_back( net );
    if ( auto it = kv.find( "ctrl" ); it != kv.end() )
      g.ctrl_net = it->second;

    bool const has_params = kv.contains( "weights" ) || kv.contains( "theta" ) || kv.contains( "ctrl_weight" ) || kv.contains( "stages" );
    if ( *kind == gate_kind::generic_ct )
    {
      std::vector<std::string> missing;
      for ( auto key : { "weights", "theta", "ctrl_weight", "stages" } )
      {
        if ( !kv.contains( key ) )
          missing.emplace_back( key );
      }
      if ( !missing.empty() )
      {
        std::string list;
        for ( auto const& m : missing )
          list += ( list.empty() ? "" : ", " ) + m;
        diags.push_back( diagnostic{ netlist_errc::missing_parameter, line_no, "GENERIC_CT gate '" + g.name + "' lacks " + list } );
        continue;
      }
      std::vector<uint32_t> weights;
      for ( auto w : detail::split( kv.at( "weights" ), ',' ) )
      {
        auto v = detail::parse_uint( w );
        if ( !v )
        {
          ok = false;
          break;
        }
        weights.push_back( *v );
      }
      auto const theta = detail::parse_uint( kv.at( "theta" ) );
      auto const ctrl_weight = detail::parse_uint( kv.at( "ctrl_weight" ) );
      auto const stages = detail::parse_uint( kv.at( "stages" ) );
      if ( !ok || !theta || !ctrl_weight || !stages )
      {
        syntax( line_no, "GENERIC_CT parameters must be nonnegative integers" );
        continue;
      }
      g.spec = gate_spec{ gate_kind::generic_ct, coupling_weights{ std::move( weights ), *ctrl_weight }, margin_spec{ *theta }, *stages };
    }
    else
    {
      if ( has_params )
      {
        syntax( line_no, "named kind " + kv.at( "kind" ) + " does not accept weights/theta/ctrl_weight/stages" );
        continue;
      }
      g.spec = build_gate( *kind );
    }
    n.gates.push_back( std::move( g ) );
    src.gate_lines.push_back( line_no );
  }

  if ( open_block )
    syntax( open_block_line, "block '" + *open_block + "' is never closed" );

  if ( diags.empty() )
    diags = detail::check_structure( n, &src );
  if ( !diags.empty() )
    throw netlist_error( std::move( diags ) );
  return n;
}

namespace detail
{

inline std::string gate_line( gate_instance const& g )
{
  std::ostringstream os;
  os << "gate " << g.name << " kind=" << to_string( g.spec.kind ) << " in=";
  for ( std::size_t i = 0u; i < g.in_nets.size(); ++i )
    os << ( i ? "," : "" ) << g.in_nets[i];
  if ( g.ctrl_net )
    os << " ctrl=" << *g.ctrl_net;
  os << " out=" << g.out_net;
  if ( g.spec.kind == gate_kind::generic_ct )
  {
    os << " weights=";
    for ( std::size_t i = 0u; i < g.spec.weights.data.size(); ++i )
      os << ( i ? "," : "" ) << g.spec.weights.data[i];
    os << " theta=" << g.spec.margin.theta << " ctrl_weight=" << g.spec.weights.ctrl << " stages=" << g.spec.n_stages;
  }
  return os.str();
}

} // namespace detail

/*! \brief Writes the canonical text form; runs of gates sharing a block are grouped */
inline std::string serialize( netlist const& n )
{
  std::ostringstream os;
  for ( auto const& i : n.inputs )
    os << "input " << i << "\n";
  for ( auto const& c : n.ctrls )
    os << "ctrl " << c << "\n";
  for ( auto const& o : n.outputs )
    os << "output " << o.port << "=" << o.net << "\n";

  std::optional<std::string> current;
  for ( auto const& g : n.gates )
  {
    bool const top = g.block == top_block;
    if ( current && ( top || *current != g.block ) )
    {
      os << "}\n";
      current.reset();
    }
    if ( !top && !current )
    {
      os << "block " << g.block << " {\n";
      current = g.block;
    }
    os << ( current ? "  " : "" ) << detail::gate_line( g ) << "\n";
  }
  if ( current )
    os << "}\n";
  return os.str();
}

/*! \brief Gate indices such that every gate follows the drivers of its inputs

  Ties are broken by declaration order, so the result is deterministic.
*/
inline std::vector<std::size_t> topo_order( netlist const& n )
{
  auto order = detail::kahn_order( n );
  if ( order.size() != n.gates.size() )
    throw netlist_error( { diagnostic{ netlist_errc::cycle, 0u, "netlist contains a combinational cycle" } } );
  return order;
}

inline uint32_t total_transistors( netlist const& n )
{
  uint32_t total = 0u;
  for ( auto const& g : n.gates )
    total += transistor_count( g.spec );
  return total;
}

/*! \brief Nets in the transitive fan-in of `roots`, roots included */
inline std::set<std::string> fanin_cone( netlist const& n, std::vector<std::string> const& roots )
{
  std::unordered_map<std::string, std::size_t> driver;
  for ( std::size_t i = 0u; i < n.gates.size(); ++i )
    driver.emplace( n.gates[i].out_net, i );

  std::set<std::string> seen;
  std::vector<std::string> stack( roots.begin(), roots.end() );
  while ( !stack.empty() )
  {
    auto net = std::move( stack.back() );
    stack.pop_back();
    if ( !seen.insert( net ).second )
      continue;
    if ( auto it = driver.find( net ); it != driver.end() )
    {
      auto const& g = n.gates[it->second];
      stack.insert( stack.end(), g.in_nets.begin(), g.in_nets.end() );
      if ( g.ctrl_net )
        stack.push_back( *g.ctrl_net );
    }
  }
  return seen;
}

inline std::set<std::string> output_cone( netlist const& n )
{
  std::vector<std::string> roots;
  for ( auto const& o : n.outputs )
    roots.push_back( o.net );
  return fanin_cone( n, roots );
}

struct census_entry
{
  uint32_t gates{0};
  uint32_t crosstalk_gates{0};
  uint32_t polymorphic_gates{0};
  uint32_t inverters{0};
  uint32_t transistors{0};

  census_entry& operator+=( census_entry const& o )
  {
    gates += o.gates;
    crosstalk_gates += o.crosstalk_gates;
    polymorphic_gates += o.polymorphic_gates;
    inverters += o.inverters;
    transistors += o.transistors;
    return *this;
  }
};

struct netlist_census
{
  /*! \brief per block, in order of first appearance */
  std::vector<std::pair<std::string, census_entry>> blocks;
  census_entry total;
};

/*! \brief Gate and transistor counts, itemized by block */
inline netlist_census census( netlist const& n )
{
  netlist_census c;
  for ( auto const& name : n.blocks() )
    c.blocks.emplace_back( name, census_entry{} );
  for ( auto const& g : n.gates )
  {
    census_entry e;
    e.gates = 1u;
    e.inverters = g.spec.kind == gate_kind::inv ? 1u : 0u;
    e.crosstalk_gates = 1u - e.inverters;
    e.polymorphic_gates = g.spec.has_ctrl() ? 1u : 0u;
    e.transistors = transistor_count( g.spec );
    for ( auto& [name, entry] : c.blocks )
    {
      if ( name == g.block )
        entry += e;
    }
    c.total += e;
  }
  return c;
}

} // namespace ctpoly
